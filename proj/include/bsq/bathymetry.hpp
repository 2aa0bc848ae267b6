#pragma once

#include <string>
#include <vector>

#include "bsq/field.hpp"
#include "bsq/params.hpp"

namespace bsq {

// amplitude * sin(2 pi (kx x / Lx + ky y / Ly) + phase)
struct BathyMode {
  int kx = 1;
  int ky = 0;
  double amplitude = 1.0;
  double phase = 0.0;
};

enum class BathyKind { Flat, Slow, Fast, Custom };

struct BathymetrySpec {
  BathyKind kind = BathyKind::Flat;
  double epsilon = 0.1;    // slow: b = epsilon * amplitude * sum(...)
  double amplitude = 1.0;  // slow: A, fast: B
  std::vector<BathyMode> modes{BathyMode{}};
  std::vector<double> samples;  // custom: depth values at the nodes
  double h0 = 0.5;
  double s = 2.0;   // slow bound uses H^(s+2)
  double C0 = 1.0;  // slow bound constant
};

struct Bathymetry {
  ScalarField h;
  double h0 = 0.5;
  std::string profile_tag = "custom";
  double min_h = 1.0;
  double max_h = 1.0;
  std::vector<double> grad_norms;  // ||grad h||_{H^m}, m = 0..kMaxCachedOrder

  static constexpr int kMaxCachedOrder = 8;

  // Raw constructor: computes the cached quantities, enforces nothing.
  Bathymetry(ScalarField depth, double floor, std::string tag);
  double grad_norm(double m) const;
};

std::string to_string(BathyKind k);
BathyKind bathy_kind_from_string(const std::string& s);

Bathymetry make_bathymetry(const GridPtr& g, const BathymetrySpec& spec);

struct HypothesisCheck {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct BathymetryReport {
  std::vector<HypothesisCheck> checks;
  bool all_pass() const;
  std::string failures() const;
};

inline constexpr double kMassSmallness = 0.5;  // c0 of the mass-operator equivalence

BathymetryReport validate_bathymetry(const Bathymetry& b, RegimeTag regime, double s, double epsilon,
                                     double C0 = 1.0, double c0 = kMassSmallness);

}  // namespace bsq
