#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bsq/operators.hpp"

namespace bsq {

struct CancellationReport {
  int n_coarse = 0;
  int n_fine = 0;
  // random band-limited pairs (round-off level when inputs sit below the cutoff)
  double max_residual_coarse = 0.0;
  double max_residual_fine = 0.0;
  // analytic, non-band-limited pairs: spectral truncation decay from N to 2N
  double smooth_residual_coarse = 0.0;
  double smooth_residual_fine = 0.0;
  double decay_factor = 0.0;
  double decay_exponent = 0.0;
  bool negative_control = false;
};

// Residual |(B f|g) + (C g|f) - (r f_x|g)| with f,g of unit L2 norm.
// `negative_control` skips the coefficient check (for deliberately violated sets).
CancellationReport check_cancellation(const BathymetrySpec& bathy, const CoefficientSet& c, int n, double length,
                                      int trials, std::uint64_t seed, bool negative_control = false);

double cancellation_residual(const OperatorContext& ctx, const ScalarField& f, const ScalarField& g,
                             bool checked = true);

struct RatioStat {
  std::string name;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double K = 0.0;  // smallest K with all ratios in [1/K, K]
  int samples = 0;
};

struct EquivalenceRequest {
  bool mass_P1 = true;     // ((1-eps/2 P1) f|f)_{H^s} ~ ||f||^2_{X^s_eps}
  bool mass_P2 = true;     // same for P2
  bool dispersive = true;  // B1, B2, C1, C2 (1D, b1 < 0)
};

struct EquivalenceReport {
  double epsilon = 0.0;
  double s = 0.0;
  int family_size = 0;
  std::vector<RatioStat> ratios;
  const RatioStat* find(const std::string& name) const;
};

// Throws HypothesisViolation naming every failed hypothesis of the requested equivalences.
EquivalenceReport check_equivalences(const Bathymetry& b, const CoefficientSet& c, double epsilon, double s,
                                     int family_size, std::uint64_t seed, EquivalenceRequest req = {});

enum class ProbeKind { Tame, Commutator, Composition };
std::string to_string(ProbeKind k);

struct ProbeReport {
  ProbeKind kind = ProbeKind::Tame;
  double s = 0.0;
  int family_size = 0;
  double max_ratio = 0.0;
  double max_ratio_half = 0.0;  // over the first half of the family
  double drift = 0.0;           // relative change from half to full family
  bool finite = true;
  bool growth_flag = false;     // drift above 10%
};

ProbeReport probe_inequality_constants(const GridPtr& g, ProbeKind kind, double s, int family_size,
                                       std::uint64_t seed);

// applies the Bessel potential (1+xi^2)^(s/2)
ScalarField lambda_s(const ScalarField& f, double s);

struct WaveTestReport {
  double xi = 0.0;
  double epsilon = 0.0;
  double analytic_frequency = 0.0;
  double measured_frequency = 0.0;
  double relative_error = 0.0;
  double amplitude_drift_per_period = 0.0;
  int steps = 0;
  double dt = 0.0;
  bool ill_posed = false;
};

WaveTestReport flat_bottom_wave_test(const CoefficientSet& c, double epsilon, double xi, int periods, int n = 128,
                                     double length = 6.283185307179586);

}  // namespace bsq
