#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace bsq {

// Modeling parameters (lambda1, lambda2, mu, theta) that generate all coefficients.
struct BbmParams {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double mu = 0.0;
  double theta = 0.0;
};

struct CoefficientSet {
  double a1 = 0, a2 = 0, d1 = 0, d2 = 0;
  double b1 = 0, b2 = 0, b3 = 0, b4 = 0;
  double c1 = 0, c2 = 0, c3 = 0, c4 = 0;
};

enum class RegimeTag { Slow1d, Slow2d, Fast1d, FullySymmetric };

std::string to_string(RegimeTag t);
RegimeTag regime_tag_from_string(const std::string& s);

struct Violation {
  std::string constraint;
  double residual = 0.0;
};

struct RegimeReport {
  bool linear_wellposed = false;
  bool slow1d_ok = false;
  bool slow2d_ok = false;
  bool fast1d_ok = false;
  bool fully_symmetric = false;
  std::vector<Violation> violations;

  bool ok_for(RegimeTag t) const;
};

struct DispersionSample {
  double xi = 0.0;
  double epsilon = 0.0;
  std::complex<double> lambda_plus;
  std::complex<double> lambda_minus;
  bool ill_posed_mode = false;
};

inline constexpr double kEqualityTol = 1e-10;
inline constexpr double kStrictMargin = 1e-8;
inline constexpr double kSearchBox = 5.0;

CoefficientSet coefficients_from_bbm(const BbmParams& p);

RegimeReport validate_coefficients(const CoefficientSet& c, int dim);

// Deterministic for a given seed. Throws Error(Infeasible) if nothing is found.
BbmParams find_bbm_for_regime(RegimeTag target, std::uint64_t seed = 0);

DispersionSample dispersion_eigenvalues(const CoefficientSet& c, double epsilon, double xi);

// Same eigenvalue with the depth scaled to H (used for step-size bounds).
double dispersion_modulus(const CoefficientSet& c, double epsilon, double xi, double depth);

}  // namespace bsq
