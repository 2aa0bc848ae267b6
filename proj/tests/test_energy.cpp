#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bsq/energy.hpp"
#include "bsq/timestepper.hpp"

using namespace bsq;

namespace {

const double kPi = 3.14159265358979323846;

CoefficientSet fast_set() { return coefficients_from_bbm({-1.0 / 3, 1, 1, 0}); }
CoefficientSet slow_set() { return coefficients_from_bbm(find_bbm_for_regime(RegimeTag::Slow1d)); }

Bathymetry fast_bathy(const GridPtr& g) {
  BathymetrySpec s;
  s.kind = BathyKind::Fast;
  s.amplitude = 0.3;
  s.modes = {BathyMode{1, 0, 1.0, 0.0}, BathyMode{2, 0, 0.5, 0.7}};
  return make_bathymetry(g, s);
}

}  // namespace

TEST(EnergySlow, ZeroState) {
  const auto g = make_grid_1d(64, 2 * kPi);
  const Bathymetry flat(constant(g, 1.0), 0.5, "flat");
  const auto e = energy_slow(State::zero(g), flat, slow_set(), 0.1, 2.0);
  EXPECT_EQ(e.E_s, 0.0);
  EXPECT_EQ(e.calE_s, 0.0);
}

TEST(EnergySlow, FlatSinClosedForm) {
  const auto g = make_grid_1d(64, 2 * kPi);
  const Bathymetry flat(constant(g, 1.0), 0.5, "flat");
  const auto c = slow_set();
  State s = State::zero(g);
  s.V[0] = sample(g, [](double x, double) { return std::sin(x); });
  for (double eps : {0.2, 0.1, 0.05}) {
    const auto e = energy_slow(s, flat, c, eps, 0.0);
    EXPECT_NEAR(e.E_s, kPi + 0.5 * eps * c.a1 * kPi, 1e-12);
  }
}

TEST(EnergySlow, PositiveAndBelowBound) {
  const auto g = make_grid_1d(128, 2 * kPi);
  BathymetrySpec sp;
  sp.kind = BathyKind::Slow;
  sp.epsilon = 0.1;
  const auto b = make_bathymetry(g, sp);
  const auto c = slow_set();
  std::mt19937_64 rng(2);
  for (int k = 0; k < 10; ++k) {
    State s = State::zero(g);
    s.V[0] = random_field(g, 2.0, rng);
    s.eta = random_field(g, 2.0, rng);
    const auto e = energy_slow(s, b, c, 0.1, 2.0);
    EXPECT_GT(e.E_s, 0.0);
    // (1 - eps/2) ||U||_{H^s}^2 less a small bathymetry slack
    const double base = sobolev_norm_sq(s.V[0], 2.0) + sobolev_norm_sq(s.eta, 2.0);
    EXPECT_GE(e.E_s, (1 - 0.05) * base - 0.1 * base);
  }
}

TEST(EnergySlow, RatioBoundedAcrossEpsilon) {
  const auto g = make_grid_1d(128, 2 * kPi);
  const auto c = slow_set();
  double lo = 1e300, hi = 0;
  std::mt19937_64 rng(5);
  for (double eps : {0.2, 0.1, 0.05, 0.025}) {
    BathymetrySpec sp;
    sp.kind = BathyKind::Slow;
    sp.epsilon = eps;
    const auto b = make_bathymetry(g, sp);
    for (int k = 0; k < 20; ++k) {
      State s = State::zero(g);
      s.V[0] = random_field(g, 2.0, rng);
      s.eta = random_field(g, 2.0, rng);
      const auto e = energy_slow(s, b, c, eps, 2.0);
      lo = std::min(lo, e.E_s / e.calE_s);
      hi = std::max(hi, e.E_s / e.calE_s);
    }
  }
  EXPECT_GT(lo, 0.1);
  EXPECT_LT(hi, 10.0);
}

TEST(EnergyFast, ZeroState) {
  const auto g = make_grid_1d(64, 2 * kPi);
  const auto r = initial_energy(VectorField(g), ScalarField(g), fast_bathy(g), fast_set(), 0.1, RegimeTag::Fast1d);
  EXPECT_EQ(*r.E_fast, 0.0);
  EXPECT_EQ(*r.E_tilde2, 0.0);
  EXPECT_EQ(*r.calE_fast, 0.0);
  EXPECT_EQ(*r.calE0, 0.0);
}

TEST(EnergyFast, FlatHasNoCorrection) {
  const auto g = make_grid_1d(64, 2 * kPi);
  const Bathymetry flat(constant(g, 1.0), 0.5, "flat");
  VectorField V(g);
  V[0] = sample(g, [](double x, double) { return std::sin(x) + 0.3 * std::cos(4 * x); });
  const auto eta = sample(g, [](double x, double) { return 0.5 * std::cos(2 * x); });
  const auto r = initial_energy(V, eta, flat, fast_set(), 0.1, RegimeTag::Fast1d);
  EXPECT_EQ(*r.E_tilde2, 0.0);
  EXPECT_GE(*r.calE_fast, *r.E_fast);
}

TEST(EnergyFast, FullFunctionalDominates) {
  const auto g = make_grid_1d(128, 2 * kPi);
  const auto b = fast_bathy(g);
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (double eps : {0.1, 0.05}) {
    for (int k = 0; k < 10; ++k) {
      VectorField V(g);
      V[0] = random_field(g, 2.0, rng);
      const auto eta = random_field(g, 2.0, rng);
      const auto r = initial_energy(V, eta, b, fast_set(), eps, RegimeTag::Fast1d);
      EXPECT_GE(*r.calE_fast, *r.E_fast);
      // correction bounded by the V_t norm it is built from
      worst = std::max(worst, std::abs(*r.E_tilde2) / *r.Vt_X1e2);
    }
  }
  EXPECT_TRUE(std::isfinite(worst));
  EXPECT_LT(worst, 10.0);
}

TEST(EnergyFast, InitialNormClosedForm) {
  const auto g = make_grid_1d(64, 2 * kPi);
  VectorField V(g);
  V[0] = sample(g, [](double x, double) { return std::sin(x); });
  const auto eta = sample(g, [](double x, double) { return std::cos(2 * x); });
  for (double eps : {0.2, 0.1, 0.05}) {
    // V is scalar in 1D: ||V||_{H^2}^2 + eps^3 ||V||_{H^5}^2 + ||eta||_{H^2}^2 + eps^2 ||eta||_{H^4}^2
    const double want = 4 * kPi + eps * eps * eps * 32 * kPi + 25 * kPi + eps * eps * 625 * kPi;
    EXPECT_NEAR(initial_data_norm(V, eta, eps), want, 1e-10 * want);
  }
}

TEST(EnergyFast, LinearFlatConservation) {
  // plane wave of the linear flat fast system: E_fast drift per period <= 1e-6
  const auto g = make_grid_1d(128, 2 * kPi);
  const Bathymetry flat(constant(g, 1.0), 0.5, "flat");
  const auto c = fast_set();
  const double eps = 0.1, xi = 2;
  const Model m(flat, c, eps, RegimeTag::Fast1d, RhsOptions{false});
  const double w = dispersion_eigenvalues(c, eps, xi).lambda_plus.imag();
  const double q = 0.5 * eps * xi * xi;
  const double kappa = xi * (1 - q * c.b1) / ((1 + q * c.a1) * w);
  State s = State::zero(g);
  s.eta = sample(g, [](double x, double) { return std::cos(2 * x); });
  s.V[0] = kappa * s.eta;
  const double period = 2 * kPi / w;
  const long n = static_cast<long>(std::ceil(period / stable_dt(m)));
  const double dt = period / n;
  const double e0 = *evaluate_energy(m, s, 2.0).E_fast;
  for (long k = 0; k < n; ++k) s = step_rk4(m, s, dt);
  const double e1 = *evaluate_energy(m, s, 2.0).E_fast;
  EXPECT_LE(std::abs(e1 - e0) / e0, 1e-6);
}

TEST(EnergyCsv, ColumnsMatchValues) {
  EnergyRecord r;
  r.t = 1.0;
  r.E_s = 2.0;
  EXPECT_EQ(energy_csv_columns().size(), energy_csv_values(r).size());
  EXPECT_EQ(energy_csv_columns().front(), "t");
}

TEST(EnergyMonitor, RegimeSelection) {
  EnergyRecord r;
  r.E_s = 3.0;
  r.calE_s = 5.0;
  EXPECT_EQ(r.monitored(), 3.0);
  EnergyRecord f;
  f.calE_fast = 7.0;
  f.E_monitor = 1.0;
  EXPECT_EQ(f.monitored(), 7.0);
}
