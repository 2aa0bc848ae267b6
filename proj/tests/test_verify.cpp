#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bsq/errors.hpp"
#include "bsq/verify.hpp"

using namespace bsq;

namespace {

const double kPi = 3.14159265358979323846;

CoefficientSet fast_set() { return coefficients_from_bbm({-1.0 / 3, 1, 1, 0}); }

BathymetrySpec fast_spec() {
  BathymetrySpec b;
  b.kind = BathyKind::Fast;
  b.amplitude = 0.3;
  b.modes = {BathyMode{1, 0, 1.0, 0.0}, BathyMode{2, 0, 0.5, 0.7}};
  return b;
}

}  // namespace

TEST(Cancellation, FlatRoundoff) {
  const auto r = check_cancellation(BathymetrySpec{}, fast_set(), 128, 2 * kPi, 10, 1);
  EXPECT_LE(r.max_residual_coarse, 1e-12);
  EXPECT_LE(r.max_residual_fine, 1e-12);
}

TEST(Cancellation, SmoothDepthDecays) {
  const auto r = check_cancellation(fast_spec(), fast_set(), 128, 2 * kPi, 8, 2);
  EXPECT_EQ(r.n_fine, 256);
  EXPECT_LE(r.max_residual_fine, 1e-10);
  EXPECT_GE(r.decay_factor, 1e2);
}

TEST(Cancellation, NegativeControlFails) {
  auto c = fast_set();
  c.b2 += 1.0;  // breaks b2+b3+c2+c3=0
  const auto r = check_cancellation(fast_spec(), c, 128, 2 * kPi, 8, 3, true);
  EXPECT_GE(r.max_residual_fine, 1e-2);
}

TEST(Cancellation, RegimeMismatch) {
  auto c = fast_set();
  c.c2 += 1.0;
  try {
    check_cancellation(fast_spec(), c, 64, 2 * kPi, 2, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RegimeMismatch);
  }
}

TEST(Cancellation, Deterministic) {
  const auto a = check_cancellation(fast_spec(), fast_set(), 64, 2 * kPi, 4, 9);
  const auto b = check_cancellation(fast_spec(), fast_set(), 64, 2 * kPi, 4, 9);
  EXPECT_EQ(a.max_residual_fine, b.max_residual_fine);
  EXPECT_EQ(a.smooth_residual_coarse, b.smooth_residual_coarse);
}

TEST(Equivalences, FlatSingleModeClosedForm) {
  // flat depth: ((1 - eps/2 P1) f|f)_{H^s} / ||f||^2_{X^s_eps} per mode m
  // = (1 + eps/2 a1 m^2) / (1 + eps m^2), the divergence sitting in H^{s+k-1} = H^s
  const auto g = make_grid_1d(64, 2 * kPi);
  const Bathymetry flat(constant(g, 1.0), 0.5, "flat");
  const auto c = coefficients_from_bbm(find_bbm_for_regime(RegimeTag::Slow1d));
  const double eps = 0.1;
  const OperatorContext ctx(flat, c, eps);
  for (int m : {1, 3, 7}) {
    VectorField f(g);
    f[0] = sample(g, [m](double x, double) { return std::sin(m * x); });
    const double lhs = hs_inner(apply_mass1(ctx, f), f, 2.0);
    const double rhs = x_norm_sq(f, NormSpec{2.0, 1, eps, true});
    const double want = (1 + 0.5 * eps * c.a1 * m * m) / (1 + eps * m * m);
    EXPECT_NEAR(lhs / rhs, want, 1e-12);
  }
}

TEST(Equivalences, SlowFamilyStable) {
  const auto g = make_grid_1d(256, 2 * kPi);
  const auto c = coefficients_from_bbm(find_bbm_for_regime(RegimeTag::Slow1d));
  double kmin = 1e300, kmax = 0.0;
  for (double eps : {0.1, 0.05}) {
    BathymetrySpec sp;
    sp.kind = BathyKind::Slow;
    sp.epsilon = eps;
    const auto b = make_bathymetry(g, sp);
    const auto r = check_equivalences(b, c, eps, 2.0, 60, 1, {true, true, false});
    const auto* p1 = r.find("mass_P1");
    ASSERT_NE(p1, nullptr);
    EXPECT_GT(p1->min_ratio, 0.0);
    EXPECT_TRUE(std::isfinite(p1->K));
    kmin = std::min(kmin, p1->K);
    kmax = std::max(kmax, p1->K);
  }
  EXPECT_LE(kmax / kmin, 1.5);
}

TEST(Equivalences, DispersiveItems) {
  const auto g = make_grid_1d(256, 2 * kPi);
  const auto b = make_bathymetry(g, fast_spec());
  const auto r = check_equivalences(b, fast_set(), 0.05, 2.0, 40, 2, {false, false, true});
  for (const char* n : {"B1", "B2", "C1", "C2"}) {
    const auto* s = r.find(n);
    ASSERT_NE(s, nullptr) << n;
    EXPECT_TRUE(std::isfinite(s->K)) << n;
    EXPECT_GE(s->K, 1.0) << n;
  }
}

TEST(Equivalences, MissingD1IsHypothesisViolation) {
  const auto g = make_grid_1d(64, 2 * kPi);
  const Bathymetry flat(constant(g, 1.0), 0.5, "flat");
  // fast set has d1 = 0 while the P2 equivalence is requested
  try {
    check_equivalences(flat, fast_set(), 0.1, 2.0, 4, 0, {false, true, false});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::HypothesisViolation);
    EXPECT_NE(std::string(e.what()).find("d1"), std::string::npos);
  }
}

TEST(Probes, CommutatorWithConstantVanishes) {
  // [Lambda^s, c] u = 0 for constant c
  const auto g = make_grid_1d(64, 2 * kPi);
  std::mt19937_64 rng(4);
  const auto u = random_field(g, 2.0, rng);
  const auto c = constant(g, 2.5);
  const auto comm = lambda_s(dealias_product(c, u), 2.0) - dealias_product(c, lambda_s(u, 2.0));
  EXPECT_LE(max_abs(comm), 1e-12 * max_abs(lambda_s(u, 2.0)));
}

TEST(Probes, TameSingleModeClosedForm) {
  // f = g = sin(x): ||f g||_{H^1}^2 = ||(1 - cos 2x)/2||^2_{H^1} = pi/2 + 5 pi/4
  const auto g = make_grid_1d(64, 2 * kPi);
  const auto f = sample(g, [](double x, double) { return std::sin(x); });
  EXPECT_NEAR(sobolev_norm_sq(dealias_product(f, f), 1.0), kPi / 2 + 5 * kPi / 4, 1e-12);
}

TEST(Probes, FiniteAndStable) {
  const auto g = make_grid_1d(128, 2 * kPi);
  for (auto k : {ProbeKind::Tame, ProbeKind::Commutator, ProbeKind::Composition}) {
    const auto p = probe_inequality_constants(g, k, 1.5, 100, 3);
    EXPECT_TRUE(p.finite) << to_string(k);
    EXPECT_GT(p.max_ratio, 0.0);
    EXPECT_LE(p.drift, 0.1) << to_string(k);
  }
}

TEST(Probes, Deterministic) {
  const auto g = make_grid_1d(64, 2 * kPi);
  const auto a = probe_inequality_constants(g, ProbeKind::Tame, 2.0, 20, 5);
  const auto b = probe_inequality_constants(g, ProbeKind::Tame, 2.0, 20, 5);
  EXPECT_EQ(a.max_ratio, b.max_ratio);
}

TEST(WaveTest, FastSetXi2) {
  const auto r = flat_bottom_wave_test(fast_set(), 0.1, 2.0, 2);
  EXPECT_FALSE(r.ill_posed);
  EXPECT_LE(r.relative_error, 1e-6);
  EXPECT_LE(r.amplitude_drift_per_period, 1e-6);
}

TEST(WaveTest, SmallEpsilonLimit) {
  const auto r = flat_bottom_wave_test(fast_set(), 1e-6, 3.0, 1);
  EXPECT_NEAR(r.measured_frequency, 3.0, 1e-4);
}

TEST(WaveTest, PositiveBranchOscillatory) {
  // b1 = c1 > 0 with a1, d1 large enough that the symbol stays real-valued
  CoefficientSet c;
  c.a1 = c.d1 = 1.0;
  c.b1 = c.c1 = 0.5;
  const auto r = flat_bottom_wave_test(c, 0.1, 2.0, 2);
  EXPECT_FALSE(r.ill_posed);
  EXPECT_LE(r.amplitude_drift_per_period, 1e-6);
  EXPECT_LE(r.relative_error, 1e-6);
}
