#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bsq/errors.hpp"
#include "bsq/mass_solver.hpp"
#include "bsq/operators.hpp"
#include "bsq/timestepper.hpp"
#include "oracle/dense_ops.hpp"

using namespace bsq;
namespace o = oracle;

namespace {

const double kPi = 3.14159265358979323846;
constexpr int kN = 64;

GridPtr line(int n = kN) { return make_grid_1d(n, 2 * kPi); }

double h_fn(double x) { return 1.0 + 0.1 * std::sin(x) + 0.05 * std::cos(2 * x); }
double hx_fn(double x) { return 0.1 * std::cos(x) - 0.1 * std::sin(2 * x); }
double hxx_fn(double x) { return -0.1 * std::sin(x) - 0.2 * std::cos(2 * x); }

Bathymetry wavy(const GridPtr& g) {
  return Bathymetry(sample(g, [](double x, double) { return h_fn(x); }), 0.5, "wavy");
}
Bathymetry flat(const GridPtr& g) { return Bathymetry(constant(g, 1.0), 0.5, "flat"); }

CoefficientSet fast_set() { return coefficients_from_bbm({-1.0 / 3, 1, 1, 0}); }
CoefficientSet slow_set() { return coefficients_from_bbm({0.04575163398692811, 1, 0.14893617021276595, 0.7}); }

ScalarField sfield(const GridPtr& g, double (*fn)(double)) {
  return sample(g, [fn](double x, double) { return fn(x); });
}

double max_diff(const ScalarField& a, const ScalarField& b) { return o::max_diff(a.v, b.v); }

VectorField vec1(ScalarField f) {
  std::vector<ScalarField> c;
  c.push_back(std::move(f));
  return VectorField(std::move(c));
}

// dense oracle pieces on the wavy depth
struct Dense {
  o::Mat D = o::d1(kN), D2 = o::d2(kN), P = o::dealias(kN);
  o::Vec h = o::nodes(kN, h_fn), hx = o::nodes(kN, hx_fn), hxx = o::nodes(kN, hxx_fn);
  o::Vec pw(double p) const {
    o::Vec v(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) v[i] = std::pow(h[i], p);
    return v;
  }
  o::Vec prod(const o::Vec& w, const o::Vec& x) const { return o::apply(P, o::times(w, x)); }
};

ScalarField random_band(const GridPtr& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_field(g, 1.0, rng);
}

}  // namespace

TEST(P1, FlatSin) {
  const auto g = line();
  const auto c = slow_set();
  const auto out = apply_P1(flat(g), c, vec1(sfield(g, std::sin)));
  EXPECT_LE(max_diff(out[0], -c.a1 * sfield(g, std::sin)), 1e-12);
}

TEST(P1, ZeroInZeroOut) {
  const auto g = line();
  EXPECT_EQ(max_abs(apply_P1(wavy(g), slow_set(), VectorField(g))[0]), 0.0);
}

TEST(P1, DenseOracle) {
  const auto g = line();
  const auto c = slow_set();
  const Dense d;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto V = random_band(g, seed);
    const auto got = apply_P1(wavy(g), c, vec1(V));
    // a1 d(h^2 V_x) + a2 d(h h_x V)
    o::Vec want = o::apply(d.D, d.prod(d.pw(2), o::apply(d.D, V.v)));
    for (auto& x : want) x *= c.a1;
    want = o::axpy(c.a2, o::apply(d.D, d.prod(o::times(d.h, d.hx), V.v)), want);
    EXPECT_LE(o::max_diff(want, got[0].v), 1e-8);
  }
}

TEST(P2, FlatIsLaplacian) {
  const auto g = line();
  const auto c = slow_set();
  const auto eta = sample(g, [](double x, double) { return std::cos(3 * x); });
  EXPECT_LE(max_diff(apply_P2(flat(g), c, eta), (-9.0 * c.d1) * eta), 1e-11);
}

TEST(P2, ConstantFlatVanishes) {
  const auto g = line();
  EXPECT_LE(max_abs(apply_P2(flat(g), slow_set(), constant(g, 2.5))), 1e-13);
}

TEST(P2, DenseOracle) {
  const auto g = line();
  const auto c = slow_set();
  const Dense d;
  for (std::uint64_t seed : {4u, 5u}) {
    const auto eta = random_band(g, seed);
    const auto got = apply_P2(wavy(g), c, eta);
    o::Vec want = o::apply(d.D, d.prod(d.pw(2), o::apply(d.D, eta.v)));
    for (auto& x : want) x *= c.d1;
    want = o::axpy(c.d2, o::apply(d.D, d.prod(o::times(d.h, d.hx), eta.v)), want);
    EXPECT_LE(o::max_diff(want, got.v), 1e-8);
  }
}

TEST(P2, TwoDimensionalFlat) {
  const auto g = make_grid_2d(32, 2 * kPi, 32, 2 * kPi);
  const auto c = slow_set();
  const Bathymetry b(constant(g, 1.0), 0.5, "flat");
  const auto eta = sample(g, [](double x, double y) { return std::sin(x) * std::cos(2 * y); });
  EXPECT_LE(max_diff(apply_P2(b, c, eta), (-5.0 * c.d1) * eta), 1e-11);
}

TEST(BhCh, FlatReducesToThirdDerivative) {
  const auto g = line();
  const auto c = fast_set();
  const auto f = random_band(g, 8);
  const auto d3 = derivative(f, 0, 3);
  EXPECT_LE(max_diff(apply_Bh(flat(g), c, f), c.b1 * d3), 1e-10);
  EXPECT_LE(max_diff(apply_Ch(flat(g), c, f), c.c1 * d3), 1e-10);
}

TEST(BhCh, FlatSinExample) {
  const auto g = line();
  const auto out = apply_Bh(flat(g), fast_set(), sfield(g, std::sin));
  EXPECT_LE(max_diff(out, (1.0 / 3) * sfield(g, std::cos)), 1e-12);
}

TEST(BhCh, FlatAntisymmetric) {
  const auto g = line(128);
  const auto c = fast_set();
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto f = random_band(g, seed);
    EXPECT_LE(std::abs(l2_inner(apply_Bh(flat(g), c, f), f)), 1e-12);
  }
}

TEST(BhCh, DenseOracle) {
  const auto g = line();
  const auto c = fast_set();
  const Dense d;
  const o::Vec sq = d.pw(0.5), h2 = d.pw(2), h32 = d.pw(1.5);
  o::Vec r1(kN), r2(kN), h32hx(kN);
  for (int i = 0; i < kN; ++i) {
    const double s = sq[i] * d.hx[i] * d.hx[i], t = h32[i] * d.hxx[i];
    r1[i] = (c.b2 + 1.5 * c.b3 + c.b4) * s + c.b2 * t;
    r2[i] = (c.c2 + 1.5 * c.c3 - c.c4) * s + c.c2 * t;
    h32hx[i] = h32[i] * d.hx[i];
  }
  for (std::uint64_t seed : {11u, 12u}) {
    const auto f = random_band(g, seed);
    const o::Vec fx = o::apply(d.D, f.v);
    // b1 sqrt h d2(h^2 f_x) + (b2+b3) h^{3/2} h_x f_xx + r1 f_x
    o::Vec B = d.prod(r1, fx);
    B = o::axpy(c.b1, d.prod(sq, o::apply(d.D2, d.prod(h2, fx))), B);
    B = o::axpy(c.b2 + c.b3, d.prod(h32hx, o::apply(d.D2, f.v)), B);
    EXPECT_LE(o::max_diff(B, apply_Bh(wavy(g), c, f).v), 1e-8);
    // b1 d(h^2 d2(sqrt h g)) - (b2+b3) d2(h^{3/2} h_x g) - d(r2 g)
    o::Vec C = o::apply(d.D, d.prod(r2, f.v));
    for (auto& x : C) x = -x;
    C = o::axpy(c.b1, o::apply(d.D, d.prod(h2, o::apply(d.D2, d.prod(sq, f.v)))), C);
    C = o::axpy(-(c.b2 + c.b3), o::apply(d.D2, d.prod(h32hx, f.v)), C);
    EXPECT_LE(o::max_diff(C, apply_Ch(wavy(g), c, f).v), 1e-8);
  }
}

TEST(BhCh, RegimeMismatch) {
  const auto g = line();
  auto c = fast_set();
  c.c2 += 1.0;
  try {
    apply_Bh(wavy(g), c, sfield(g, std::sin));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RegimeMismatch);
  }
  const auto g2 = make_grid_2d(16, 2 * kPi, 16, 2 * kPi);
  EXPECT_THROW(apply_Ch(Bathymetry(constant(g2, 1.0), 0.5, "flat"), fast_set(), ScalarField(g2)), Error);
}

TEST(RCoefficient, FlatIsZero) {
  EXPECT_EQ(max_abs(r_coefficient(flat(line()), fast_set())), 0.0);
}

TEST(RCoefficient, FastSetClosedForm) {
  const auto c = fast_set();
  EXPECT_NEAR(0.5 * c.b3 + 0.5 * c.c3 + c.b4 - c.c4, 2.5, 1e-14);
  EXPECT_NEAR(c.b2 + c.c2, 4.0 / 3, 1e-14);
  const auto g = line();
  const auto r = r_coefficient(wavy(g), c);
  for (int i = 0; i < kN; ++i) {
    const double x = g->coord(0, i), h = h_fn(x);
    const double want = 2.5 * std::sqrt(h) * hx_fn(x) * hx_fn(x) + (4.0 / 3) * h * std::sqrt(h) * hxx_fn(x);
    EXPECT_NEAR(r[i], want, 1e-12);
  }
}

TEST(RCoefficient, SumOfParts) {
  std::mt19937_64 rng(21);
  // the identity needs b2+b3+c2+c3=0: sample the fast family
  std::uniform_real_distribution<double> t(0, 0.57);
  const auto g = line();
  for (int k = 0; k < 10; ++k) {
    auto f = random_field(g, 2.0, rng);
    f *= 0.2 / max_abs(f);
    const Bathymetry b(constant(g, 1.0) + f, 0.5, "random");
    const double th = t(rng);
    const auto c = coefficients_from_bbm({(th * th - 1.0 / 3) / (1 - th * th), 1, 1, th});
    EXPECT_LE(max_diff(r_coefficient(b, c), r1_coefficient(b, c) + r2_coefficient(b, c)), 1e-12);
  }
}

TEST(Nonlinear, ZeroVelocity) {
  const auto g = line();
  const auto b = wavy(g);
  State s = State::zero(g);
  s.eta = sample(g, [](double x, double) { return 0.3 * std::cos(2 * x); });
  const auto etax = sample(g, [](double x, double) { return -0.6 * std::sin(2 * x); });
  ScalarField want(g);
  for (int i = 0; i < kN; ++i) want[i] = s.eta[i] * etax[i] / std::sqrt(b.h[i]);
  for (auto form : {NonlinearForm::General, NonlinearForm::Reduced1d}) {
    const auto n = compute_Fh_fh(s, b, form);
    EXPECT_LE(max_diff(n.F[0], want), 1e-6);  // 1/sqrt(h) is not band-limited: truncation error only
    EXPECT_LE(max_abs(n.f), 1e-14);
  }
}

TEST(Nonlinear, FlatZeroSurface) {
  const auto g = line();
  State s = State::zero(g);
  s.V[0] = sample(g, [](double x, double) { return std::sin(x) + 0.5 * std::cos(3 * x); });
  const auto Vx = dx(s.V[0]);
  ScalarField want(g);
  for (int i = 0; i < kN; ++i) want[i] = 3 * s.V[0][i] * Vx[i];
  for (auto form : {NonlinearForm::General, NonlinearForm::Reduced1d}) {
    const auto n = compute_Fh_fh(s, flat(g), form);
    EXPECT_LE(max_diff(n.F[0], want), 1e-12);
    EXPECT_LE(max_abs(n.f), 1e-14);
  }
}

TEST(Nonlinear, GeneralMatchesReduced) {
  const auto g = line(128);
  const Bathymetry b(sample(g, [](double x, double) { return h_fn(x); }), 0.5, "wavy");
  for (std::uint64_t seed : {31u, 32u, 33u}) {
    std::mt19937_64 rng(seed);
    State s = State::zero(g);
    s.V[0] = random_field(g, 2.0, rng);
    s.eta = random_field(g, 2.0, rng);
    const auto a = compute_Fh_fh(s, b, NonlinearForm::General);
    const auto r = compute_Fh_fh(s, b, NonlinearForm::Reduced1d);
    EXPECT_LE(max_diff(a.F[0], r.F[0]), 1e-10);
    EXPECT_LE(max_diff(a.f, r.f), 1e-10);
  }
}

TEST(Rhs, ZeroState) {
  const auto g = line();
  const auto r = assemble_rhs(State::zero(g), wavy(g), slow_set(), 0.1, RegimeTag::Slow1d);
  EXPECT_EQ(max_abs(r.dV[0]), 0.0);
  EXPECT_EQ(max_abs(r.deta), 0.0);
}

TEST(Rhs, FlatLinearSymbol) {
  const auto g = line();
  for (auto [c, tag] : {std::pair{slow_set(), RegimeTag::Slow1d}, std::pair{fast_set(), RegimeTag::Fast1d}}) {
    for (int m : {1, 3, 7}) {
      const double eps = 0.1, xi = m;
      State s = State::zero(g);
      s.V[0] = sample(g, [m](double x, double) { return std::cos(m * x); });
      s.eta = sample(g, [m](double x, double) { return std::sin(m * x); });
      const auto r = assemble_rhs(s, flat(g), c, eps, tag, RhsOptions{false});
      const double q = 0.5 * eps * xi * xi;
      const double kv = -xi * (1 - q * c.b1) / (1 + q * c.a1);
      const double ke = xi * (1 - q * c.c1) / (1 + q * c.d1);
      EXPECT_LE(max_diff(r.dV[0], kv * s.V[0]), 1e-10);
      EXPECT_LE(max_diff(r.deta, ke * s.eta), 1e-10);
      // the 2x2 symbol has eigenvalues lambda+- = +-i sqrt(-kv ke)
      const auto d = dispersion_eigenvalues(c, eps, xi);
      EXPECT_NEAR(-kv * ke, d.lambda_plus.imag() * d.lambda_plus.imag(), 1e-10);
    }
  }
}

TEST(Rhs, FastFlatHandSpecialization) {
  const auto g = line();
  const auto c = fast_set();
  const double eps = 0.1;
  State s = State::zero(g);
  s.V[0] = sample(g, [](double x, double) { return 0.3 * std::sin(x); });
  s.eta = sample(g, [](double x, double) { return 0.2 * std::cos(2 * x); });
  const auto b = flat(g);
  const auto r = assemble_rhs(s, b, c, eps, RegimeTag::Fast1d);
  const auto& V = s.V[0];
  const auto& eta = s.eta;
  // eta_t = -(V_x + eps/2 b1 V_xxx + eps/2 (eta V)_x)
  ScalarField et = dx(V) + (0.5 * eps * c.b1) * derivative(V, 0, 3) + (0.5 * eps) * dx(pointwise_product(eta, V));
  EXPECT_LE(max_diff(r.deta, -et), 1e-12);
  // (1 - eps/2 a1 d_xx) V_t = -(eta_x + eps/2 b1 eta_xxx + eps/2 (eta eta_x + 3 V V_x))
  ScalarField mv = dx(eta) + (0.5 * eps * c.b1) * derivative(eta, 0, 3) +
                   (0.5 * eps) * (pointwise_product(eta, dx(eta)) + 3.0 * pointwise_product(V, dx(V)));
  const OperatorContext ctx(b, c, eps);
  EXPECT_LE(max_diff(apply_mass1(ctx, r.dV)[0], -mv), 1e-10);
}

TEST(Cascade, ZeroState) {
  const auto g = line();
  const auto d = time_derivative_cascade(State::zero(g), wavy(g), fast_set(), 0.1, RegimeTag::Fast1d);
  EXPECT_EQ(max_abs(d.V_t[0]), 0.0);
  EXPECT_EQ(max_abs(d.V_tt[0]), 0.0);
  EXPECT_EQ(max_abs(d.eta_t), 0.0);
  EXPECT_EQ(max_abs(d.eta_tt), 0.0);
}

TEST(Cascade, PlaneWaveEigenmode) {
  const auto g = line(128);
  const auto c = fast_set();
  const double eps = 0.1;
  for (int m : {1, 2, 5}) {
    const double xi = m;
    const double w = dispersion_eigenvalues(c, eps, xi).lambda_plus.imag();
    const double q = 0.5 * eps * xi * xi;
    const double kappa = xi * (1 - q * c.b1) / ((1 + q * c.a1) * w);  // V/eta for the rightward wave
    State s = State::zero(g);
    s.eta = sample(g, [m](double x, double) { return std::cos(m * x); });
    s.V[0] = kappa * s.eta;
    const auto d = time_derivative_cascade(s, flat(g), c, eps, RegimeTag::Fast1d, RhsOptions{false});
    // cos(m x - w t): d_t = w sin(m x), d_tt = -w^2 cos(m x)
    const auto sn = sample(g, [m](double x, double) { return std::sin(m * x); });
    EXPECT_LE(max_diff(d.eta_t, w * sn), 1e-8);
    EXPECT_LE(max_diff(d.V_t[0], (kappa * w) * sn), 1e-8);
    EXPECT_LE(max_diff(d.eta_tt, (-w * w) * s.eta), 1e-8);
    EXPECT_LE(max_diff(d.V_tt[0], (-w * w) * s.V[0]), 1e-8);
  }
}

TEST(Cascade, SecondDerivativeMatchesFiniteDifference) {
  const auto g = line(64);
  const auto c = fast_set();
  const double eps = 0.1;
  BathymetrySpec spec;
  spec.kind = BathyKind::Fast;
  spec.amplitude = 0.3;
  const auto b = make_bathymetry(g, spec);
  const Model model(b, c, eps, RegimeTag::Fast1d);
  State s = State::zero(g);
  s.V[0] = sample(g, [](double x, double) { return 0.2 * std::sin(x); });
  s.eta = sample(g, [](double x, double) { return 0.3 * std::cos(x) + 0.1 * std::sin(2 * x); });
  const auto exact = model.cascade(s).V_tt[0];
  std::vector<double> err;
  for (double dt : {0.02, 0.01, 0.005}) {
    // centred difference of V_t along the trajectory through s
    const State sp = step_rk4(model, s, dt);
    const State sm = step_rk4(model, s, -dt);
    const auto fd = (1.0 / (2 * dt)) * (model.rhs(sp).dV[0] - model.rhs(sm).dV[0]);
    err.push_back(max_diff(fd, exact));
  }
  const double p1 = std::log2(err[0] / err[1]), p2 = std::log2(err[1] / err[2]);
  EXPECT_NEAR(p1, 2.0, 0.2);
  EXPECT_NEAR(p2, 2.0, 0.2);
}
