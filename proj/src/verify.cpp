#include "bsq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "bsq/errors.hpp"
#include "bsq/timestepper.hpp"

namespace bsq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPoissonRho = 0.85;

ScalarField normalized(ScalarField f) {
  const double n = l2_norm(f);
  if (n > 0.0) f *= 1.0 / n;
  return f;
}

// Poisson kernel: analytic but with every Fourier mode present (geometric decay rho^|m|)
ScalarField poisson_kernel(const GridPtr& g, double rho, double phase) {
  const double k = kTwoPi / g->length(0);
  return sample(g, [&](double x, double) {
    return (1.0 - rho * rho) / (1.0 - 2.0 * rho * std::cos(k * x - phase) + rho * rho);
  });
}

double grid_triple(const ScalarField& a, const ScalarField& b, const ScalarField& c) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i] * c[i];
  return acc * a.grid->cell_volume();
}

struct Accum {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  int n = 0;
  void add_hi(double r) {
    hi = std::max(hi, r);
    ++n;
  }
  void add_lo(double r) { lo = std::min(lo, r); }
  void add(double r) {
    add_hi(r);
    add_lo(r);
  }
  RatioStat stat(std::string name) const {
    RatioStat s;
    s.name = std::move(name);
    s.max_ratio = hi;
    s.min_ratio = std::isfinite(lo) ? lo : hi;
    s.K = std::max(s.max_ratio, s.min_ratio > 0.0 ? 1.0 / s.min_ratio : std::numeric_limits<double>::infinity());
    s.samples = n;
    return s;
  }
};

// narrow spectral packet around a log-uniform centre in [1, cutoff]: across the family
// eps*xi^2 spans both the long-wave and the dispersive end for every eps in (0,1)
ScalarField packet_field(const GridPtr& g, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int cut = g->cutoff(0);
  const double m0 = std::exp(u(rng) * std::log(static_cast<double>(cut)));
  const double w = std::max(0.5, 0.25 * m0 * u(rng));
  Spectrum sp(g->size(), 0.0);
  const auto& mx = g->mode(0);
  const auto& my = g->mode(1);
  const int cy = g->dim() == 2 ? g->cutoff(1) : 0;
  for (std::size_t k = 0; k < sp.size(); ++k) {
    const double re = nd(rng), im = nd(rng);
    if (std::abs(my[k]) > cy || mx[k] <= 0 || mx[k] > cut) continue;
    const double am = std::hypot(double(mx[k]), double(my[k]));
    const double d = (am - m0) / w;
    if (d * d > 9.0) continue;
    sp[k] = std::exp(-0.5 * d * d) * cplx(re, im);
  }
  ScalarField f = ifft(g, std::move(sp));
  const double n = l2_norm(f);
  if (n > 0.0) f *= 1.0 / n;
  return f;
}

}  // namespace

double cancellation_residual(const OperatorContext& ctx, const ScalarField& f, const ScalarField& g, bool checked) {
  const double lhs = l2_inner(apply_Bh(ctx, f, checked), g) + l2_inner(apply_Ch(ctx, g, checked), f);
  const double rhs = grid_triple(ctx.r, dx(f), g);
  return std::abs(lhs - rhs);
}

CancellationReport check_cancellation(const BathymetrySpec& bathy, const CoefficientSet& c, int n, double length,
                                      int trials, std::uint64_t seed, bool negative_control) {
  if (!negative_control) {
    if (std::abs(c.b1 - c.c1) > kEqualityTol || std::abs(c.b2 + c.b3 + c.c2 + c.c3) > kEqualityTol)
      throw Error(ErrorCode::RegimeMismatch, "cancellation check needs b1=c1 and b2+b3+c2+c3=0");
  }
  CancellationReport rep;
  rep.n_coarse = n;
  rep.n_fine = 2 * n;
  rep.negative_control = negative_control;
  const bool checked = !negative_control;

  for (int level = 0; level < 2; ++level) {
    const int nn = level == 0 ? n : 2 * n;
    const GridPtr g = make_grid_1d(nn, length);
    const Bathymetry b = make_bathymetry(g, bathy);
    const OperatorContext ctx(b, c, 0.0);
    // the same seed on both levels: random_field draws per storage slot, so the
    // band-limited pairs differ between levels, which is fine for a max residual
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      const ScalarField f = normalized(random_field(g, 2.0, rng));
      const ScalarField gg = normalized(random_field(g, 2.0, rng));
      worst = std::max(worst, cancellation_residual(ctx, f, gg, checked));
    }
    // analytic pairs with every Fourier mode present: the discrete identity is only
    // spectrally accurate here, so this residual carries the N -> 2N decay
    double smooth = 0.0;
    std::mt19937_64 prng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> ph(0.0, kTwoPi);
    for (int t = 0; t < std::max(1, trials / 4); ++t) {
      const ScalarField f = normalized(poisson_kernel(g, kPoissonRho, ph(prng)));
      const ScalarField gg = normalized(poisson_kernel(g, kPoissonRho, ph(prng)));
      smooth = std::max(smooth, cancellation_residual(ctx, f, gg, checked));
    }
    if (level == 0) {
      rep.max_residual_coarse = worst;
      rep.smooth_residual_coarse = smooth;
    } else {
      rep.max_residual_fine = worst;
      rep.smooth_residual_fine = smooth;
    }
  }
  const double fine = std::max(rep.smooth_residual_fine, std::numeric_limits<double>::min());
  rep.decay_factor = rep.smooth_residual_coarse / fine;
  rep.decay_exponent = std::log2(rep.decay_factor);
  return rep;
}

const RatioStat* EquivalenceReport::find(const std::string& name) const {
  for (const auto& r : ratios)
    if (r.name == name) return &r;
  return nullptr;
}

EquivalenceReport check_equivalences(const Bathymetry& b, const CoefficientSet& c, double epsilon, double s,
                                     int family_size, std::uint64_t seed, EquivalenceRequest req) {
  const GridPtr& g = b.h.grid;
  std::string failed;
  auto fail = [&](const std::string& m) { failed += (failed.empty() ? "" : "; ") + m; };

  if (!(epsilon > 0.0 && epsilon < 1.0)) fail("epsilon in (0,1)");
  if (b.min_h < b.h0 || b.max_h > 2.0) fail("non-cavitation h0 <= h <= 2");
  if (req.mass_P1 || req.mass_P2) {
    const double gn = b.grad_norm(s);
    if (gn > kMassSmallness)
      fail("smallness ||grad h||_{H^s} <= c0 (" + std::to_string(gn) + " > " + std::to_string(kMassSmallness) + ")");
    if (req.mass_P1 && !(c.a1 > 0.0)) fail("a1 > 0 for the P1 equivalence");
    if (req.mass_P2 && !(c.d1 > 0.0)) fail("d1 > 0 for the P2 equivalence");
  }
  if (req.dispersive) {
    if (g->dim() != 1) fail("B_h/C_h equivalences are one-dimensional");
    if (!(c.b1 < 0.0)) fail("b1 < 0");
    if (std::abs(c.b1 - c.c1) > kEqualityTol || std::abs(c.b2 + c.b3 + c.c2 + c.c3) > kEqualityTol)
      fail("b1=c1 and b2+b3+c2+c3=0");
    if (g->dim() == 1 && b.grad_norm(4) > 1.0 + 1e-9) fail("fast bound ||d_x h||_{H^4} <= 1");
  }
  if (!failed.empty()) throw Error(ErrorCode::HypothesisViolation, "equivalence hypotheses fail: " + failed);

  const OperatorContext ctx(b, c, epsilon);
  const double he = 0.5 * epsilon;
  std::mt19937_64 rng(seed);
  Accum p1, p2, b1, b2, c1, c2;
  const int dim = g->dim();
  for (int k = 0; k < family_size; ++k) {
    if (req.mass_P1) {
      VectorField V(g);
      for (int a = 0; a < dim; ++a) V[a] = packet_field(g, rng);
      p1.add(hs_inner(apply_mass1(ctx, V), V, s) / x_norm_sq(V, NormSpec{s, 1, epsilon, true}));
    }
    if (req.mass_P2) {
      const ScalarField e = packet_field(g, rng);
      p2.add(hs_inner(apply_mass2(ctx, e), e, s) / x_norm_sq(e, NormSpec{s, 1, epsilon, false}));
    }
    if (req.dispersive) {
      const ScalarField f = packet_field(g, rng);
      const ScalarField fx = dx(f);
      const double f2 = l2_inner(f, f);
      const double a_e = x_norm_sq(fx, 0, 1, epsilon);
      const double a_e2 = x_norm_sq(fx, 0, 2, epsilon);

      ScalarField bf = dealias_product(ctx.sqrt_h, fx);
      bf.axpy(he, apply_Bh(ctx, f));
      b1.add(l2_inner(bf, fx) / a_e);
      b2.add(l2_inner(bf, bf) / a_e2);

      ScalarField cf = dx(dealias_product(ctx.sqrt_h, f));
      cf.axpy(he, apply_Ch(ctx, f));
      // two-sided with the additive L2 slack: A - |f|^2 <~ Q <~ A + |f|^2
      const double q1 = l2_inner(cf, cf);
      c1.add_hi(q1 / (a_e2 + f2));
      if (a_e2 > f2) c1.add_lo(q1 / (a_e2 - f2));
      const double q2 = l2_inner(cf, fx);
      c2.add_hi(q2 / (a_e + f2));
      if (a_e > f2) c2.add_lo(q2 / (a_e - f2));
    }
  }

  EquivalenceReport rep;
  rep.epsilon = epsilon;
  rep.s = s;
  rep.family_size = family_size;
  if (req.mass_P1) rep.ratios.push_back(p1.stat("mass_P1"));
  if (req.mass_P2) rep.ratios.push_back(p2.stat("mass_P2"));
  if (req.dispersive) {
    rep.ratios.push_back(b1.stat("B1"));
    rep.ratios.push_back(b2.stat("B2"));
    rep.ratios.push_back(c1.stat("C1"));
    rep.ratios.push_back(c2.stat("C2"));
  }
  return rep;
}

std::string to_string(ProbeKind k) {
  switch (k) {
    case ProbeKind::Tame: return "tame";
    case ProbeKind::Commutator: return "commutator";
    case ProbeKind::Composition: return "composition";
  }
  return "?";
}

ScalarField lambda_s(const ScalarField& f, double s) {
  Spectrum sp = fft(f);
  const auto& xi2 = f.grid->xi2();
  for (std::size_t m = 0; m < sp.size(); ++m) sp[m] *= std::pow(1.0 + xi2[m], 0.5 * s);
  return ifft(f.grid, std::move(sp));
}

namespace {

double probe_ratio(ProbeKind kind, const GridPtr& g, double s, std::mt19937_64& rng) {
  switch (kind) {
    case ProbeKind::Tame: {
      const ScalarField f = random_field(g, s, rng);
      const ScalarField h = random_field(g, s, rng);
      const double lhs = sobolev_norm(pointwise_product(f, h), s);
      const double rhs = sobolev_norm(f, s) * max_abs(h) + max_abs(f) * sobolev_norm(h, s);
      return lhs / rhs;
    }
    case ProbeKind::Commutator: {
      // r = 0; t0 = 1 (> n/2 for n = 1, 2)
      const double t0 = 1.0;
      const ScalarField f = random_field(g, s, rng);
      const ScalarField u = random_field(g, s, rng);
      ScalarField comm = lambda_s(pointwise_product(f, u), s);
      comm -= pointwise_product(f, lambda_s(u, s));
      const double lhs = l2_norm(comm);
      const double sr1 = s - 1.0;
      const double gf = sobolev_norm_sq(gradient(f), sr1 <= t0 ? t0 : sr1);
      const double rhs = std::sqrt(gf) * sobolev_norm(u, sr1);
      return rhs > 0.0 ? lhs / rhs : 0.0;
    }
    case ProbeKind::Composition: {
      ScalarField h = random_field(g, s, rng);
      h *= 0.5 / std::max(max_abs(h), 1e-300);
      for (auto& x : h.v) x += 1.0;
      ScalarField F = h;
      for (auto& x : F.v) x = std::sqrt(x);
      const double lhs = std::sqrt(sobolev_norm_sq(gradient(F), std::floor(s)));
      const double rhs = std::sqrt(sobolev_norm_sq(gradient(h), s));
      return rhs > 0.0 ? lhs / rhs : 0.0;
    }
  }
  return 0.0;
}

}  // namespace

ProbeReport probe_inequality_constants(const GridPtr& g, ProbeKind kind, double s, int family_size,
                                       std::uint64_t seed) {
  if (family_size < 2) throw Error(ErrorCode::ConfigInvalid, "probe family needs at least two members");
  ProbeReport rep;
  rep.kind = kind;
  rep.s = s;
  rep.family_size = family_size;
  std::mt19937_64 rng(seed);
  const int half = family_size / 2;
  for (int k = 0; k < family_size; ++k) {
    const double r = probe_ratio(kind, g, s, rng);
    if (!std::isfinite(r)) rep.finite = false;
    rep.max_ratio = std::max(rep.max_ratio, r);
    if (k + 1 == half) rep.max_ratio_half = rep.max_ratio;
  }
  rep.drift = rep.max_ratio > 0.0 ? (rep.max_ratio - rep.max_ratio_half) / rep.max_ratio : 0.0;
  rep.growth_flag = rep.drift > 0.1;
  return rep;
}

WaveTestReport flat_bottom_wave_test(const CoefficientSet& c, double epsilon, double xi, int periods, int n,
                                     double length) {
  WaveTestReport rep;
  rep.xi = xi;
  rep.epsilon = epsilon;
  const DispersionSample ds = dispersion_eigenvalues(c, epsilon, xi);
  rep.analytic_frequency = std::abs(ds.lambda_plus);
  rep.ill_posed = ds.ill_posed_mode;
  if (ds.ill_posed_mode) return rep;

  const GridPtr g = make_grid_1d(n, length);
  const double mf = xi * length / kTwoPi;
  const int m = static_cast<int>(std::lround(mf));
  if (std::abs(mf - m) > 1e-9 || m <= 0 || m > g->cutoff(0))
    throw Error(ErrorCode::ConfigInvalid, "wavenumber is not a resolved grid mode");

  const Bathymetry b(constant(g, 1.0), 0.5, "flat");
  const Model model(b, c, epsilon, RegimeTag::Slow1d, RhsOptions{false});
  const double omega = rep.analytic_frequency;
  const double he = 0.5 * epsilon * xi * xi;
  const double beta = (1.0 - c.c1 * he) / (1.0 + c.d1 * he);
  const double kappa = omega / (xi * beta);

  State st = State::zero(g);
  st.eta = sample(g, [&](double x, double) { return std::cos(xi * x); });
  st.V[0] = sample(g, [&](double x, double) { return kappa * std::cos(xi * x); });

  auto coeff = [&](const ScalarField& f) {
    cplx acc = 0.0;
    for (int i = 0; i < n; ++i) acc += f[i] * std::exp(cplx(0.0, -xi * g->coord(0, i)));
    return acc / static_cast<double>(n);
  };

  const double period = kTwoPi / omega;
  const double dt_stable = stable_dt(model);
  const int per_period = std::max(128, static_cast<int>(std::ceil(period / std::min(dt_stable, 0.05 / omega))));
  rep.dt = period / per_period;
  rep.steps = per_period * periods;

  const cplx a0 = coeff(st.eta);
  cplx prev = a0;
  double phase = 0.0;
  for (int k = 0; k < rep.steps; ++k) {
    st = step_rk4(model, st, rep.dt);
    const cplx cur = coeff(st.eta);
    phase += std::arg(cur / prev);
    prev = cur;
  }
  const double T = rep.dt * rep.steps;
  rep.measured_frequency = -phase / T;
  rep.relative_error = std::abs(rep.measured_frequency - omega) / omega;
  rep.amplitude_drift_per_period = std::abs(std::abs(prev) / std::abs(a0) - 1.0) / periods;
  return rep;
}

}  // namespace bsq
