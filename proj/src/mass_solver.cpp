#include "bsq/mass_solver.hpp"

#include <cmath>
#include <functional>

#include "bsq/errors.hpp"
#include "bsq/kernels.hpp"

namespace bsq {

namespace {

using Vec = std::vector<double>;
using LinOp = std::function<void(const Vec&, Vec&)>;

double dotv(const Vec& a, const Vec& b) { return kernels::dot(a.data(), b.data(), a.size()); }
double normv(const Vec& a) { return std::sqrt(dotv(a, a)); }

struct Problem {
  LinOp apply;
  LinOp precond;
  bool symmetric;
};

void residual(const Problem& p, const Vec& b, const Vec& x, Vec& r) {
  p.apply(x, r);
  kernels::omp::lincomb(1.0, b.data(), -1.0, r.data(), r.data(), r.size());
}

// Preconditioned CG, restarted from the true residual until it meets the tolerance.
int pcg(const Problem& p, const Vec& b, Vec& x, double tol_abs, int max_iter) {
  const std::size_t n = b.size();
  Vec r(n), z(n), q(n), Ap(n);
  int it = 0;
  while (true) {
    residual(p, b, x, r);
    if (normv(r) <= tol_abs) return it;
    p.precond(r, z);
    q = z;
    double rz = dotv(r, z);
    while (true) {
      if (++it > max_iter) throw Error(ErrorCode::SolverDiverged, "mass inversion hit the iteration cap");
      p.apply(q, Ap);
      const double pAp = dotv(q, Ap);
      if (!(pAp > 0.0)) throw Error(ErrorCode::SolverDiverged, "mass operator is not positive on the iterate");
      const double alpha = rz / pAp;
      kernels::omp::axpy(alpha, q.data(), x.data(), n);
      kernels::omp::axpy(-alpha, Ap.data(), r.data(), n);
      if (normv(r) <= tol_abs) break;
      p.precond(r, z);
      const double rz_new = dotv(r, z);
      kernels::omp::lincomb(1.0, z.data(), rz_new / rz, q.data(), q.data(), n);
      rz = rz_new;
    }
  }
}

// Right-preconditioned BiCGSTAB for the nonsymmetric variants.
int bicgstab(const Problem& p, const Vec& b, Vec& x, double tol_abs, int max_iter) {
  const std::size_t n = b.size();
  Vec r(n), rhat(n), v(n, 0.0), pv(n, 0.0), y(n), s(n), z(n), t(n);
  int it = 0;
  while (true) {
    residual(p, b, x, r);
    if (normv(r) <= tol_abs) return it;
    rhat = r;
    std::fill(v.begin(), v.end(), 0.0);
    std::fill(pv.begin(), pv.end(), 0.0);
    double rho = 1.0, alpha = 1.0, omega = 1.0;
    while (true) {
      if (++it > max_iter) throw Error(ErrorCode::SolverDiverged, "mass inversion hit the iteration cap");
      const double rho_new = dotv(rhat, r);
      if (rho_new == 0.0 || omega == 0.0) break;  // breakdown: restart
      const double beta = (rho_new / rho) * (alpha / omega);
      for (std::size_t i = 0; i < n; ++i) pv[i] = r[i] + beta * (pv[i] - omega * v[i]);
      p.precond(pv, y);
      p.apply(y, v);
      alpha = rho_new / dotv(rhat, v);
      for (std::size_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
      if (normv(s) <= tol_abs) {
        kernels::omp::axpy(alpha, y.data(), x.data(), n);
        break;
      }
      p.precond(s, z);
      p.apply(z, t);
      omega = dotv(t, s) / dotv(t, t);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] += alpha * y[i] + omega * z[i];
        r[i] = s[i] - omega * t[i];
      }
      rho = rho_new;
      if (normv(r) <= tol_abs) break;
    }
  }
}

int run(const Problem& p, const Vec& b, Vec& x, double tol_abs) {
  return p.symmetric ? pcg(p, b, x, tol_abs, kMassMaxIter) : bicgstab(p, b, x, tol_abs, kMassMaxIter);
}

Vec pack(const VectorField& u) {
  Vec out;
  out.reserve(u.dim() * u.grid()->size());
  for (const auto& c : u.c) out.insert(out.end(), c.v.begin(), c.v.end());
  return out;
}

VectorField unpack(const GridPtr& g, const Vec& x) {
  VectorField u(g);
  const std::size_t n = g->size();
  for (int a = 0; a < g->dim(); ++a) std::copy(x.begin() + a * n, x.begin() + (a + 1) * n, u[a].v.begin());
  return u;
}

// flat-bottom inverse of 1 - eps/2 * kappa * grad div (vector) or div grad (scalar)
void flat_inverse_vector(const GridPtr& g, double kappa, const Vec& in, Vec& out) {
  const int dim = g->dim();
  const std::size_t n = g->size();
  std::vector<Spectrum> s(dim, Spectrum(n));
  for (int a = 0; a < dim; ++a) g->forward(in.data() + a * n, s[a].data());
  const auto& xi2 = g->xi2();
  for (std::size_t m = 0; m < n; ++m) {
    if (xi2[m] == 0.0) continue;
    cplx proj = 0.0;
    for (int a = 0; a < dim; ++a) proj += g->xi(a)[m] * s[a][m];
    const double fac = kappa / (1.0 + kappa * xi2[m]);
    for (int a = 0; a < dim; ++a) s[a][m] -= fac * g->xi(a)[m] * proj;
  }
  for (int a = 0; a < dim; ++a) g->backward(s[a], out.data() + a * n);
}

void flat_inverse_scalar(const GridPtr& g, double kappa, const Vec& in, Vec& out) {
  Spectrum s(g->size());
  g->forward(in.data(), s.data());
  const auto& xi2 = g->xi2();
  for (std::size_t m = 0; m < s.size(); ++m) s[m] /= 1.0 + kappa * xi2[m];
  g->backward(s, out.data());
}

}  // namespace

VectorField invert_mass1(const OperatorContext& ctx, const VectorField& f, SolveStats* stats) {
  const GridPtr g = ctx.grid;
  const VectorField fb = dealias(f);
  const Vec b = pack(fb);
  const double bnorm = normv(b);
  if (bnorm == 0.0) {
    if (stats) *stats = SolveStats{0, 0.0, ctx.c.a2 == 0.0};
    return VectorField(g);
  }
  const double kappa = 0.5 * ctx.epsilon * std::max(ctx.c.a1, 0.0) * ctx.mean_h2;
  Problem p;
  p.symmetric = ctx.c.a2 == 0.0;
  p.apply = [&](const Vec& x, Vec& y) { y = pack(apply_mass1(ctx, unpack(g, x))); };
  p.precond = [&](const Vec& x, Vec& y) {
    y.resize(x.size());
    flat_inverse_vector(g, kappa, x, y);
  };
  Vec x(b.size());
  p.precond(b, x);
  const int it = run(p, b, x, kMassRtol * bnorm);
  if (stats) {
    Vec r(b.size());
    residual(p, b, x, r);
    *stats = SolveStats{it, normv(r) / bnorm, p.symmetric};
  }
  return unpack(g, x);
}

ScalarField invert_mass2(const OperatorContext& ctx, const ScalarField& f, SolveStats* stats) {
  const GridPtr g = ctx.grid;
  const ScalarField fb = dealias(f);
  const Vec& b = fb.v;
  const double bnorm = normv(b);
  if (bnorm == 0.0) {
    if (stats) *stats = SolveStats{0, 0.0, ctx.c.d2 == 0.0};
    return ScalarField(g);
  }
  const double kappa = 0.5 * ctx.epsilon * std::max(ctx.c.d1, 0.0) * ctx.mean_h2;
  Problem p;
  p.symmetric = ctx.c.d2 == 0.0;
  p.apply = [&](const Vec& x, Vec& y) { y = apply_mass2(ctx, ScalarField(g, x)).v; };
  p.precond = [&](const Vec& x, Vec& y) {
    y.resize(x.size());
    flat_inverse_scalar(g, kappa, x, y);
  };
  Vec x(b.size());
  p.precond(b, x);
  const int it = run(p, b, x, kMassRtol * bnorm);
  if (stats) {
    Vec r(b.size());
    residual(p, b, x, r);
    *stats = SolveStats{it, normv(r) / bnorm, p.symmetric};
  }
  return ScalarField(g, std::move(x));
}

VectorField invert_mass1(const Bathymetry& b, const CoefficientSet& c, double epsilon, const VectorField& f) {
  return invert_mass1(OperatorContext(b, c, epsilon), f);
}

ScalarField invert_mass2(const Bathymetry& b, const CoefficientSet& c, double epsilon, const ScalarField& f) {
  return invert_mass2(OperatorContext(b, c, epsilon), f);
}

}  // namespace bsq
