#include "bsq/field.hpp"

#include <cmath>

#include "bsq/errors.hpp"
#include "bsq/kernels.hpp"

namespace bsq {

namespace k = kernels::omp;

ScalarField::ScalarField(GridPtr g, std::vector<double> values) : grid(std::move(g)), v(std::move(values)) {
  if (v.size() != grid->size()) throw Error(ErrorCode::GridMismatch, "value count does not match grid");
}

void require_same_grid(const ScalarField& a, const ScalarField& b) {
  if (a.grid != b.grid && !(a.grid && b.grid && a.grid->same_as(*b.grid)))
    throw Error(ErrorCode::GridMismatch, "fields live on different grids");
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_same_grid(*this, o);
  k::axpy(1.0, o.v.data(), v.data(), v.size());
  return *this;
}
ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_same_grid(*this, o);
  k::axpy(-1.0, o.v.data(), v.data(), v.size());
  return *this;
}
ScalarField& ScalarField::operator*=(double a) {
  for (auto& x : v) x *= a;
  return *this;
}
void ScalarField::axpy(double a, const ScalarField& x) {
  require_same_grid(*this, x);
  k::axpy(a, x.v.data(), v.data(), v.size());
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double a, ScalarField f) { return f *= a; }
ScalarField operator-(ScalarField f) { return f *= -1.0; }

VectorField& VectorField::operator+=(const VectorField& o) {
  for (int i = 0; i < dim(); ++i) c[i] += o.c[i];
  return *this;
}
VectorField& VectorField::operator-=(const VectorField& o) {
  for (int i = 0; i < dim(); ++i) c[i] -= o.c[i];
  return *this;
}
VectorField& VectorField::operator*=(double a) {
  for (auto& x : c) x *= a;
  return *this;
}
void VectorField::axpy(double a, const VectorField& x) {
  for (int i = 0; i < dim(); ++i) c[i].axpy(a, x.c[i]);
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double a, VectorField f) { return f *= a; }
VectorField operator-(VectorField f) { return f *= -1.0; }

ScalarField sample(const GridPtr& g, const std::function<double(double, double)>& fn) {
  ScalarField f(g);
  for (int iy = 0; iy < g->n(1); ++iy)
    for (int ix = 0; ix < g->n(0); ++ix)
      f[g->index(ix, iy)] = fn(g->coord(0, ix), g->dim() == 2 ? g->coord(1, iy) : 0.0);
  return f;
}

ScalarField constant(const GridPtr& g, double value) {
  ScalarField f(g);
  std::fill(f.v.begin(), f.v.end(), value);
  return f;
}

Spectrum fft(const ScalarField& f) {
  Spectrum s(f.size());
  f.grid->forward(f.v.data(), s.data());
  return s;
}

ScalarField ifft(const GridPtr& g, Spectrum s) {
  ScalarField f(g);
  g->backward(s, f.v.data());
  return f;
}

ScalarField derivative(const ScalarField& f, int axis, int order) {
  if (order < 0 || order > 4) throw Error(ErrorCode::PreconditionViolation, "derivative order must be 0..4");
  if (order == 0) return f;
  const Grid& g = *f.grid;
  if (axis >= g.dim()) throw Error(ErrorCode::PreconditionViolation, "derivative axis out of range");
  Spectrum s = fft(f);
  const auto& xi = g.xi(axis);
  const auto& nyq = g.nyquist(axis);
  const bool odd = order % 2 == 1;
  const cplx iunit(0.0, 1.0);
  // transform round-off sits near 1e-16 of the peak in every mode; at order >= 3 the
  // xi^order factor would lift it above 1e-12, so coefficients below the floor are dropped
  double floor = 0.0;
  if (order >= 3) {
    for (const cplx& z : s) floor = std::max(floor, std::abs(z));
    floor *= 1e-14;
  }
  for (std::size_t m = 0; m < s.size(); ++m) {
    if ((odd && nyq[m]) || std::abs(s[m]) < floor) {
      s[m] = 0.0;
      continue;
    }
    cplx mult = 1.0;
    for (int p = 0; p < order; ++p) mult *= iunit * xi[m];
    s[m] *= mult;
  }
  return ifft(f.grid, std::move(s));
}

VectorField gradient(const ScalarField& f) {
  VectorField u(f.grid);
  for (int a = 0; a < f.grid->dim(); ++a) u[a] = derivative(f, a, 1);
  return u;
}

ScalarField divergence(const VectorField& u) {
  const Grid& g = *u.grid();
  if (u.dim() != g.dim()) throw Error(ErrorCode::ModeMismatch, "vector field dimension differs from grid");
  Spectrum acc(g.size(), 0.0);
  const cplx iunit(0.0, 1.0);
  for (int a = 0; a < u.dim(); ++a) {
    Spectrum s = fft(u[a]);
    const auto& xi = g.xi(a);
    const auto& nyq = g.nyquist(a);
    for (std::size_t m = 0; m < s.size(); ++m)
      if (!nyq[m]) acc[m] += iunit * xi[m] * s[m];
  }
  return ifft(u.grid(), std::move(acc));
}

ScalarField dealias(const ScalarField& f) {
  Spectrum s = fft(f);
  k::mask_spectrum(s.data(), f.grid->keep().data(), s.size());
  return ifft(f.grid, std::move(s));
}

VectorField dealias(const VectorField& f) {
  VectorField out = f;
  for (auto& c : out.c) c = dealias(c);
  return out;
}

ScalarField pointwise_product(const ScalarField& f, const ScalarField& g) {
  require_same_grid(f, g);
  ScalarField out(f.grid);
  k::mul(f.v.data(), g.v.data(), out.v.data(), f.size());
  return out;
}

ScalarField dealias_product(const ScalarField& f, const ScalarField& g) {
  return dealias(pointwise_product(f, g));
}

VectorField scale_by(const ScalarField& w, const VectorField& u) {
  VectorField out = u;
  for (int a = 0; a < u.dim(); ++a) out[a] = dealias_product(w, u[a]);
  return out;
}

ScalarField dot(const VectorField& u, const VectorField& w) {
  ScalarField acc(u.grid());
  for (int a = 0; a < u.dim(); ++a) acc += pointwise_product(u[a], w[a]);
  return dealias(acc);
}

double l2_inner(const ScalarField& f, const ScalarField& g) {
  require_same_grid(f, g);
  return f.grid->cell_volume() * kernels::dot(f.v.data(), g.v.data(), f.size());
}

double l2_inner(const VectorField& f, const VectorField& g) {
  double s = 0.0;
  for (int a = 0; a < f.dim(); ++a) s += l2_inner(f[a], g[a]);
  return s;
}

double l2_norm(const ScalarField& f) { return std::sqrt(l2_inner(f, f)); }
double l2_norm(const VectorField& f) { return std::sqrt(l2_inner(f, f)); }

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double x : f.v) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(const ScalarField& f) {
  for (double x : f.v)
    if (!std::isfinite(x)) return false;
  return true;
}

bool all_finite(const VectorField& f) {
  for (const auto& c : f.c)
    if (!all_finite(c)) return false;
  return true;
}

namespace {

double spectral_weight(const Grid& g) {
  const double n = static_cast<double>(g.size());
  return g.volume() / (n * n);
}

double weighted_sum(const Spectrum& a, const Spectrum& b, const Grid& g, double s) {
  const auto& xi2 = g.xi2();
  double acc = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    const double w = s == 0.0 ? 1.0 : std::pow(1.0 + xi2[m], s);
    acc += w * (a[m].real() * b[m].real() + a[m].imag() * b[m].imag());
  }
  return acc * spectral_weight(g);
}

}  // namespace

double hs_inner(const ScalarField& f, const ScalarField& g, double s) {
  require_same_grid(f, g);
  if (s == 0.0) return l2_inner(f, g);
  return weighted_sum(fft(f), fft(g), *f.grid, s);
}

double hs_inner(const VectorField& f, const VectorField& g, double s) {
  double acc = 0.0;
  for (int a = 0; a < f.dim(); ++a) acc += hs_inner(f[a], g[a], s);
  return acc;
}

double sobolev_norm_sq(const ScalarField& f, double s) {
  const Spectrum a = fft(f);
  return weighted_sum(a, a, *f.grid, s);
}

double sobolev_norm_sq(const VectorField& f, double s) {
  double acc = 0.0;
  for (const auto& c : f.c) acc += sobolev_norm_sq(c, s);
  return acc;
}

double sobolev_norm(const ScalarField& f, double s) { return std::sqrt(sobolev_norm_sq(f, s)); }

double l2_spectral_sq(const ScalarField& f) { return sobolev_norm_sq(f, 0.0); }

double x_norm_sq(const ScalarField& f, const NormSpec& spec) {
  if (spec.vector_mode) throw Error(ErrorCode::ModeMismatch, "vector norm requested for a scalar field");
  const Spectrum a = fft(f);
  double v = weighted_sum(a, a, *f.grid, spec.s);
  if (spec.k > 0) v += std::pow(spec.epsilon, spec.k) * weighted_sum(a, a, *f.grid, spec.s + spec.k);
  return v;
}

double x_norm_sq(const VectorField& f, const NormSpec& spec) {
  if (!spec.vector_mode) throw Error(ErrorCode::ModeMismatch, "scalar norm requested for a vector field");
  double v = sobolev_norm_sq(f, spec.s);
  if (spec.k > 0) v += std::pow(spec.epsilon, spec.k) * sobolev_norm_sq(divergence(f), spec.s + spec.k - 1);
  return v;
}

double x_norm(const ScalarField& f, const NormSpec& spec) { return std::sqrt(x_norm_sq(f, spec)); }
double x_norm(const VectorField& f, const NormSpec& spec) { return std::sqrt(x_norm_sq(f, spec)); }

double derivative_norm_sq(const ScalarField& f, int order) {
  const Spectrum a = fft(f);
  const auto& xi = f.grid->xi(0);
  double acc = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) acc += std::pow(xi[m] * xi[m], order) * std::norm(a[m]);
  return acc * spectral_weight(*f.grid);
}

double check_interpolation(const ScalarField& f, int j, int k, double epsilon) {
  if (!(0 < j && j < k)) throw Error(ErrorCode::PreconditionViolation, "interpolation needs 0 < j < k");
  const double n0 = std::sqrt(derivative_norm_sq(f, 0));
  if (n0 == 0.0) throw Error(ErrorCode::ZeroField, "interpolation probe needs a nonzero field");
  const double nj = std::sqrt(derivative_norm_sq(f, j));
  const double nk = std::sqrt(derivative_norm_sq(f, k));
  const double th = static_cast<double>(j) / k;
  const double rhs = std::pow(n0, 1.0 - th) * std::pow(std::pow(epsilon, 0.5 * k) * nk, th);
  return rhs - std::pow(epsilon, 0.5 * j) * nj;
}

ScalarField random_field(const GridPtr& g, double s, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Spectrum spec(g->size(), 0.0);
  const int cx = g->cutoff(0) / 2;
  const int cy = g->dim() == 2 ? g->cutoff(1) / 2 : 0;
  const auto& mx = g->mode(0);
  const auto& my = g->mode(1);
  const double scale = static_cast<double>(g->size());
  // draw in a fixed mode order so the sequence does not depend on storage layout
  for (std::size_t m = 0; m < spec.size(); ++m) {
    const double re = nd(rng), im = nd(rng);
    if (std::abs(mx[m]) > cx || std::abs(my[m]) > cy) continue;
    const double am = std::sqrt(double(mx[m]) * mx[m] + double(my[m]) * my[m]);
    spec[m] = scale * std::pow(1.0 + am, -(s + 2.0)) * cplx(re, im);
  }
  return ifft(g, std::move(spec));
}

}  // namespace bsq
