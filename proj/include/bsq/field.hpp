#pragma once

#include <functional>
#include <random>
#include <vector>

#include "bsq/grid.hpp"

namespace bsq {

struct ScalarField {
  GridPtr grid;
  std::vector<double> v;

  ScalarField() = default;
  explicit ScalarField(GridPtr g) : grid(std::move(g)), v(grid->size(), 0.0) {}
  ScalarField(GridPtr g, std::vector<double> values);

  std::size_t size() const { return v.size(); }
  double& operator[](std::size_t i) { return v[i]; }
  double operator[](std::size_t i) const { return v[i]; }

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double a);
  void axpy(double a, const ScalarField& x);
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double a, ScalarField f);
ScalarField operator-(ScalarField f);

struct VectorField {
  std::vector<ScalarField> c;

  VectorField() = default;
  explicit VectorField(GridPtr g) : c(g->dim(), ScalarField(g)) {}
  explicit VectorField(std::vector<ScalarField> comps) : c(std::move(comps)) {}

  int dim() const { return static_cast<int>(c.size()); }
  const GridPtr& grid() const { return c.front().grid; }
  ScalarField& operator[](int i) { return c[i]; }
  const ScalarField& operator[](int i) const { return c[i]; }

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double a);
  void axpy(double a, const VectorField& x);
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double a, VectorField f);
VectorField operator-(VectorField f);

void require_same_grid(const ScalarField& a, const ScalarField& b);

ScalarField sample(const GridPtr& g, const std::function<double(double, double)>& fn);
ScalarField constant(const GridPtr& g, double value);

Spectrum fft(const ScalarField& f);
ScalarField ifft(const GridPtr& g, Spectrum s);

// (i xi_axis)^order, Nyquist mode zeroed for odd orders
ScalarField derivative(const ScalarField& f, int axis, int order);
inline ScalarField dx(const ScalarField& f) { return derivative(f, 0, 1); }
VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& u);

// zero all modes above the 2/3 cutoff
ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& f);
ScalarField dealias_product(const ScalarField& f, const ScalarField& g);
ScalarField pointwise_product(const ScalarField& f, const ScalarField& g);
VectorField scale_by(const ScalarField& w, const VectorField& u);  // dealiased w*u
ScalarField dot(const VectorField& u, const VectorField& w);        // dealiased u.w

double l2_inner(const ScalarField& f, const ScalarField& g);
double l2_inner(const VectorField& f, const VectorField& g);
double l2_norm(const ScalarField& f);
double l2_norm(const VectorField& f);
double max_abs(const ScalarField& f);
bool all_finite(const ScalarField& f);
bool all_finite(const VectorField& f);

// H^s inner product through the (1+xi^2)^s multiplier, normalized so s=0 is the L2 integral
double hs_inner(const ScalarField& f, const ScalarField& g, double s);
double hs_inner(const VectorField& f, const VectorField& g, double s);
double sobolev_norm(const ScalarField& f, double s);
double sobolev_norm_sq(const ScalarField& f, double s);
double sobolev_norm_sq(const VectorField& f, double s);
double l2_spectral_sq(const ScalarField& f);

struct NormSpec {
  double s = 0.0;
  int k = 0;
  double epsilon = 0.1;
  bool vector_mode = false;
};

double x_norm_sq(const ScalarField& f, const NormSpec& spec);
double x_norm_sq(const VectorField& f, const NormSpec& spec);
double x_norm(const ScalarField& f, const NormSpec& spec);
double x_norm(const VectorField& f, const NormSpec& spec);
inline double x_norm_sq(const ScalarField& f, double s, int k, double eps) {
  return x_norm_sq(f, NormSpec{s, k, eps, false});
}

// sum over modes of |xi_x|^(2j) |f_hat|^2, i.e. ||d_x^j f||^2 without Nyquist removal
double derivative_norm_sq(const ScalarField& f, int order);

// ||f||^(1-j/k) (eps^(k/2) ||d^k f||)^(j/k) - eps^(j/2) ||d^j f||
double check_interpolation(const ScalarField& f, int j, int k, double epsilon);

// random real field with modes |m| <= cutoff/2 and amplitudes (1+|m|)^-(s+2)
ScalarField random_field(const GridPtr& g, double s, std::mt19937_64& rng);

}  // namespace bsq
