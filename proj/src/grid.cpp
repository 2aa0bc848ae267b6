#include "bsq/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "bsq/errors.hpp"
#include "bsq/kernels.hpp"

namespace bsq {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

int signed_mode(int i, int n) { return i <= n / 2 ? (i == n / 2 ? -n / 2 : i) : i - n; }

}  // namespace

Grid::Grid(int dim, int nx, double lx, int ny, double ly)
    : dim_(dim), nx_(nx), ny_(dim == 1 ? 1 : ny), lx_(lx), ly_(dim == 1 ? 1.0 : ly) {
  if (dim != 1 && dim != 2) throw Error(ErrorCode::ConfigInvalid, "grid dimension must be 1 or 2");
  if (!is_pow2(nx_) || nx_ < 4 || (dim == 2 && (!is_pow2(ny_) || ny_ < 4)))
    throw Error(ErrorCode::ConfigInvalid, "grid sizes must be powers of two >= 4");
  if (!(lx_ > 0) || !(ly_ > 0)) throw Error(ErrorCode::ConfigInvalid, "grid lengths must be positive");
  volume_ = dim == 1 ? lx_ : lx_ * ly_;
  size_ = static_cast<std::size_t>(nx_) * ny_;

  xi_x_.resize(size_);
  xi_y_.resize(size_);
  xi2_.resize(size_);
  mode_x_.resize(size_);
  mode_y_.resize(size_);
  nyq_x_.resize(size_);
  nyq_y_.resize(size_);
  keep_.resize(size_);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int iy = 0; iy < ny_; ++iy) {
    for (int ix = 0; ix < nx_; ++ix) {
      const int k = index(ix, iy);
      const int mx = signed_mode(ix, nx_);
      const int my = dim == 1 ? 0 : signed_mode(iy, ny_);
      mode_x_[k] = mx;
      mode_y_[k] = my;
      xi_x_[k] = two_pi * mx / lx_;
      xi_y_[k] = dim == 1 ? 0.0 : two_pi * my / ly_;
      xi2_[k] = xi_x_[k] * xi_x_[k] + xi_y_[k] * xi_y_[k];
      nyq_x_[k] = (ix == nx_ / 2);
      nyq_y_[k] = dim == 2 && (iy == ny_ / 2);
      keep_[k] = std::abs(mx) <= nx_ / 3 && (dim == 1 || std::abs(my) <= ny_ / 3);
    }
  }

  std::lock_guard<std::mutex> lock(planner_mutex());
  std::vector<cplx> a(size_), b(size_);
  auto* pa = reinterpret_cast<fftw_complex*>(a.data());
  auto* pb = reinterpret_cast<fftw_complex*>(b.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  if (dim == 1) {
    plan_fwd_ = fftw_plan_dft_1d(nx_, pa, pb, FFTW_FORWARD, flags);
    plan_bwd_ = fftw_plan_dft_1d(nx_, pa, pb, FFTW_BACKWARD, flags);
  } else {
    plan_fwd_ = fftw_plan_dft_2d(ny_, nx_, pa, pb, FFTW_FORWARD, flags);
    plan_bwd_ = fftw_plan_dft_2d(ny_, nx_, pa, pb, FFTW_BACKWARD, flags);
  }
}

Grid::~Grid() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

double Grid::max_abs_xi() const {
  double m = 0.0;
  for (double v : xi2_) m = std::max(m, v);
  return std::sqrt(m);
}

void Grid::forward(const double* in, cplx* out) const {
  Spectrum tmp(size_);
  kernels::omp::real_to_complex(in, tmp.data(), size_);
  fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_), reinterpret_cast<fftw_complex*>(tmp.data()),
                   reinterpret_cast<fftw_complex*>(out));
}

void Grid::backward(Spectrum& work, double* out) const {
  Spectrum tmp(size_);
  fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_), reinterpret_cast<fftw_complex*>(work.data()),
                   reinterpret_cast<fftw_complex*>(tmp.data()));
  kernels::omp::complex_to_real(tmp.data(), 1.0 / static_cast<double>(size_), out, size_);
}

void Grid::backward_complex(const cplx* in, cplx* out) const {
  Spectrum tmp(in, in + size_);
  fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_), reinterpret_cast<fftw_complex*>(tmp.data()),
                   reinterpret_cast<fftw_complex*>(out));
}

GridPtr make_grid_1d(int n, double length) { return std::make_shared<const Grid>(1, n, length); }

GridPtr make_grid_2d(int nx, double lx, int ny, double ly) {
  return std::make_shared<const Grid>(2, nx, lx, ny, ly);
}

}  // namespace bsq
