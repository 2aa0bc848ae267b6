#pragma once

#include <complex>
#include <memory>
#include <vector>

namespace bsq {

using cplx = std::complex<double>;
using Spectrum = std::vector<cplx>;

// Periodic grid on [0,Lx) (x [0,Ly)). Storage is row-major with x fastest.
class Grid {
 public:
  Grid(int dim, int nx, double lx, int ny = 1, double ly = 1.0);
  ~Grid();
  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  int dim() const { return dim_; }
  int n(int axis) const { return axis == 0 ? nx_ : ny_; }
  double length(int axis) const { return axis == 0 ? lx_ : ly_; }
  std::size_t size() const { return size_; }
  double cell_volume() const { return volume_ / static_cast<double>(size_); }
  double volume() const { return volume_; }

  double coord(int axis, int i) const { return length(axis) * i / n(axis); }
  int index(int ix, int iy = 0) const { return iy * nx_ + ix; }

  // per-mode tables (length size())
  const std::vector<double>& xi(int axis) const { return axis == 0 ? xi_x_ : xi_y_; }
  const std::vector<double>& xi2() const { return xi2_; }
  const std::vector<unsigned char>& nyquist(int axis) const { return axis == 0 ? nyq_x_ : nyq_y_; }
  const std::vector<unsigned char>& keep() const { return keep_; }
  const std::vector<int>& mode(int axis) const { return axis == 0 ? mode_x_ : mode_y_; }

  int cutoff(int axis) const { return n(axis) / 3; }
  double max_abs_xi() const;

  void forward(const double* in, cplx* out) const;
  // out = real part of the normalized inverse transform; `work` is overwritten
  void backward(Spectrum& work, double* out) const;
  // raw inverse transform (unnormalized), for diagnostics
  void backward_complex(const cplx* in, cplx* out) const;

  bool same_as(const Grid& o) const {
    return dim_ == o.dim_ && nx_ == o.nx_ && ny_ == o.ny_ && lx_ == o.lx_ && ly_ == o.ly_;
  }

 private:
  int dim_, nx_, ny_;
  double lx_, ly_, volume_;
  std::size_t size_;
  std::vector<double> xi_x_, xi_y_, xi2_;
  std::vector<int> mode_x_, mode_y_;
  std::vector<unsigned char> nyq_x_, nyq_y_, keep_;
  void* plan_fwd_ = nullptr;
  void* plan_bwd_ = nullptr;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid_1d(int n, double length);
GridPtr make_grid_2d(int nx, double lx, int ny, double ly);

}  // namespace bsq
