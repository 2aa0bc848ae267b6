#pragma once

#include <complex>
#include <cstddef>

// Pointwise and spectral-diagonal loops. `serial` is the reference; `omp` is the
// OpenMP version used by the library. Both are elementwise, so results agree bitwise.
namespace bsq::kernels {

using cplx = std::complex<double>;

// below this length the OpenMP variant runs the loop on one thread
inline constexpr std::size_t kParallelThreshold = 8192;

namespace serial {
void mul(const double* a, const double* b, double* out, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void lincomb(double alpha, const double* x, double beta, const double* y, double* out, std::size_t n);
void scale_spectrum(cplx* s, const cplx* mult, std::size_t n);
void mask_spectrum(cplx* s, const unsigned char* keep, std::size_t n);
void real_to_complex(const double* x, cplx* out, std::size_t n);
void complex_to_real(const cplx* s, double scale, double* out, std::size_t n);
}  // namespace serial

namespace omp {
void mul(const double* a, const double* b, double* out, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void lincomb(double alpha, const double* x, double beta, const double* y, double* out, std::size_t n);
void scale_spectrum(cplx* s, const cplx* mult, std::size_t n);
void mask_spectrum(cplx* s, const unsigned char* keep, std::size_t n);
void real_to_complex(const double* x, cplx* out, std::size_t n);
void complex_to_real(const cplx* s, double scale, double* out, std::size_t n);
}  // namespace omp

// Serial dot product with fixed summation order (reductions are never threaded).
double dot(const double* a, const double* b, std::size_t n);

}  // namespace bsq::kernels
