#include "bsq/kernels.hpp"

namespace bsq::kernels {

namespace serial {

void mul(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void lincomb(double alpha, const double* x, double beta, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = alpha * x[i] + beta * y[i];
}

void scale_spectrum(cplx* s, const cplx* mult, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) s[i] *= mult[i];
}

void mask_spectrum(cplx* s, const unsigned char* keep, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (!keep[i]) s[i] = 0.0;
}

void real_to_complex(const double* x, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = cplx(x[i], 0.0);
}

void complex_to_real(const cplx* s, double scale, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = s[i].real() * scale;
}

}  // namespace serial

namespace omp {

using idx = std::ptrdiff_t;

void mul(const double* a, const double* b, double* out, std::size_t n) {
  const idx m = static_cast<idx>(n);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (idx i = 0; i < m; ++i) out[i] = a[i] * b[i];
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const idx m = static_cast<idx>(n);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (idx i = 0; i < m; ++i) y[i] += alpha * x[i];
}

void lincomb(double alpha, const double* x, double beta, const double* y, double* out, std::size_t n) {
  const idx m = static_cast<idx>(n);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (idx i = 0; i < m; ++i) out[i] = alpha * x[i] + beta * y[i];
}

void scale_spectrum(cplx* s, const cplx* mult, std::size_t n) {
  const idx m = static_cast<idx>(n);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (idx i = 0; i < m; ++i) s[i] *= mult[i];
}

void mask_spectrum(cplx* s, const unsigned char* keep, std::size_t n) {
  const idx m = static_cast<idx>(n);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (idx i = 0; i < m; ++i)
    if (!keep[i]) s[i] = 0.0;
}

void real_to_complex(const double* x, cplx* out, std::size_t n) {
  const idx m = static_cast<idx>(n);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (idx i = 0; i < m; ++i) out[i] = cplx(x[i], 0.0);
}

void complex_to_real(const cplx* s, double scale, double* out, std::size_t n) {
  const idx m = static_cast<idx>(n);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (idx i = 0; i < m; ++i) out[i] = s[i].real() * scale;
}

}  // namespace omp

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace bsq::kernels
