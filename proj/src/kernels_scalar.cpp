#include "gbdm/kernels.hpp"

namespace gbdm::simd {
namespace {

void s_zscal(std::size_t n, cplx alpha, cplx* x) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void s_zaxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

cplx s_zdotc(std::size_t n, const cplx* x, const cplx* y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

cplx s_zdotu(std::size_t n, const cplx* x, const cplx* y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr - xi * yi;
    im += xr * yi + xi * yr;
  }
  return {re, im};
}

double s_znrm2sq(std::size_t n, const cplx* x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return acc;
}

void s_zrot(std::size_t n, cplx* x, cplx* y, double c, cplx s) {
  const cplx sc = std::conj(s);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx xi = x[i], yi = y[i];
    x[i] = c * xi + s * yi;
    y[i] = -sc * xi + c * yi;
  }
}

void s_zgemm(std::size_t m, std::size_t k, std::size_t n, cplx alpha,
             const cplx* A, std::size_t lda, const cplx* B, std::size_t ldb,
             cplx beta, cplx* C, std::size_t ldc) {
  for (std::size_t i = 0; i < m; ++i) {
    cplx* Ci = C + i * ldc;
    if (beta == cplx(0.0, 0.0)) {
      for (std::size_t j = 0; j < n; ++j) Ci[j] = 0.0;
    } else if (beta != cplx(1.0, 0.0)) {
      for (std::size_t j = 0; j < n; ++j) Ci[j] *= beta;
    }
    const cplx* Ai = A + i * lda;
    for (std::size_t p = 0; p < k; ++p) {
      const cplx a = alpha * Ai[p];
      if (a == cplx(0.0, 0.0)) continue;
      const cplx* Bp = B + p * ldb;
      for (std::size_t j = 0; j < n; ++j) Ci[j] += a * Bp[j];
    }
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t = {"scalar",  s_zscal,   s_zaxpy, s_zdotc,
                                s_zdotu,   s_znrm2sq, s_zrot,  s_zgemm};
  return t;
}

}  // namespace gbdm::simd
