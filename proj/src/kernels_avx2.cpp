#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "gbdm/kernels.hpp"

// AVX2+FMA variants. Layout: two complex<double> per __m256d register,
// [re0, im0, re1, im1]. Compiled with -mavx2 -mfma; selected at runtime.

namespace gbdm::simd {
namespace {

inline __m256d cmul(__m256d a, __m256d b) {
  __m256d a_re = _mm256_movedup_pd(a);         // [ar, ar, ar, ar]
  __m256d a_im = _mm256_permute_pd(a, 0xF);    // [ai, ai, ai, ai]
  __m256d b_sw = _mm256_permute_pd(b, 0x5);    // [bi, br, bi, br]
  return _mm256_fmaddsub_pd(a_re, b, _mm256_mul_pd(a_im, b_sw));
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

// even-lane sum minus odd-lane sum
inline double hsum_evenminusodd(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(lo) - _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

void v_zscal(std::size_t n, cplx alpha, cplx* x) {
  const __m256d av = _mm256_setr_pd(alpha.real(), alpha.imag(), alpha.real(),
                                    alpha.imag());
  std::size_t i = 0;
  double* xd = reinterpret_cast<double*>(x);
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    _mm256_storeu_pd(xd + 2 * i, cmul(av, xv));
  }
  for (; i < n; ++i) x[i] *= alpha;
}

void v_zaxpy(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const __m256d av = _mm256_setr_pd(alpha.real(), alpha.imag(), alpha.real(),
                                    alpha.imag());
  std::size_t i = 0;
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, cmul(av, xv)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

cplx v_zdotc(std::size_t n, const cplx* x, const cplx* y) {
  __m256d acc1 = _mm256_setzero_pd();  // even: xr*yr, odd: xi*yi
  __m256d acc2 = _mm256_setzero_pd();  // even: xr*yi, odd: xi*yr
  std::size_t i = 0;
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    acc1 = _mm256_fmadd_pd(xv, yv, acc1);
    acc2 = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0x5), acc2);
  }
  double re = hsum(acc1);
  double im = hsum_evenminusodd(acc2);
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

cplx v_zdotu(std::size_t n, const cplx* x, const cplx* y) {
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  std::size_t i = 0;
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    acc1 = _mm256_fmadd_pd(xv, yv, acc1);
    acc2 = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0x5), acc2);
  }
  double re = hsum_evenminusodd(acc1);
  double im = hsum(acc2);
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr - xi * yi;
    im += xr * yi + xi * yr;
  }
  return {re, im};
}

double v_znrm2sq(std::size_t n, const cplx* x) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  const double* xd = reinterpret_cast<const double*>(x);
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    acc = _mm256_fmadd_pd(xv, xv, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i)
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

void v_zrot(std::size_t n, cplx* x, cplx* y, double c, cplx s) {
  const __m256d cv = _mm256_set1_pd(c);
  const __m256d sv = _mm256_setr_pd(s.real(), s.imag(), s.real(), s.imag());
  const __m256d scv =
      _mm256_setr_pd(-s.real(), s.imag(), -s.real(), s.imag());  // -conj(s)
  std::size_t i = 0;
  double* xd = reinterpret_cast<double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    __m256d nx = _mm256_fmadd_pd(cv, xv, cmul(sv, yv));
    __m256d ny = _mm256_fmadd_pd(cv, yv, cmul(scv, xv));
    _mm256_storeu_pd(xd + 2 * i, nx);
    _mm256_storeu_pd(yd + 2 * i, ny);
  }
  const cplx sc = std::conj(s);
  for (; i < n; ++i) {
    const cplx xi = x[i], yi = y[i];
    x[i] = c * xi + s * yi;
    y[i] = -sc * xi + c * yi;
  }
}

void v_zgemm(std::size_t m, std::size_t k, std::size_t n, cplx alpha,
             const cplx* A, std::size_t lda, const cplx* B, std::size_t ldb,
             cplx beta, cplx* C, std::size_t ldc) {
  for (std::size_t i = 0; i < m; ++i) {
    cplx* Ci = C + i * ldc;
    if (beta == cplx(0.0, 0.0)) {
      for (std::size_t j = 0; j < n; ++j) Ci[j] = 0.0;
    } else if (beta != cplx(1.0, 0.0)) {
      v_zscal(n, beta, Ci);
    }
    const cplx* Ai = A + i * lda;
    for (std::size_t p = 0; p < k; ++p) {
      const cplx a = alpha * Ai[p];
      if (a == cplx(0.0, 0.0)) continue;
      v_zaxpy(n, a, B + p * ldb, Ci);
    }
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t = {"avx2",    v_zscal,   v_zaxpy, v_zdotc,
                                v_zdotu,   v_znrm2sq, v_zrot,  v_zgemm};
  return t;
}

}  // namespace gbdm::simd

#endif  // x86_64
