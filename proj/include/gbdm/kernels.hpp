#ifndef GBDM_KERNELS_HPP
#define GBDM_KERNELS_HPP

#include <complex>
#include <cstddef>
#include <string>

namespace gbdm::simd {

using cplx = std::complex<double>;

// Low-level arithmetic kernels used by the dense linear algebra layer.
// Each entry has a scalar reference implementation and may have SIMD
// variants; the active table is chosen once at startup (see active()).
struct KernelTable {
  const char* name;

  // x *= alpha
  void (*zscal)(std::size_t n, cplx alpha, cplx* x);
  // y += alpha * x
  void (*zaxpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
  // sum conj(x_i) * y_i
  cplx (*zdotc)(std::size_t n, const cplx* x, const cplx* y);
  // sum x_i * y_i
  cplx (*zdotu)(std::size_t n, const cplx* x, const cplx* y);
  // sum |x_i|^2
  double (*znrm2sq)(std::size_t n, const cplx* x);
  // plane rotation: [x; y] <- [c*x + s*y; -conj(s)*x + c*y], c real
  void (*zrot)(std::size_t n, cplx* x, cplx* y, double c, cplx s);
  // row-major C(m x n) = alpha * A(m x k) * B(k x n) + beta * C
  void (*zgemm)(std::size_t m, std::size_t k, std::size_t n, cplx alpha,
                const cplx* A, std::size_t lda, const cplx* B, std::size_t ldb,
                cplx beta, cplx* C, std::size_t ldc);
};

const KernelTable& scalar_table();
#if defined(__x86_64__) || defined(_M_X64)
const KernelTable& avx2_table();
#endif

// Active table. Picks AVX2 when the CPU supports it unless the
// GBDM_SIMD environment variable ("scalar" | "avx2") overrides.
const KernelTable& active();

// Force a backend by name ("scalar", "avx2"); returns false if unknown
// or unsupported on this CPU. Intended for tests.
bool set_backend(const std::string& name);

}  // namespace gbdm::simd

#endif
