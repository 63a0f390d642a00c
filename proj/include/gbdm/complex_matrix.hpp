#ifndef GBDM_COMPLEX_MATRIX_HPP
#define GBDM_COMPLEX_MATRIX_HPP

#include <cassert>
#include <complex>
#include <cstddef>
#include <vector>

#include "gbdm/kernels.hpp"

namespace gbdm {

using cplx = std::complex<double>;

// Dense row-major complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, cplx(0.0)) {}

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }
  cplx* row(std::size_t i) { return a_.data() + i * cols_; }
  const cplx* row(std::size_t i) const { return a_.data() + i * cols_; }
  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  CMatrix conj() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    return matmul(a, b);
  }

  static CMatrix matmul(const CMatrix& a, const CMatrix& b);

  std::vector<cplx> apply(const std::vector<cplx>& x) const;         // A x
  std::vector<cplx> apply_adjoint(const std::vector<cplx>& x) const;  // A^H x

  double norm_fro() const;
  double max_abs() const;

  // Rows/columns restricted to index subsets (projection compressions).
  CMatrix select(const std::vector<std::size_t>& row_idx,
                 const std::vector<std::size_t>& col_idx) const;

  // Writes `block` at offset (r0, c0).
  void set_block(std::size_t r0, std::size_t c0, const CMatrix& block);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> a_;
};

CMatrix matpow(const CMatrix& a, int k);  // k may be negative (uses inverse)

// In-place LU with partial pivoting; returns false if numerically singular.
// `lu` holds factors, `piv` the row permutation.
bool lu_factor(CMatrix& lu, std::vector<std::size_t>& piv);
std::vector<cplx> lu_solve(const CMatrix& lu,
                           const std::vector<std::size_t>& piv,
                           std::vector<cplx> b);
CMatrix inverse(const CMatrix& a);  // throws std::runtime_error if singular

// log|det| and arg(det) from an LU factorization done internally.
// Returns false when a zero pivot makes det = 0.
bool logdet(const CMatrix& a, double& log_abs, double& arg);

}  // namespace gbdm

#endif
