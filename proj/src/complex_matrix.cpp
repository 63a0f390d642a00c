#include "gbdm/complex_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace gbdm {

using simd::active;

CMatrix CMatrix::adjoint() const {
  CMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      r(j, i) = std::conj((*this)(i, j));
  return r;
}

CMatrix CMatrix::transpose() const {
  CMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

CMatrix CMatrix::conj() const {
  CMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = std::conj(a_[i]);
  return r;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  active().zaxpy(a_.size(), cplx(1.0), o.a_.data(), a_.data());
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  active().zaxpy(a_.size(), cplx(-1.0), o.a_.data(), a_.data());
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  active().zscal(a_.size(), s, a_.data());
  return *this;
}

CMatrix CMatrix::matmul(const CMatrix& a, const CMatrix& b) {
  assert(a.cols_ == b.rows_);
  CMatrix c(a.rows_, b.cols_);
  if (c.empty() || a.cols_ == 0) return c;
  active().zgemm(a.rows_, a.cols_, b.cols_, cplx(1.0), a.data(), a.cols_,
                 b.data(), b.cols_, cplx(0.0), c.data(), c.cols_);
  return c;
}

std::vector<cplx> CMatrix::apply(const std::vector<cplx>& x) const {
  assert(x.size() == cols_);
  std::vector<cplx> y(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    y[i] = active().zdotu(cols_, row(i), x.data());
  return y;
}

std::vector<cplx> CMatrix::apply_adjoint(const std::vector<cplx>& x) const {
  assert(x.size() == rows_);
  // (A^H x)_j = conj(sum_i conj(x_i) A[i,j])
  std::vector<cplx> y(cols_, cplx(0.0));
  for (std::size_t i = 0; i < rows_; ++i)
    active().zaxpy(cols_, std::conj(x[i]), row(i), y.data());
  for (auto& v : y) v = std::conj(v);
  return y;
}

double CMatrix::norm_fro() const {
  return std::sqrt(active().znrm2sq(a_.size(), a_.data()));
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : a_) m = std::max(m, std::abs(v));
  return m;
}

CMatrix CMatrix::select(const std::vector<std::size_t>& row_idx,
                        const std::vector<std::size_t>& col_idx) const {
  CMatrix r(row_idx.size(), col_idx.size());
  for (std::size_t i = 0; i < row_idx.size(); ++i)
    for (std::size_t j = 0; j < col_idx.size(); ++j)
      r(i, j) = (*this)(row_idx[i], col_idx[j]);
  return r;
}

void CMatrix::set_block(std::size_t r0, std::size_t c0, const CMatrix& block) {
  assert(r0 + block.rows() <= rows_ && c0 + block.cols() <= cols_);
  for (std::size_t i = 0; i < block.rows(); ++i)
    for (std::size_t j = 0; j < block.cols(); ++j)
      (*this)(r0 + i, c0 + j) = block(i, j);
}

CMatrix matpow(const CMatrix& a, int k) {
  assert(a.rows() == a.cols());
  if (k == 0) return CMatrix::identity(a.rows());
  CMatrix base = k > 0 ? a : inverse(a);
  int e = k > 0 ? k : -k;
  CMatrix acc = base;
  for (int i = 1; i < e; ++i) acc = CMatrix::matmul(acc, base);
  return acc;
}

bool lu_factor(CMatrix& lu, std::vector<std::size_t>& piv) {
  const std::size_t n = lu.rows();
  assert(lu.cols() == n);
  piv.resize(n);
  for (std::size_t i = 0; i < n; ++i) piv[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      double v = std::abs(lu(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best == 0.0) return false;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
      std::swap(piv[k], piv[p]);
    }
    const cplx pivot = lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx m = lu(i, k) / pivot;
      lu(i, k) = m;
      if (m != cplx(0.0))
        simd::active().zaxpy(n - k - 1, -m, lu.row(k) + k + 1,
                             lu.row(i) + k + 1);
    }
  }
  return true;
}

std::vector<cplx> lu_solve(const CMatrix& lu,
                           const std::vector<std::size_t>& piv,
                           std::vector<cplx> b) {
  const std::size_t n = lu.rows();
  std::vector<cplx> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[piv[i]];
  for (std::size_t i = 0; i < n; ++i)
    x[i] -= simd::active().zdotu(i, lu.row(i), x.data());
  for (std::size_t ii = n; ii-- > 0;) {
    x[ii] -= simd::active().zdotu(n - ii - 1, lu.row(ii) + ii + 1,
                                  x.data() + ii + 1);
    x[ii] /= lu(ii, ii);
  }
  return x;
}

CMatrix inverse(const CMatrix& a) {
  const std::size_t n = a.rows();
  CMatrix lu = a;
  std::vector<std::size_t> piv;
  if (!lu_factor(lu, piv)) throw std::runtime_error("singular matrix");
  CMatrix inv(n, n);
  std::vector<cplx> e(n, cplx(0.0));
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), cplx(0.0));
    e[j] = 1.0;
    auto col = lu_solve(lu, piv, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

bool logdet(const CMatrix& a, double& log_abs, double& arg) {
  CMatrix lu = a;
  std::vector<std::size_t> piv;
  if (!lu_factor(lu, piv)) return false;
  // permutation sign
  std::size_t n = lu.rows();
  std::vector<std::size_t> p = piv;
  int sign = 1;
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::size_t len = 0, j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = p[j];
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  log_abs = 0.0;
  arg = sign > 0 ? 0.0 : std::acos(-1.0);
  for (std::size_t i = 0; i < n; ++i) {
    log_abs += std::log(std::abs(lu(i, i)));
    arg += std::arg(lu(i, i));
  }
  arg = std::remainder(arg, 2.0 * std::acos(-1.0));
  return true;
}

}  // namespace gbdm
