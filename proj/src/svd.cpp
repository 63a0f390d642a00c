#include "gbdm/svd.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace gbdm {

using simd::active;

void bidiagonalize(CMatrix a, std::vector<double>& d, std::vector<double>& e) {
  if (a.rows() < a.cols()) a = a.adjoint();
  const std::size_t m = a.rows(), n = a.cols();
  d.assign(n, 0.0);
  e.assign(n > 0 ? n - 1 : 0, 0.0);
  if (n == 0) return;

  std::vector<cplx> v(m), u(n), w(n), wc(n);
  for (std::size_t k = 0; k < n; ++k) {
    // left reflector: zero a(k+1..m-1, k)
    {
      const std::size_t p = m - k;
      double nrm2 = 0.0;
      for (std::size_t i = 0; i < p; ++i) {
        v[i] = a(k + i, k);
        nrm2 += std::norm(v[i]);
      }
      const double nu = std::sqrt(nrm2);
      if (nu > 0.0) {
        const cplx x0 = v[0];
        const cplx phase = (x0 == cplx(0.0)) ? cplx(1.0) : x0 / std::abs(x0);
        const cplx beta = -phase * nu;
        v[0] = x0 - beta;
        const double vn2 = 2.0 * nu * (nu + std::abs(x0));
        const double tau = 2.0 / vn2;
        d[k] = std::abs(beta);
        // u = v^H * a(k.., k+1..), then rows -= tau * v_i * u
        const std::size_t nc = n - k - 1;
        if (nc > 0) {
          std::fill(u.begin(), u.begin() + nc, cplx(0.0));
          for (std::size_t i = 0; i < p; ++i)
            active().zaxpy(nc, std::conj(v[i]), a.row(k + i) + k + 1,
                           u.data());
          for (std::size_t i = 0; i < p; ++i)
            active().zaxpy(nc, -tau * v[i], u.data(), a.row(k + i) + k + 1);
        }
      } else {
        d[k] = 0.0;
      }
    }
    // right reflector: zero a(k, k+2..n-1)
    if (k + 1 < n) {
      const std::size_t q = n - k - 1;
      if (q == 1) {
        e[k] = std::abs(a(k, k + 1));
        continue;
      }
      double nrm2 = 0.0;
      for (std::size_t j = 0; j < q; ++j) {
        w[j] = std::conj(a(k, k + 1 + j));
        nrm2 += std::norm(w[j]);
      }
      const double nu = std::sqrt(nrm2);
      if (nu == 0.0) {
        e[k] = 0.0;
        continue;
      }
      const cplx x0 = w[0];
      const cplx phase = (x0 == cplx(0.0)) ? cplx(1.0) : x0 / std::abs(x0);
      const cplx beta = -phase * nu;
      w[0] = x0 - beta;
      const double vn2 = 2.0 * nu * (nu + std::abs(x0));
      const double tau = 2.0 / vn2;
      e[k] = std::abs(beta);
      for (std::size_t j = 0; j < q; ++j) wc[j] = std::conj(w[j]);
      for (std::size_t i = k + 1; i < m; ++i) {
        cplx* row = a.row(i) + k + 1;
        const cplx t = active().zdotu(q, row, w.data());
        if (t != cplx(0.0)) active().zaxpy(q, -tau * t, wc.data(), row);
      }
      // row k itself becomes (conj(beta), 0, ..., 0); not stored further
    }
  }
}

std::size_t bidiag_count_below(const std::vector<double>& d,
                               const std::vector<double>& e, double x) {
  const std::size_t n = d.size();
  if (n == 0 || x <= 0.0) return 0;
  // Golub-Kahan tridiagonal: diag 0, offdiag (d0, e0, d1, e1, ..., d_{n-1})
  const std::size_t nn = 2 * n;
  std::size_t neg = 0;
  double q = -x;
  if (q < 0.0) ++neg;
  for (std::size_t i = 1; i < nn; ++i) {
    const double o = (i % 2 == 1) ? d[i / 2] : e[i / 2 - 1];
    double qq = q;
    if (qq == 0.0) qq = -1e-300;
    q = -x - (o * o) / qq;
    if (q < 0.0) ++neg;
  }
  return neg >= n ? neg - n : 0;
}

double bidiag_kth_smallest(const std::vector<double>& d,
                           const std::vector<double>& e, std::size_t k) {
  const std::size_t n = d.size();
  if (n == 0) return 0.0;
  double hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = d[i];
    if (i > 0) s += e[i - 1];
    if (i + 1 < n) s += e[i];
    hi = std::max(hi, s);
  }
  hi = hi * (1.0 + 1e-14) + 1e-300;
  double lo = 0.0;
  for (int it = 0; it < 120 && hi - lo > 1e-16 * hi + 1e-300; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (bidiag_count_below(d, e, mid) >= k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> singular_values(const CMatrix& a) {
  if (a.empty()) return {};
  std::vector<double> d, e;
  bidiagonalize(a, d, e);
  const std::size_t n = d.size();
  std::vector<double> s(n);
  for (std::size_t k = 1; k <= n; ++k) s[n - k] = bidiag_kth_smallest(d, e, k);
  return s;
}

double sigma_min(const CMatrix& a) {
  if (a.empty()) return 0.0;
  std::vector<double> d, e;
  bidiagonalize(a, d, e);
  return bidiag_kth_smallest(d, e, 1);
}

double sigma_max(const CMatrix& a) {
  if (a.empty()) return 0.0;
  std::vector<double> d, e;
  bidiagonalize(a, d, e);
  return bidiag_kth_smallest(d, e, d.size());
}

std::vector<double> singular_values_jacobi(CMatrix a) {
  if (a.empty()) return {};
  if (a.rows() < a.cols()) a = a.adjoint();
  CMatrix b = a.transpose();  // rows of b are columns of a
  const std::size_t n = b.rows(), len = b.cols();
  bool converged = false;
  for (int sweep = 0; sweep < 60 && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = active().znrm2sq(len, b.row(p));
        const double beta = active().znrm2sq(len, b.row(q));
        const cplx c = active().zdotc(len, b.row(p), b.row(q));
        const double ac = std::abs(c);
        if (ac <= 1e-15 * std::sqrt(alpha * beta) || ac == 0.0) continue;
        converged = false;
        const cplx eiphi = c / ac;
        const double tau = (beta - alpha) / (2.0 * ac);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double cs = 1.0 / std::hypot(1.0, t);
        const double sn = t * cs;
        // columns [A_p, A_q] <- [A_p, A_q] * V, V from the phase-adjusted
        // 2x2 real Jacobi rotation
        active().zrot(len, b.row(p), b.row(q), cs, -sn * std::conj(eiphi));
      }
    }
  }
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i)
    s[i] = std::sqrt(active().znrm2sq(len, b.row(i)));
  std::sort(s.begin(), s.end(), std::greater<double>());
  return s;
}

double operator_norm_est(const CMatrix& a, int max_iter, std::uint64_t seed,
                         int restarts) {
  if (a.empty()) return 0.0;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double best = 0.0;
  for (int r = 0; r <= restarts; ++r) {
    std::vector<cplx> v(a.cols());
    for (auto& z : v) z = cplx(gauss(rng), gauss(rng));
    double nv = std::sqrt(active().znrm2sq(v.size(), v.data()));
    for (auto& z : v) z /= nv;
    double est = 0.0, prev = -1.0;
    for (int it = 0; it < max_iter; ++it) {
      auto w = a.apply(v);
      est = std::sqrt(active().znrm2sq(w.size(), w.data()));
      if (est == 0.0) break;
      auto u = a.apply_adjoint(w);
      const double nu = std::sqrt(active().znrm2sq(u.size(), u.data()));
      if (nu == 0.0) break;
      for (std::size_t i = 0; i < u.size(); ++i) v[i] = u[i] / nu;
      if (prev >= 0.0 && std::abs(est - prev) <= 1e-10 * est) break;
      prev = est;
    }
    best = std::max(best, est);
  }
  return best;
}

NearKernelMetrics near_kernel_metrics(const CMatrix& a) {
  NearKernelMetrics m;
  if (a.empty()) return m;
  std::vector<double> d, e;
  bidiagonalize(a, d, e);
  m.sigma_min = bidiag_kth_smallest(d, e, 1);
  m.sigma_max = bidiag_kth_smallest(d, e, d.size());
  m.sigma_min_normalized = m.sigma_max > 0.0 ? m.sigma_min / m.sigma_max : 0.0;
  m.count_below_10x = bidiag_count_below(d, e, 10.0 * m.sigma_min);
  return m;
}

}  // namespace gbdm
