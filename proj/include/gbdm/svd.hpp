#ifndef GBDM_SVD_HPP
#define GBDM_SVD_HPP

#include <cstdint>
#include <vector>

#include "gbdm/complex_matrix.hpp"

namespace gbdm {

// Reduces A to a real nonnegative bidiagonal (d, e) with the same singular
// values, by complex Householder reflections from both sides.
void bidiagonalize(CMatrix a, std::vector<double>& d, std::vector<double>& e);

// Number of singular values of the bidiagonal (d, e) strictly below x,
// via a Sturm count on the Golub-Kahan tridiagonal.
std::size_t bidiag_count_below(const std::vector<double>& d,
                               const std::vector<double>& e, double x);

// k-th smallest singular value of the bidiagonal, k in [1, n], by bisection.
double bidiag_kth_smallest(const std::vector<double>& d,
                           const std::vector<double>& e, std::size_t k);

// All singular values, descending. Production route:
// bidiagonalization + Sturm bisection.
std::vector<double> singular_values(const CMatrix& a);

double sigma_min(const CMatrix& a);
double sigma_max(const CMatrix& a);

// Independent route for cross-checks: one-sided Jacobi on columns.
// Intended for moderate sizes.
std::vector<double> singular_values_jacobi(CMatrix a);

// Largest singular value by power iteration on A^H A (seeded, restarted).
double operator_norm_est(const CMatrix& a, int max_iter = 300,
                         std::uint64_t seed = 12345, int restarts = 2);

struct NearKernelMetrics {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double sigma_min_normalized = 0.0;     // sigma_min / sigma_max
  std::size_t count_below_10x = 0;       // singular values < 10 * sigma_min
  const char* method = "bidiag-sturm";
};

NearKernelMetrics near_kernel_metrics(const CMatrix& a);

}  // namespace gbdm

#endif
