#ifndef GBDM_FIBER_HPP
#define GBDM_FIBER_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbdm/complex_matrix.hpp"

namespace gbdm {

struct FiberError : std::runtime_error {
  explicit FiberError(const std::string& w) : std::runtime_error(w) {}
};

// Uniform grid on [-L, L] with no node at 0, plus the dual frequency grid.
// Fiber vectors are stored as x-samples, so the side projections act as
// exact coordinate masks.
struct FiberGrid {
  std::size_t N = 256;
  double L = 16.0;
  int trace_order = 3;

  FiberGrid() = default;
  FiberGrid(std::size_t n, double l, int order = 3);

  double h() const { return 2.0 * L / static_cast<double>(N); }
  double dxi() const { return M_PI / L; }
  double x(std::size_t j) const {
    return (static_cast<double>(j) + 0.5 - static_cast<double>(N) / 2) * h();
  }
  double xi(std::size_t k) const {
    return (static_cast<double>(k) - static_cast<double>(N) / 2) * dxi();
  }
  bool operator==(const FiberGrid& o) const {
    return N == o.N && L == o.L && trace_order == o.trace_order;
  }
};

// Element of the discretized L^2(R) (+) C.
struct FiberVector {
  std::vector<cplx> values;
  cplx scalar = 0.0;

  double norm(const FiberGrid& g) const;
};

// Dense operator on the fiber, (N+1) x (N+1) acting on (values, scalar).
struct FiberOperator {
  CMatrix mat;
  std::vector<std::string> tags;

  FiberVector apply(const FiberGrid& g, const FiberVector& u) const;
};

// Offset-aware discrete Fourier pair for the grid:
//   fwd: u_hat(xi_k) = h * sum_j u_j exp(-i xi_k x_j)
//   inv: u_j = 1/(N h) * sum_k u_hat_k exp(+i xi_k x_j)
class FourierPlan {
 public:
  explicit FourierPlan(const FiberGrid& g);

  std::vector<cplx> fwd(std::vector<cplx> u) const;
  std::vector<cplx> inv(std::vector<cplx> u) const;

  // M[i,k] = 1/(N h) exp(+i xi_k x_i): the inverse-transform matrix entry.
  cplx inv_entry(std::size_t i, std::size_t k) const;

  const FiberGrid& grid() const { return g_; }

 private:
  FiberGrid g_;
  std::vector<cplx> post_;  // forward post-twiddle
};

// One-sided extrapolation weights towards 0 from the given side;
// returns (node index, weight) pairs.
std::vector<std::pair<std::size_t, double>> trace_stencil(const FiberGrid& g,
                                                          int sign);

cplx trace_pm(const FiberGrid& g, const FiberVector& u, int sign);

FiberOperator project_pm(const FiberGrid& g, int sign);

// Scaling kappa_lambda u = sqrt(lambda) u(lambda x) by band-limited (sinc)
// resampling. mode: "direct" builds the matrix for each lambda; "cached"
// builds kappa_q once and takes integer powers of it (lambda must then be
// an integer power of q).
FiberOperator kappa(const FiberGrid& g, double lambda);
FiberOperator kappa_cached_power(const FiberGrid& g, double q, int k);

// Fraction of [-L, L] whose preimage under x -> lambda x falls outside the
// grid; the resampler truncates that mass.
double kappa_truncation_fraction(double lambda);

using ScalarSymbolFn = std::function<cplx(double)>;          // xi -> C
using KernelFn = std::function<cplx(double, double)>;        // (xi, eta) -> C

FiberOperator fourier_multiplier(const FiberGrid& g, const ScalarSymbolFn& a);

// Green block Pi^{sign}_{0,eta} kern(xi, eta) Pi^{sign} in the stored
// x-representation.
CMatrix green_block(const FiberGrid& g, const KernelFn& kern, int sign);

struct BoundaryComponents {
  ScalarSymbolFn a_plus, a_minus;   // interior multipliers
  KernelFn g_plus, g_minus;         // Green kernels
  ScalarSymbolFn b_plus, b_minus;   // boundary row densities
  ScalarSymbolFn c;                 // coboundary column density
  cplx d = 0.0;                     // boundary scalar part
};

FiberOperator assemble_boundary_symbol(const FiberGrid& g,
                                       const BoundaryComponents& comp);

// Side split of a bounded symbol with a common limit at +-infinity:
// a = at_infinity + minus + plus, the parts carried by the lower/upper
// half-plane. Slowly decaying tails are matched against reference poles
// in closed form; the remainder is split by the grid projection.
struct HardySplit {
  cplx at_infinity = 0.0;
  std::vector<cplx> minus, plus;  // samples on the dual grid
};

HardySplit hardy_split(const FiberGrid& g, const ScalarSymbolFn& a);

// (side(xi_j) - side(xi_k)) / (i (xi_j - xi_k)) with the removable
// diagonal filled by -i * derivative.
CMatrix difference_quotient_kernel(const FiberGrid& g,
                                   const std::vector<cplx>& side);

// Pi+ a Pi+ + Pi- a Pi- + Green corrections with difference-quotient
// kernels; equals the full multiplier up to discretization.
FiberOperator multiplication_decomposition(const FiberGrid& g,
                                           const ScalarSymbolFn& a);

// Limits of a at +-infinity; throws FiberError when they disagree.
cplx symbol_limit_at_infinity(const ScalarSymbolFn& a);

// One homogeneous component of a classical symbol: degree and an evaluator
// a_l(x', x_n, xi', xi_n).
struct HomogeneousComponent {
  int degree = 0;
  std::function<cplx(double, double, double, double)> eval;
};

struct TransmissionReport {
  bool pass = true;
  double worst_violation = 0.0;
  std::string detail;
};

// Parity check on the homogeneous components at xi_n = +-1, mixed
// derivatives up to total order K by finite differences.
TransmissionReport transmission_check(
    const std::vector<HomogeneousComponent>& components, int K,
    double x_prime = 0.0, double fd_step = 1e-4, double tol = 1e-6);

}  // namespace gbdm

#endif
