#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gbdm/fiber.hpp"
#include "gbdm/svd.hpp"

using namespace gbdm;

namespace {

FiberVector gaussian(const FiberGrid& g, double width = 1.0,
                     double center = 0.0) {
  FiberVector u;
  u.values.resize(g.N);
  for (std::size_t j = 0; j < g.N; ++j) {
    const double t = (g.x(j) - center) / width;
    u.values[j] = std::exp(-t * t);
  }
  return u;
}

// operator-norm distance restricted to the L^2 block
double block_distance(const FiberGrid& g, const FiberOperator& a,
                      const FiberOperator& b) {
  CMatrix d = a.mat - b.mat;
  CMatrix l2(g.N, g.N);
  for (std::size_t i = 0; i < g.N; ++i)
    for (std::size_t j = 0; j < g.N; ++j) l2(i, j) = d(i, j);
  return operator_norm_est(l2, 400, 99, 1);
}

}  // namespace

TEST_CASE("fourier plan inverts") {
  FiberGrid g(64, 8.0);
  FourierPlan plan(g);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gs;
  std::vector<cplx> u(g.N);
  for (auto& z : u) z = cplx(gs(rng), gs(rng));
  auto v = plan.inv(plan.fwd(u));
  for (std::size_t j = 0; j < g.N; ++j) CHECK(std::abs(v[j] - u[j]) < 1e-12);

  // forward transform matches the direct sum
  auto w = plan.fwd(u);
  for (std::size_t k = 0; k < g.N; k += 17) {
    cplx ref = 0.0;
    for (std::size_t j = 0; j < g.N; ++j)
      ref += g.h() * u[j] * std::polar(1.0, -g.xi(k) * g.x(j));
    CHECK(std::abs(w[k] - ref) < 1e-10);
  }
}

TEST_CASE("projections are exact and complementary") {
  for (std::size_t N : {128u, 256u}) {
    FiberGrid g(N, 10.0);
    auto pp = project_pm(g, +1);
    auto pm = project_pm(g, -1);
    // exact projection identities on the L^2 block
    CMatrix p2 = pp.mat * pp.mat - pp.mat;
    CHECK(p2.max_abs() == 0.0);
    CMatrix prod = pp.mat * pm.mat;
    double off = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) off = std::max(off, std::abs(prod(i, j)));
    CHECK(off == 0.0);
    for (std::size_t i = 0; i < N; ++i)
      CHECK(std::abs(pp.mat(i, i) + pm.mat(i, i) - 1.0) == 0.0);
  }
}

TEST_CASE("projection splits a one-sided vector") {
  FiberGrid g(128, 8.0);
  FiberVector u;
  u.values.assign(g.N, 0.0);
  for (std::size_t j = 0; j < g.N; ++j)
    if (g.x(j) > 0.0 && g.x(j) <= 1.0) u.values[j] = 1.0;
  auto up = project_pm(g, +1).apply(g, u);
  auto um = project_pm(g, -1).apply(g, u);
  for (std::size_t j = 0; j < g.N; ++j) {
    CHECK(up.values[j] == u.values[j]);
    CHECK(um.values[j] == cplx(0.0));
  }
  // even vector splits its norm in half
  auto ev = gaussian(g);
  auto evp = project_pm(g, +1).apply(g, ev);
  CHECK(evp.norm(g) * evp.norm(g) ==
        doctest::Approx(0.5 * ev.norm(g) * ev.norm(g)).epsilon(1e-10));
}

TEST_CASE("one-sided traces") {
  FiberGrid g(256, 8.0);
  FiberVector u;
  u.values.assign(g.N, 0.0);
  for (std::size_t j = 0; j < g.N; ++j)
    if (g.x(j) > 0.0 && g.x(j) <= 1.0) u.values[j] = 1.0;
  CHECK(std::abs(trace_pm(g, u, +1) - 1.0) < 1e-12);
  CHECK(std::abs(trace_pm(g, u, -1)) < 1e-12);

  auto even = gaussian(g, 2.0);
  CHECK(std::abs(trace_pm(g, even, +1) - 1.0) < 1e-8);
  CHECK(std::abs(trace_pm(g, even, -1) - 1.0) < 1e-8);

  FiberVector ramp;
  ramp.values.assign(g.N, 0.0);
  for (std::size_t j = 0; j < g.N; ++j)
    if (g.x(j) > 0.0) ramp.values[j] = g.x(j);
  CHECK(std::abs(trace_pm(g, ramp, +1)) < 1e-12);
}

TEST_CASE("kappa: identity, indicator formula, group law") {
  FiberGrid g(256, 16.0);
  auto k1 = kappa(g, 1.0);
  CHECK((k1.mat - CMatrix::identity(g.N + 1)).max_abs() < 1e-12);

  // kappa_2 indicator[0,1] = sqrt(2) indicator[0,1/2] at interior nodes
  FiberVector u;
  u.values.assign(g.N, 0.0);
  for (std::size_t j = 0; j < g.N; ++j)
    if (g.x(j) > 0.0 && g.x(j) <= 1.0) u.values[j] = 1.0;
  auto v = kappa(g, 2.0).apply(g, u);
  for (std::size_t j = 0; j < g.N; ++j) {
    const double x = g.x(j);
    if (std::abs(x) < 0.45 && x > 0.01) {
      CHECK(std::abs(v.values[j] - std::sqrt(2.0)) < 0.2);  // Gibbs at edges
    }
  }

  // group law and unitarity on a band-limited vector
  auto gsv = gaussian(g);
  for (double lam : {2.0, 0.5, 3.0}) {
    auto prod = kappa(g, lam).mat * kappa(g, 1.0 / lam).mat;
    std::vector<cplx> in(gsv.values);
    in.push_back(0.0);
    auto out = prod.apply(in);
    double err = 0.0;
    for (std::size_t j = 0; j < g.N; ++j)
      err = std::max(err, std::abs(out[j] - gsv.values[j]));
    CHECK(err < 1e-6);

    FiberVector w = kappa(g, lam).apply(g, gsv);
    CHECK(w.norm(g) == doctest::Approx(gsv.norm(g)).epsilon(1e-6));
  }

  // kappa_l kappa_m = kappa_lm on band-limited vectors
  auto k6_direct = kappa(g, 6.0);
  auto k6_split = kappa(g, 2.0).mat * kappa(g, 3.0).mat;
  std::vector<cplx> in(gsv.values);
  in.push_back(0.0);
  auto o1 = k6_direct.mat.apply(in);
  auto o2 = k6_split.apply(in);
  double err = 0.0;
  for (std::size_t j = 0; j <= g.N; ++j)
    err = std::max(err, std::abs(o1[j] - o2[j]));
  CHECK(err < 1e-6);

  // cached-power mode agrees with direct mode
  auto kc = kappa_cached_power(g, 2.0, 2);
  auto kd = kappa(g, 4.0);
  auto oc = kc.mat.apply(in);
  auto od = kd.mat.apply(in);
  for (std::size_t j = 0; j <= g.N; ++j)
    CHECK(std::abs(oc[j] - od[j]) < 1e-6);
}

TEST_CASE("fourier multiplier: identity, involution, algebra, oracle") {
  FiberGrid g(512, 20.0);
  auto id = fourier_multiplier(g, [](double) { return cplx(1.0); });
  CHECK((id.mat - CMatrix::identity(g.N + 1)).max_abs() < 1e-12);

  // sign multiplier squares to the identity
  auto sgn = fourier_multiplier(
      g, [](double xi) { return cplx(xi >= 0.0 ? 1.0 : -1.0); });
  CHECK(((sgn.mat * sgn.mat) - CMatrix::identity(g.N + 1)).max_abs() < 1e-10);

  // algebra homomorphism is exact on the grid
  auto a = fourier_multiplier(
      g, [](double xi) { return xi / cplx(xi, 1.0); });
  auto b = fourier_multiplier(
      g, [](double xi) { return std::exp(cplx(0.0, 1.0) * std::atan(xi)); });
  auto ab = fourier_multiplier(g, [](double xi) {
    return xi / cplx(xi, 1.0) * std::exp(cplx(0.0, 1.0) * std::atan(xi));
  });
  CHECK(((a.mat * b.mat) - ab.mat).max_abs() < 1e-10);

  // quadrature oracle: op(a) on a Gaussian equals the inverse Fourier
  // integral of a(xi) * FT(gaussian), computed by direct summation
  auto u = gaussian(g);
  auto au = a.apply(g, u);
  for (std::size_t j = 0; j < g.N; j += 37) {
    cplx ref = 0.0;
    // hat(exp(-x^2)) = sqrt(pi) exp(-xi^2/4)
    const double dxi = g.dxi();
    for (std::size_t k = 0; k < g.N; ++k) {
      const double xi = g.xi(k);
      const cplx sym = xi / cplx(xi, 1.0);
      ref += dxi / (2.0 * M_PI) * sym * std::sqrt(M_PI) *
             std::exp(-xi * xi / 4.0) * std::polar(1.0, xi * g.x(j));
    }
    CHECK(std::abs(au.values[j] - ref) < 1e-6);
  }
}

// Seam-excluded comparison: the periodic grid models the line only away
// from x = +-L, so operator distances are measured on |x| <= L/2.
static double windowed_distance(const FiberGrid& g, const FiberOperator& a,
                                const FiberOperator& b) {
  CMatrix d(g.N, g.N);
  for (std::size_t i = 0; i < g.N; ++i)
    for (std::size_t j = 0; j < g.N; ++j) d(i, j) = a.mat(i, j) - b.mat(i, j);
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < g.N; ++j)
    if (std::abs(g.x(j)) <= g.L / 2) idx.push_back(j);
  CMatrix win = d.select(idx, idx);
  return operator_norm_est(win, 400, 99, 2);
}

TEST_CASE("multiplication decomposition: trivial and convergence") {
  FiberGrid g(256, 20.0);
  auto one = multiplication_decomposition(g, [](double) { return cplx(1.0); });
  // Green kernels of a constant vanish; identity on the L^2 block
  CMatrix diff = one.mat - CMatrix::identity(g.N + 1);
  diff(g.N, g.N) = 0.0;  // decomposition has no scalar part
  CHECK(diff.max_abs() < 1e-10);

  // Residuals against the grid multiplier, seam excluded. Monotone decrease
  // plus frozen calibrated bounds (the first-order rate is set by the Gibbs
  // spill of the multiplier's one-sided kernel across the cut).
  auto rational = [](double xi) { return cplx(xi, -1.0) / cplx(xi, 1.0); };
  double prev = 1e9;
  const double bound[3] = {0.15, 0.08, 0.05};
  int step = 0;
  for (std::size_t N : {128u, 256u, 512u}) {
    FiberGrid gn(N, 20.0);
    auto dec = multiplication_decomposition(gn, rational);
    auto mul = fourier_multiplier(gn, rational);
    const double resid = windowed_distance(gn, dec, mul);
    CHECK(resid < prev);
    CHECK(resid <= bound[step++]);
    prev = resid;
  }

  // real even symbol gives a self-adjoint decomposition up to the
  // side-split discretization level
  auto realsym = [](double xi) { return cplx(1.0 / (1.0 + xi * xi)); };
  auto dec = multiplication_decomposition(g, realsym);
  CHECK((dec.mat - dec.mat.adjoint()).max_abs() < 1e-5);
}

TEST_CASE("hardy split: exactness and kernels") {
  FiberGrid g(256, 20.0);
  // a - 1 is a pure reference pole: the split must be exact
  auto rational = [](double xi) { return cplx(xi, -1.0) / cplx(xi, 1.0); };
  auto s = hardy_split(g, rational);
  CHECK(std::abs(s.at_infinity - cplx(1.0)) < 1e-6);
  for (std::size_t k = 0; k < g.N; ++k) {
    const cplx exact = cplx(0.0, -2.0) / cplx(g.xi(k), 1.0);
    CHECK(std::abs(s.minus[k] - exact) < 1e-9);
    CHECK(std::abs(s.plus[k]) < 1e-9);
  }
  // difference-quotient kernel of the minus part matches the closed form
  // 2/((xi+i)(eta+i)) including the derivative-filled diagonal
  auto K = difference_quotient_kernel(g, s.minus);
  for (std::size_t j = 0; j < g.N; j += 41)
    for (std::size_t k = 0; k < g.N; k += 37) {
      const cplx exact = 2.0 / (cplx(g.xi(j), 1.0) * cplx(g.xi(k), 1.0));
      const double tol = (j == k) ? 1e-2 : 1e-9;  // diagonal via differences
      CHECK(std::abs(K(j, k) - exact) < tol * (1.0 + std::abs(exact)));
    }
}

TEST_CASE("symbol limit at infinity") {
  CHECK(std::abs(symbol_limit_at_infinity([](double xi) {
          return cplx(xi, -1.0) / cplx(xi, 1.0);
        }) - cplx(1.0)) < 1e-6);
  CHECK_THROWS_AS(symbol_limit_at_infinity([](double xi) {
                    return cplx(xi >= 0 ? 1.0 : -1.0);
                  }),
                  FiberError);
}

TEST_CASE("assemble boundary symbol: degenerate blocks") {
  FiberGrid g(64, 8.0);
  BoundaryComponents comp;
  comp.d = 1.0;
  auto onlyd = assemble_boundary_symbol(g, comp);
  CMatrix expect(g.N + 1, g.N + 1);
  expect(g.N, g.N) = 1.0;
  CHECK((onlyd.mat - expect).max_abs() == 0.0);

  BoundaryComponents comp2;
  comp2.a_plus = [](double) { return cplx(1.0); };
  comp2.a_minus = [](double) { return cplx(1.0); };
  auto idl2 = assemble_boundary_symbol(g, comp2);
  CMatrix expect2 = CMatrix::identity(g.N + 1);
  expect2(g.N, g.N) = 0.0;
  CHECK((idl2.mat - expect2).max_abs() < 1e-10);
}

TEST_CASE("boundary symbol with green terms equals plain multiplier") {
  // rational symbol with equal limits; Green terms regenerate the
  // off-side couplings
  FiberGrid g(512, 20.0);
  auto rational = [](double xi) { return cplx(xi, -1.0) / cplx(xi, 1.0); };
  auto dec = multiplication_decomposition(g, rational);
  auto mul = fourier_multiplier(g, rational);
  CHECK(block_distance(g, dec, mul) <= 1e-5);
}

TEST_CASE("transmission property check") {
  // even rational of degree 0: passes
  HomogeneousComponent even0{
      0, [](double, double, double xp, double xin) {
        return cplx(xin * xin / (xp * xp + xin * xin));
      }};
  auto rep = transmission_check({even0}, 2);
  CHECK(rep.pass);

  // |xi| as a degree-1 component: parity fails at k = alpha = 0
  HomogeneousComponent abs1{
      1, [](double, double, double xp, double xin) {
        return cplx(std::sqrt(xp * xp + xin * xin));
      }};
  auto rep2 = transmission_check({abs1}, 1);
  CHECK_FALSE(rep2.pass);
  CHECK(rep2.worst_violation > 1.0);

  // degree-0 part of xi_n/(|xi'| + i xi_n) at xi' = 0 is the constant -i
  HomogeneousComponent c3{
      0, [](double, double, double xp, double xin) {
        return xin / cplx(std::abs(xp) * 0.0, xin);  // = -i at xp = 0
      }};
  auto rep3 = transmission_check({c3}, 2);
  CHECK(rep3.pass);
}
