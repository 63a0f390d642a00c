#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gbdm/complex_matrix.hpp"
#include "gbdm/fft.hpp"
#include "gbdm/svd.hpp"

using gbdm::CMatrix;
using gbdm::cplx;

namespace {

CMatrix random_matrix(std::size_t m, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
  return a;
}

}  // namespace

TEST_CASE("fft inverts and matches direct dft") {
  const std::size_t n = 64;
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  std::vector<cplx> x(n);
  for (auto& z : x) z = cplx(g(rng), g(rng));

  std::vector<cplx> ref(n, cplx(0.0));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      ref[k] += x[j] * std::polar(1.0, -2.0 * M_PI * double(j * k) / double(n));

  auto y = x;
  gbdm::fft_pow2(y, false);
  for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(y[k] - ref[k]) < 1e-10);

  gbdm::fft_pow2(y, true);
  for (auto& z : y) z /= double(n);
  for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(y[k] - x[k]) < 1e-12);
}

TEST_CASE("lu solve and inverse") {
  auto a = random_matrix(17, 17, 42);
  auto inv = gbdm::inverse(a);
  auto prod = a * inv;
  CHECK((prod - CMatrix::identity(17)).max_abs() < 1e-10);
}

TEST_CASE("logdet tracks argument") {
  CMatrix a(2, 2);
  a(0, 0) = cplx(0.0, 2.0);  // det = 2i * 3 = 6i
  a(1, 1) = cplx(3.0, 0.0);
  double la, arg;
  REQUIRE(gbdm::logdet(a, la, arg));
  CHECK(la == doctest::Approx(std::log(6.0)));
  CHECK(arg == doctest::Approx(M_PI / 2));
}

TEST_CASE("singular values: diagonal matrix exact") {
  CMatrix a(4, 4);
  a(0, 0) = 3.0;
  a(1, 1) = cplx(0.0, 2.0);
  a(2, 2) = 1e-8;
  a(3, 3) = 0.5;
  auto s = gbdm::singular_values(a);
  REQUIRE(s.size() == 4);
  CHECK(s[0] == doctest::Approx(3.0));
  CHECK(s[1] == doctest::Approx(2.0));
  CHECK(s[2] == doctest::Approx(0.5));
  CHECK(s[3] == doctest::Approx(1e-8).epsilon(1e-6));
  CHECK(gbdm::sigma_min(a) == doctest::Approx(1e-8).epsilon(1e-6));
  CHECK(gbdm::sigma_max(a) == doctest::Approx(3.0));
}

TEST_CASE("bidiag-sturm route agrees with jacobi route") {
  for (auto [m, n] : {std::pair<int, int>{12, 12}, {20, 9}, {9, 20}}) {
    auto a = random_matrix(m, n, 100 + m * n);
    auto s1 = gbdm::singular_values(a);
    auto s2 = gbdm::singular_values_jacobi(a);
    REQUIRE(s1.size() == s2.size());
    for (std::size_t i = 0; i < s1.size(); ++i)
      CHECK(std::abs(s1[i] - s2[i]) < 1e-10 * (1.0 + s1[0]));
  }
}

TEST_CASE("rank-deficient matrix has zero sigma_min on both routes") {
  auto a = random_matrix(10, 6, 3);
  CMatrix b(10, 7);  // last column = sum of two others
  for (std::size_t i = 0; i < 10; ++i) {
    for (std::size_t j = 0; j < 6; ++j) b(i, j) = a(i, j);
    b(i, 6) = a(i, 0) + a(i, 3);
  }
  CHECK(gbdm::sigma_min(b) < 1e-12);
  auto sj = gbdm::singular_values_jacobi(b);
  CHECK(sj.back() < 1e-7);
}

TEST_CASE("unitary-invariance of singular values") {
  auto a = random_matrix(8, 8, 7);
  // Householder-free unitary: diagonal phases + permutation
  CMatrix u(8, 8);
  for (std::size_t i = 0; i < 8; ++i)
    u((i + 3) % 8, i) = std::polar(1.0, 0.3 * double(i));
  auto s1 = gbdm::singular_values(a);
  auto s2 = gbdm::singular_values(u * a);
  for (std::size_t i = 0; i < 8; ++i)
    CHECK(s1[i] == doctest::Approx(s2[i]).epsilon(1e-10));
}

TEST_CASE("operator norm estimate matches sigma_max") {
  auto a = random_matrix(30, 30, 11);
  const double pn = gbdm::operator_norm_est(a);
  const double sm = gbdm::sigma_max(a);
  CHECK(pn == doctest::Approx(sm).epsilon(1e-6));
}

TEST_CASE("near_kernel_metrics identity and deficient diag") {
  auto m1 = gbdm::near_kernel_metrics(CMatrix::identity(12));
  CHECK(m1.sigma_min == doctest::Approx(1.0));
  CHECK(m1.sigma_max == doctest::Approx(1.0));

  CMatrix d = CMatrix::identity(5);
  d(4, 4) = 0.0;
  auto m2 = gbdm::near_kernel_metrics(d);
  CHECK(m2.sigma_min < 1e-14);
}

// Cross-decomposition check: the two independent routes agree to 1e-10 on a
// well-conditioned random matrix.
TEST_CASE("cross-decomposition agreement to 1e-10") {
  auto a = random_matrix(40, 40, 2024);
  auto s1 = gbdm::singular_values(a);
  auto s2 = gbdm::singular_values_jacobi(a);
  for (std::size_t i = 0; i < s1.size(); ++i)
    CHECK(std::abs(s1[i] - s2[i]) <= 1e-10 * s1[0]);
}

TEST_CASE("matpow with negative exponent") {
  auto a = random_matrix(6, 6, 77);
  auto p = gbdm::matpow(a, 2) * gbdm::matpow(a, -2);
  CHECK((p - CMatrix::identity(6)).max_abs() < 1e-8);
}
