#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "tau3corr/constants.hpp"
#include "tau3corr/errors.hpp"
#include "tau3corr/variance.hpp"

using namespace tau3corr;

TEST_CASE("progression sums") {
  CHECK(ap_sums(10, 1).sums == std::vector<std::int64_t>{53});
  CHECK(ap_sums(4, 2).sums == std::vector<std::int64_t>{4, 9});
  const auto t = sieve(DivisorKind::tau3, 5000);
  std::int64_t total = 0;
  for (std::int64_t n = 1; n <= 5000; ++n) total += t[n];
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto N = std::uniform_int_distribution<std::int64_t>(1, 5000)(rng);
    const auto ell = std::uniform_int_distribution<std::int64_t>(1, N)(rng);
    std::int64_t prefix = 0;
    for (std::int64_t n = 1; n <= N; ++n) prefix += t[n];
    std::int64_t s = 0;
    for (auto x : ap_sums(t, N, ell).sums) s += x;
    CHECK(s == prefix);
  }
  CHECK_THROWS(ap_sums(4, 5));
}

TEST_CASE("Q1 routes") {
  CHECK(q1(1, Q1Route::direct) == 1);
  CHECK(q1(1, Q1Route::identity) == 1);
  CHECK(q1(2, Q1Route::direct) == 26);
  CHECK(q1(2, Q1Route::identity) == 26);
  for (std::int64_t N : {3, 17, 64, 500, 2048}) CHECK(q1(N, Q1Route::direct) == q1(N, Q1Route::identity));
  // Brute force from the progression sums.
  const std::int64_t N = 40;
  std::int64_t brute = 0;
  for (std::int64_t ell = 1; ell <= N; ++ell) {
    for (auto s : ap_sums(N, ell).sums) brute += s * s;
  }
  CHECK(q1(N, Q1Route::direct) == brute);
  CHECK_THROWS_AS(q1(kQ1DirectMax + 1, Q1Route::direct), SizingError);
}

TEST_CASE("variance Q") {
  const auto r = variance_Q(256);
  CHECK(r.Q >= 0.0);
  REQUIRE(r.Q1_direct.has_value());
  CHECK(*r.Q1_direct == r.Q1_identity);
  CHECK(r.leading_ratio == doctest::Approx(r.Q / (256.0 * 256.0 * std::pow(std::log(256.0), 8))));
  // Brute force from the definition.
  const std::int64_t N = 64;
  double brute = 0.0;
  for (std::int64_t ell = 1; ell <= N; ++ell) {
    const auto s = ap_sums(N, ell).sums;
    for (std::int64_t b = 1; b <= ell; ++b) {
      const double d = s[b - 1] - N * emt_poly(ell, b)(std::log(static_cast<double>(N)));
      brute += d * d;
    }
  }
  CHECK(variance_Q(N).Q == doctest::Approx(brute).epsilon(1e-12));
  CHECK(variance_Q(300, {}, ExecPolicy{1}).Q == variance_Q(300, {}, ExecPolicy{5}).Q);
  CHECK_THROWS(variance_Q(8));
}

TEST_CASE("log polynomial fit") {
  // Exact degree-8 data is recovered.
  std::vector<double> c = {3.0, -2.0, 1.0, 0.5, -0.25, 0.1, 0.01, -0.002, 1.5e-4};
  const auto grid = geometric_grid(10, 15, 4);
  CHECK(grid.size() == 21);
  std::vector<double> Q;
  for (auto n : grid) {
    const double L = std::log(static_cast<double>(n));
    double v = 0.0;
    for (int j = 8; j >= 0; --j) v = v * L + c[j];
    Q.push_back(v * static_cast<double>(n) * static_cast<double>(n));
  }
  const auto f = fit_log_polynomial(grid, Q, 8);
  REQUIRE(f.full_rank);
  CHECK(f.coeffs[8] == doctest::Approx(c[8]).epsilon(1e-4));
  const std::vector<std::int64_t> few = {1024, 2048, 4096};
  const std::vector<double> fq = {1.0, 2.0, 3.0};
  CHECK_FALSE(fit_log_polynomial(few, fq, 8).full_rank);
}

TEST_CASE("EMT square sums") {
  const auto rep = emt_tail_bounds(1000);
  REQUIRE(!rep.rows.empty());
  CHECK(rep.rows.back().N == 1000);
  CHECK(std::isfinite(rep.kappa_A));
  CHECK(rep.rows.back().sum_A2 <= rep.kappa_A * std::pow(std::log(1000.0), 2));
  // ell = 1 contributes A~(1,1)^2 = 1; N = 2 adds ell = 2.
  const double two = 1.0 + emt_square_sum_prime(2);
  CHECK(rep.rows.front().sum_A2 == doctest::Approx(two).epsilon(1e-12));
  for (std::int64_t p : {2, 3, 5, 7, 97, 997}) {
    double s = 0.0;
    for (std::int64_t b = 1; b <= p; ++b) s += std::pow(emt_coeffs(p, b).A_tilde, 2);
    CHECK(emt_square_sum_prime(p) == doctest::Approx(s).epsilon(1e-12));
  }
  CHECK_THROWS(emt_tail_bounds(20000));
}
