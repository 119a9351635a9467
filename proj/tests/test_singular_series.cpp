#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "tau3corr/arith.hpp"
#include "tau3corr/constants.hpp"
#include "tau3corr/singular_series.hpp"

using namespace tau3corr;

namespace {

const double g = euler_gamma();

double a_closed_form(std::int64_t q) {
  double s = 0.0;
  for (auto d : divisors(q)) s += static_cast<double>(euler_phi(d)) / static_cast<double>(d);
  return s;
}

TSums t_sums_naive(std::int64_t N, std::int64_t k) {
  TSums t{};
  for (std::int64_t n = 1; n <= N - k; ++n) {
    const long double a = std::log(static_cast<long double>(n));
    const long double b = std::log(static_cast<long double>(n + k));
    t[0] += static_cast<double>(a * a * b * b);
    t[1] += static_cast<double>(a * b * (a + b));
    t[2] += static_cast<double>(a * b);
    t[3] += static_cast<double>(a * a + b * b);
    t[4] += static_cast<double>(a + b);
    t[5] += 1.0;
  }
  return t;
}

bool rel_close(double x, double y, double tol) { return std::abs(x - y) <= tol * std::max(std::abs(x), std::abs(y)); }

}  // namespace

TEST_CASE("Laurent coefficients at q = 1") {
  const auto pr = laurent_coeffs(1, LaurentConvention::printed);
  CHECK(pr.A == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(pr.B == doctest::Approx(3 * g).epsilon(1e-13));
  CHECK(pr.C == doctest::Approx(3 * g * g).epsilon(1e-13));
  const auto c = laurent_coeffs(1);
  CHECK(c.C == doctest::Approx(3 * g * g - 3 * stieltjes_gamma1()).epsilon(1e-13));
  const auto o = laurent_coeffs_oracle(1, 1);
  CHECK(o.C == doctest::Approx(c.C).epsilon(1e-13));
}

TEST_CASE("Laurent coefficients small q") {
  CHECK(laurent_coeffs(2).A == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(laurent_coeffs_oracle(2, 1).A == doctest::Approx(1.5).epsilon(1e-14));
  const auto c12 = laurent_coeffs(12);
  CHECK(c12.A == doctest::Approx(10.0 / 3.0).epsilon(1e-13));
  CHECK(c12.B == doctest::Approx(-3.82090).epsilon(2e-6));
  CHECK(c12.C == doctest::Approx(-5.09778).epsilon(2e-6));
  for (std::int64_t a : {1, 5, 7, 11}) {
    const auto o = laurent_coeffs_oracle(12, a);
    CHECK(std::abs(o.A - c12.A) < 1e-10);
    CHECK(std::abs(o.B - c12.B) < 1e-10);
    CHECK(std::abs(o.C - c12.C) < 1e-10);
  }
  const auto o31 = laurent_coeffs_oracle(3, 1), o32 = laurent_coeffs_oracle(3, 2);
  CHECK(std::abs(o31.B - o32.B) < 1e-12);
  CHECK(std::abs(o31.C - o32.C) < 1e-12);
}

TEST_CASE("oracle a-independence, q <= 30") {
  for (std::int64_t q = 1; q <= 30; ++q) {
    for (auto conv : {LaurentConvention::complete, LaurentConvention::printed}) {
      const auto c = laurent_coeffs(q, conv);
      for (std::int64_t a = 1; a <= q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        const auto o = laurent_coeffs_oracle(q, a, conv);
        CHECK(std::abs(o.A - c.A) < 1e-8);
        CHECK(std::abs(o.B - c.B) < 1e-8);
        CHECK(std::abs(o.C - c.C) < 1e-8);
      }
    }
  }
}

TEST_CASE("A closed form and bulk table") {
  for (auto conv : {LaurentConvention::complete, LaurentConvention::printed}) {
    const auto table = laurent_table(500, conv);
    for (std::int64_t q = 1; q <= 500; ++q) {
      const auto c = laurent_coeffs(q, conv);
      CHECK(std::abs(c.A - a_closed_form(q)) < 1e-12 * std::max(1.0, c.A));
      CHECK(table[q].q == q);
      CHECK(std::abs(table[q].A - c.A) < 1e-11);
      CHECK(std::abs(table[q].B - c.B) < 1e-9 * std::max(1.0, std::abs(c.B)));
      CHECK(std::abs(table[q].C - c.C) < 1e-9 * std::max(1.0, std::abs(c.C)));
    }
  }
}

TEST_CASE("weights at q = 1 in the printed form") {
  const auto w = weights(1, MainTermForm::printed, LaurentConvention::printed).w;
  const double u = 1 - 3 * g + 3 * g * g;
  CHECK(w[0] == doctest::Approx(0.25));
  CHECK(w[1] == doctest::Approx((3 * g - 1) / 2));
  CHECK(w[2] == doctest::Approx((1 - 3 * g) * (1 - 3 * g)));
  // Expanding the product of weights gives +A(A-B+C)/2.
  CHECK(w[3] == doctest::Approx(u / 2));
  CHECK(w[4] == doctest::Approx((3 * g - 1) * u));
  CHECK(w[5] == doctest::Approx(u * u));
  for (std::int64_t q = 1; q <= 40; ++q) {
    for (auto form : {MainTermForm::density, MainTermForm::printed}) {
      const auto v = weights(q, form).w;
      CHECK(std::abs(v[4]) == doctest::Approx(std::sqrt(v[2] * v[5])).epsilon(1e-12));
    }
    CHECK(weights(q, MainTermForm::printed).w[0] == doctest::Approx(laurent_coeffs(q).A * laurent_coeffs(q).A / 4));
  }
}

TEST_CASE("T sums") {
  for (auto [N, k] : {std::pair<std::int64_t, std::int64_t>{1, 0}, {50, 0}, {50, 49}, {1000, 10}, {3000, 777}}) {
    const auto t = t_sums(N, k);
    const auto o = t_sums_naive(N, k);
    CHECK(t[5] == static_cast<double>(N - k));
    for (int j = 0; j < 5; ++j) CHECK(std::abs(t[j] - o[j]) <= 1e-12 * std::max(1.0, std::abs(o[j])));
  }
  {
    const double N = 1000, k = 10;
    const double pred = (N - k) * std::log(N - k) + N * std::log(N) - k * std::log(k) - 2 * (N - k);
    CHECK(std::abs(t_sums(1000, 10)[4] - pred) <= 1.0 * std::log(N));
  }
  {
    const double N = 16384, k = 1024;
    const double L = std::log(N), Lk = std::log(N - k);
    // The next term is about -4 (N-k) log^3 N, so the constant is 5, not 1.
    CHECK(std::abs(t_sums(16384, 1024)[0] - (N - k) * L * L * Lk * Lk) <= 5.0 * N * L * L * L);
  }
  const auto prof = t_sum_profile(300, ExecPolicy{3});
  for (std::int64_t k : {0, 1, 150, 299}) CHECK(prof.rows[k] == t_sums(300, k));
}

TEST_CASE("W_q from weights and T sums equals the direct sum") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const std::int64_t N = std::uniform_int_distribution<std::int64_t>(2, 600)(rng);
    const std::int64_t k = std::uniform_int_distribution<std::int64_t>(0, N - 1)(rng);
    const std::int64_t q = std::uniform_int_distribution<std::int64_t>(1, 60)(rng);
    const auto form = i % 2 ? MainTermForm::density : MainTermForm::printed;
    const auto c = laurent_coeffs(q);
    const auto w = weights(c, form).w;
    const auto t = t_sums_naive(N, k);
    double via = 0.0;
    for (int j = 0; j < 6; ++j) via += w[j] * t[j];
    const double direct = w_q_direct(c, form, N, k);
    CHECK(std::abs(via - direct) <= 1e-9 * std::max(1.0, std::abs(direct)) + 1e-9 * N);
  }
}

TEST_CASE("S_Delta") {
  const std::int64_t N = 4096;
  const std::int64_t Delta = default_delta(N);
  CHECK(Delta == 5);
  for (std::int64_t k : {1, 7, 100}) {
    double direct = 0.0;
    for (std::int64_t q = 1; q <= Delta; ++q) {
      direct += static_cast<double>(ramanujan_sum(q, k)) * w_q_direct(laurent_coeffs(q), MainTermForm::density, N, k) /
                static_cast<double>(q * q);
    }
    CHECK(rel_close(s_delta(N, Delta, k), direct, 1e-8));
    CHECK(s_delta(N, Delta, -k) == s_delta(N, Delta, k));
  }
  const auto prof = s_delta_profile(N, Delta, {}, ExecPolicy{4});
  REQUIRE(prof.size() == static_cast<std::size_t>(N));
  for (std::int64_t k : {0, 1, 7, 100, 4095}) CHECK(rel_close(prof[k], s_delta(N, Delta, k), 1e-12));
  // Delta = 1: w(1) . T
  const auto w1 = weights(1, MainTermForm::density).w;
  const auto t = t_sums(N, 33);
  double single = 0.0;
  for (int j = 0; j < 6; ++j) single += w1[j] * t[j];
  CHECK(rel_close(s_delta(N, 1, 33), single, 1e-12));
  CHECK_THROWS_AS(s_delta(N, 0, 1), std::domain_error);
}

TEST_CASE("EMT coefficients and P2") {
  const auto e11 = emt_coeffs(1, 1, LaurentConvention::printed);
  CHECK(e11.A_tilde == doctest::Approx(1.0));
  CHECK(e11.B_tilde == doctest::Approx(3 * g));
  CHECK(e11.C_tilde == doctest::Approx(3 * g * g));
  const auto p = emt_poly(1, 1, LaurentConvention::printed);
  REQUIRE(p.coeffs.size() == 3);
  CHECK(p.coeffs[2] == doctest::Approx(0.5));
  CHECK(p.coeffs[1] == doctest::Approx(3 * g - 1));
  CHECK(p.coeffs[0] == doctest::Approx(3 * g * g - 3 * g + 1));
  CHECK(emt_coeffs(2, 1).A_tilde == doctest::Approx(0.125));
  const auto table = laurent_table(60);
  for (std::int64_t ell : {6, 12, 35, 60}) {
    for (std::int64_t b = 1; b <= ell; ++b) {
      const auto x = emt_coeffs(ell, b), y = emt_coeffs(ell, b + ell), z = emt_coeffs(ell, b, table);
      CHECK(x.A_tilde == y.A_tilde);
      CHECK(x.C_tilde == y.C_tilde);
      CHECK(std::abs(x.B_tilde - z.B_tilde) < 1e-10);
      CHECK(std::abs(x.C_tilde - z.C_tilde) < 1e-10);
    }
  }
}

TEST_CASE("residue main term") {
  for (double n : {1.0, 10.0, 12345.0}) {
    CHECK(residue_main_term(1, n) == doctest::Approx(n * emt_poly(1, 1)(std::log(n))).epsilon(1e-13));
  }
  const auto c = laurent_coeffs(7);
  CHECK(residue_main_term(7, 1.0) == doctest::Approx((c.A - c.B + c.C) / 7.0));
}

TEST_CASE("EMT against the tau3 summatory function") {
  const std::int64_t N = 1000000;
  const auto t = sieve(DivisorKind::tau3, N);
  long double sum = 0;
  for (auto v : t.values()) sum += v;
  const double main = N * emt_poly(1, 1)(std::log(static_cast<double>(N)));
  CHECK(std::abs(static_cast<double>(sum) - main) < std::pow(N, 0.8));
}
