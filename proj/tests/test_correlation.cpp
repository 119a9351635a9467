#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "tau3corr/correlation.hpp"
#include "tau3corr/errors.hpp"

using namespace tau3corr;

TEST_CASE("correlation series small cases") {
  for (auto m : {CorrelationMethod::direct, CorrelationMethod::modular_transform}) {
    const auto v = correlation_series(5, m);
    CHECK(v.values.size() == 5);
    CHECK(v(1) == 48);
    CHECK(v(0) == 1 + 9 + 9 + 36 + 9);
    CHECK(v(4) == 3);
    CHECK(v(-1) == 48);
    CHECK(v.method == m);
  }
  CHECK_THROWS(correlation_series(1, CorrelationMethod::direct));
  CHECK_THROWS_AS(correlation_series(10, CorrelationMethod::direct, CorrelationLimits{8, 8}), SizingError);
}

TEST_CASE("direct and transform agree") {
  const auto tau3 = sieve(DivisorKind::tau3, 4096);
  for (std::int64_t N : {2, 3, 64, 1000, 4096}) {
    const auto a = correlation_series(tau3, N, CorrelationMethod::direct);
    const auto b = correlation_series(tau3, N, CorrelationMethod::modular_transform);
    CHECK(a.values == b.values);
    CHECK(a(N - 1) == tau3[N]);
    std::int64_t e = 0;
    for (std::int64_t n = 1; n <= N; ++n) e += tau3[n] * tau3[n];
    CHECK(a(0) == e);
    for (auto x : a.values) CHECK(x <= a(0));
  }
  // V(k, N+1) - V(k, N) = tau3(N+1-k) tau3(N+1)
  const auto v1 = correlation_series(tau3, 2000, CorrelationMethod::direct);
  const auto v2 = correlation_series(tau3, 2001, CorrelationMethod::direct);
  for (std::int64_t k = 0; k < 2000; ++k) CHECK(v2(k) - v1(k) == tau3[2001 - k] * tau3[2001]);
}

TEST_CASE("D values") {
  const auto t = sieve(DivisorKind::tau3, 2048);
  CHECK(eval_D(0.0, 10, t).real() == doctest::Approx(53.0));
  const auto d = eval_D(0.5, 2, t);
  CHECK(d.real() == doctest::Approx(2.0));
  CHECK(std::abs(d.imag()) < 1e-14);
  const auto r = eval_D(RationalPhase(1, 2), 2, t);
  CHECK(r.real() == doctest::Approx(2.0));
  for (auto [a, q] : {std::pair{1, 3}, {2, 7}, {5, 12}}) {
    const auto x = eval_D(RationalPhase(a, q), 2048, t);
    const auto y = eval_D(static_cast<double>(a) / q, 2048, t);
    CHECK(std::abs(x - y) < 1e-9 * std::abs(x) + 1e-9);
  }
}

TEST_CASE("Fourier identity for |D|^2") {
  const std::int64_t N = 2048;
  const auto t = sieve(DivisorKind::tau3, N);
  const auto V = correlation_series(t, N, CorrelationMethod::modular_transform);
  std::mt19937_64 rng(11);
  std::vector<double> alphas = {0.137, 1.0 / 3.0, 0.618};
  for (int i = 0; i < 20; ++i) alphas.push_back(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
  for (double alpha : alphas) {
    const double lhs = std::norm(eval_D(alpha, N, t));
    long double rhs = static_cast<long double>(V(0));
    for (std::int64_t k = 1; k < N; ++k) rhs += 2.0L * V(k) * std::cos(2.0L * 3.14159265358979323846L * alpha * k);
    CHECK(std::abs(lhs - static_cast<double>(rhs)) <= 1e-6 * lhs);
  }
}

TEST_CASE("F values") {
  const std::int64_t N = 300;
  const auto c = laurent_coeffs(4);
  const auto w = weight_polynomial(c, MainTermForm::density);
  double total = 0.0, abs_total = 0.0;
  for (std::int64_t n = 1; n <= N; ++n) {
    total += w(std::log(static_cast<double>(n)));
    abs_total += std::abs(w(std::log(static_cast<double>(n))));
  }
  const auto f = eval_F(0.25, RationalPhase(1, 4), N);
  CHECK(f.real() == doctest::Approx(total / 4));
  CHECK(std::abs(f.imag()) < 1e-9);
  CHECK(std::abs(eval_F(0.31, RationalPhase(3, 4), N)) <= abs_total / 4 + 1e-9);
}

TEST_CASE("G_Delta routes") {
  for (auto form : {MainTermForm::density, MainTermForm::printed}) {
    const SingularSeriesConfig cfg{form, LaurentConvention::complete};
    const auto g = eval_G_delta(0.3, 1024, 4, cfg);
    CHECK(std::abs(g.farey_route - g.fourier_route) <= 1e-6 * g.farey_route);
    const auto h = eval_G_delta(0.7, 1024, 4, cfg);
    CHECK(h.farey_route == doctest::Approx(g.farey_route).epsilon(1e-9));
  }
  const auto g1 = eval_G_delta(0.0, 500, 1);
  CHECK(g1.farey_route == doctest::Approx(std::norm(eval_F(0.0, RationalPhase(1, 1), 500))));
  CHECK_THROWS_AS(eval_G_delta(0.1, 100, 0), std::domain_error);
}

TEST_CASE("moment statistic") {
  const auto m = theorem1_statistic(1024);
  CHECK(m.Delta == 4);
  CHECK(m.second_moment >= 0.0);
  CHECK(std::isfinite(m.ratio));
  const auto p1 = correlation_profile(1024, 4, {}, CorrelationMethod::modular_transform, ExecPolicy{1});
  const auto p4 = correlation_profile(1024, 4, {}, CorrelationMethod::direct, ExecPolicy{4});
  CHECK(p1.S == p4.S);
  CHECK(moment_statistic(p1).second_moment == moment_statistic(p4).second_moment);
  CHECK_THROWS(theorem1_statistic(32));
}
