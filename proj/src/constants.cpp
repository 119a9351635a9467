#include "tau3corr/constants.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tau3corr/arith.hpp"
#include "tau3corr/summation.hpp"

namespace tau3corr {

namespace {

// B_2, B_4, ..., B_18
constexpr std::array<double, 9> kBernoulliEven = {
    1.0 / 6.0,    -1.0 / 30.0,        1.0 / 42.0,       -1.0 / 30.0,   5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0};

constexpr double kShift = 16.0;

void require_unit_interval(double alpha, const char* who) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::domain_error(std::string(who) + ": alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
}

}  // namespace

double euler_gamma() { return std::numbers::egamma; }

double digamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("digamma: x must be positive");
  CompensatedSum shift;
  while (x < kShift) {
    shift.add(-1.0 / x);
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  double series = 0.0;
  double pow = inv2;
  for (std::size_t j = 0; j < kBernoulliEven.size(); ++j) {
    series += kBernoulliEven[j] / (2.0 * static_cast<double>(j + 1)) * pow;
    pow *= inv2;
  }
  return shift.value() + std::log(x) - 0.5 / x - series;
}

double stieltjes0(double alpha) {
  require_unit_interval(alpha, "stieltjes0");
  return -digamma(alpha);
}

double stieltjes0_limit(double alpha, std::int64_t m) {
  require_unit_interval(alpha, "stieltjes0_limit");
  CompensatedSum s;
  // Largest terms last keeps the small ones from being absorbed.
  for (std::int64_t k = m; k >= 0; --k) s.add(1.0 / (static_cast<double>(k) + alpha));
  s.add(-std::log(static_cast<double>(m) + alpha));
  return s.value();
}

double stieltjes1(double alpha) {
  require_unit_interval(alpha, "stieltjes1");
  // gamma_1(x) = sum_{k<M} log(x+k)/(x+k) + gamma_1(x+M), then Euler-Maclaurin:
  // gamma_1(x) = -log^2 x / 2 + log x / (2x) + sum_j B_2j (log x - H_{2j-1}) / (2j x^2j).
  double x = alpha;
  CompensatedSum s;
  while (x < kShift) {
    s.add(std::log(x) / x);
    x += 1.0;
  }
  const double lx = std::log(x);
  s.add(-0.5 * lx * lx);
  s.add(0.5 * lx / x);
  const double inv2 = 1.0 / (x * x);
  double pow = inv2;
  double harmonic = 1.0;  // H_1
  for (std::size_t j = 0; j < kBernoulliEven.size(); ++j) {
    const double two_j = 2.0 * static_cast<double>(j + 1);
    s.add(kBernoulliEven[j] * (lx - harmonic) / two_j * pow);
    harmonic += 1.0 / two_j + 1.0 / (two_j + 1.0);  // H_{2j+1}
    pow *= inv2;
  }
  return s.value();
}

double stieltjes_gamma1() { return stieltjes1(1.0); }

double zeta_real(double s) {
  if (!(s > 1.0)) throw std::domain_error("zeta_real: s must exceed 1");
  constexpr int kTerms = 32;
  const double m = static_cast<double>(kTerms);
  CompensatedSum sum;
  for (int n = kTerms - 1; n >= 1; --n) sum.add(std::pow(static_cast<double>(n), -s));
  sum.add(std::pow(m, 1.0 - s) / (s - 1.0));
  sum.add(0.5 * std::pow(m, -s));
  // B_2j / (2j)! * s (s+1) ... (s+2j-2) * m^{-s-2j+1}
  double rising = s;       // s (s+1) ... (s+2j-2)
  double factorial = 2.0;  // (2j)!
  double mpow = std::pow(m, -s - 1.0);
  for (std::size_t j = 0; j < kBernoulliEven.size(); ++j) {
    sum.add(kBernoulliEven[j] / factorial * rising * mpow);
    const double k = 2.0 * static_cast<double>(j + 1);
    rising *= (s + k - 1.0) * (s + k);
    factorial *= (k + 1.0) * (k + 2.0);
    mpow /= m * m;
  }
  return sum.value();
}

std::int64_t f_coefficient(int nu) {
  if (nu < 0) throw std::invalid_argument("f_coefficient: nu must be >= 0");
  auto binom = [](std::int64_t n, std::int64_t k) -> std::int64_t {
    if (k < 0 || n < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  std::int64_t total = 0;
  for (int r = 0; r <= nu; ++r) {
    const std::int64_t c = binom(nu - r + 2, 2);
    const std::int64_t term = binom(9, r) * c * c;
    total += (r % 2 == 0) ? term : -term;
  }
  return total;
}

namespace {

// sum_{p > P} p^{-sigma} <= 1.25506 sigma P^{1-sigma} / ((sigma-1) log P), sigma > 1.
double prime_power_tail(double sigma, double P) {
  return 1.25506 * sigma * std::pow(P, 1.0 - sigma) / ((sigma - 1.0) * std::log(P));
}

EulerProductResult euler_product_F(double s, std::int64_t truncation_prime) {
  static constexpr std::array<int, 7> kCoeffs = {1, 0, -9, 16, -9, 0, 1};  // a_0..a_6
  CompensatedSum log_sum;
  for (std::int64_t p : primes_up_to(truncation_prime)) {
    const double x = std::pow(static_cast<double>(p), -s);
    double dev = 0.0;
    for (int nu = 6; nu >= 2; --nu) dev = (dev + kCoeffs[nu]) * x;
    dev *= x;
    log_sum.add(std::log1p(dev));
  }
  const double value = std::exp(log_sum.value());
  const double P = static_cast<double>(truncation_prime);
  const double ps = std::pow(P, -s);
  const double per_prime = 9.0 + 16.0 * ps + 9.0 * ps * ps + ps * ps * ps * ps;
  const double dev_max = per_prime * ps * ps;
  const double log_tail = per_prime * prime_power_tail(2.0 * s, P) / (1.0 - dev_max);
  return {value, truncation_prime, value * std::expm1(log_tail)};
}

}  // namespace

EulerProductResult euler_product_A3(std::int64_t truncation_prime) {
  if (truncation_prime < 100) throw std::invalid_argument("euler_product_A3: truncation_prime must be >= 100");
  return euler_product_F(1.0, truncation_prime);
}

EulerProductResult singular_constant_S8(std::int64_t truncation_prime) {
  EulerProductResult r = euler_product_A3(truncation_prime);
  constexpr double kFactorial8 = 40320.0;
  r.value /= kFactorial8;
  r.tail_bound /= kFactorial8;
  return r;
}

EulerProductResult dirichlet_F(double s, std::int64_t truncation_prime) {
  if (!(s > 0.5)) throw std::domain_error("dirichlet_F: s must exceed 1/2");
  if (truncation_prime < 2) throw std::invalid_argument("dirichlet_F: truncation_prime must be >= 2");
  return euler_product_F(s, truncation_prime);
}

DirichletIdentityCheck check_tau3_squared_dirichlet(double s, std::int64_t cutoff,
                                                    std::int64_t truncation_prime, double margin) {
  if (!(s > 1.0)) throw std::domain_error("check_tau3_squared_dirichlet: s must exceed 1");
  if (cutoff < 16) throw std::invalid_argument("check_tau3_squared_dirichlet: cutoff must be >= 16");
  const DivisorTable t3 = sieve(DivisorKind::tau3, cutoff);

  DirichletIdentityCheck out;
  out.s = s;
  out.cutoff = cutoff;
  // Descending n: small terms first.
  CompensatedSum partial;
  CompensatedSum window;
  for (std::int64_t n = cutoff; n >= 1; --n) {
    const double v = static_cast<double>(t3[n]) * static_cast<double>(t3[n]);
    partial.add(v * std::pow(static_cast<double>(n), -s));
    if (2 * n > cutoff) window.add(v);
  }
  out.partial_sum = partial.value();

  const EulerProductResult F = dirichlet_F(s, truncation_prime);
  const double z9 = std::pow(zeta_real(s), 9);
  out.product_value = z9 * F.value;
  out.product_uncertainty = z9 * F.tail_bound + 64.0 * std::numeric_limits<double>::epsilon() * out.product_value;
  out.gap = out.product_value - out.partial_sum;

  // density(t) ~ rho * (log t / log t0)^8 beyond the cutoff, with rho the mean
  // of tau3^2 over (X/2, X] and t0 = 3X/4 its midpoint:
  // int_X^inf log^8 t t^-s dt = X^{1-s} sum_j 8!/(8-j)! L^{8-j} / (s-1)^{j+1}.
  const double X = static_cast<double>(cutoff);
  const double rho = window.value() / (X - std::floor(X / 2.0));
  const double L = std::log(X);
  const double L0 = std::log(0.75 * X);
  double integral = 0.0;
  double falling = 1.0;
  for (int j = 0; j <= 8; ++j) {
    integral += falling * std::pow(L, 8 - j) / std::pow(s - 1.0, j + 1);
    falling *= static_cast<double>(8 - j);
  }
  integral *= std::pow(X, 1.0 - s);
  out.tail_estimate = rho * integral / std::pow(L0, 8);
  out.tail_bound = margin * out.tail_estimate;
  out.pass = out.gap >= -out.product_uncertainty &&
             out.gap <= out.tail_bound + out.product_uncertainty;
  return out;
}

}  // namespace tau3corr
