#pragma once

#include <cstdint>

namespace tau3corr {

/// Euler's constant (binary64).
double euler_gamma();

/// Digamma function for x > 0: recurrence shift to x >= 16, then the
/// Bernoulli asymptotic series.
double digamma(double x);

/// Generalized Stieltjes constant gamma_0(alpha) = -psi(alpha), 0 < alpha <= 1.
/// Throws std::domain_error outside that range.
double stieltjes0(double alpha);

/// gamma_0(alpha) straight from the limit
/// sum_{k<=m} 1/(k+alpha) - log(m+alpha). Slow; used as an oracle.
double stieltjes0_limit(double alpha, std::int64_t m);

/// First generalized Stieltjes constant gamma_1(alpha), 0 < alpha <= 1:
/// the coefficient in zeta(s, alpha) = 1/(s-1) + gamma_0(alpha) - gamma_1(alpha)(s-1) + ...
double stieltjes1(double alpha);

/// Stieltjes constant gamma_1 = gamma_1(1).
double stieltjes_gamma1();

/// Riemann zeta at real s > 1 by Euler-Maclaurin.
double zeta_real(double s);

/// a_nu in prod_p (1 + sum_nu a_nu p^{-nu s}) = zeta(s)^{-9} sum tau3(n)^2 n^{-s}.
std::int64_t f_coefficient(int nu);

struct EulerProductResult {
  double value = 0.0;
  std::int64_t truncation_prime = 0;
  /// Bound on |full product - value|.
  double tail_bound = 0.0;
};

/// A_3 = prod_p (1 - 9p^-2 + 16p^-3 - 9p^-4 + p^-6) over p <= truncation_prime.
/// truncation_prime >= 100.
EulerProductResult euler_product_A3(std::int64_t truncation_prime);

/// Leading variance constant A_3 / 8!.
EulerProductResult singular_constant_S8(std::int64_t truncation_prime);

/// F(s) = prod_p (1 + sum_nu a_nu p^{-nu s}) for s > 1/2, truncated at
/// truncation_prime, with a tail bound from pi(x) <= 1.25506 x / log x.
EulerProductResult dirichlet_F(double s, std::int64_t truncation_prime);

/// Comparison of sum_{n<=cutoff} tau3(n)^2 n^-s with zeta(s)^9 F(s).
struct DirichletIdentityCheck {
  double s = 0.0;
  std::int64_t cutoff = 0;
  double partial_sum = 0.0;
  double product_value = 0.0;       // zeta(s)^9 F(s)
  double product_uncertainty = 0.0; // from the F truncation
  double gap = 0.0;                 // product_value - partial_sum
  /// Estimate of sum_{n>cutoff} tau3(n)^2 n^-s from the measured density on
  /// (cutoff/2, cutoff] extrapolated with a log^8 growth model.
  double tail_estimate = 0.0;
  /// margin * tail_estimate
  double tail_bound = 0.0;
  bool pass = false;
};

DirichletIdentityCheck check_tau3_squared_dirichlet(double s, std::int64_t cutoff,
                                                    std::int64_t truncation_prime,
                                                    double margin = 2.0);

}  // namespace tau3corr
