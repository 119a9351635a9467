#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "tau3corr/parallel.hpp"

namespace tau3corr {

/// Which (s-1)^{-1} coefficient C(q) to use. `complete` includes the
/// -3 gamma_1(alpha/q) contribution of the Hurwitz zeta factors; `printed`
/// omits it, giving C(1) = 3 gamma^2 instead of 3 gamma^2 - 3 gamma_1.
enum class LaurentConvention { complete, printed };

/// Per-n weight of the major-arc approximation. `density` is the derivative
/// of n (A/2 log^2 n - (A-B) log n + (A-B+C)), i.e. A/2 log^2 n + B log n + C;
/// `printed` uses the cumulative polynomial itself as the weight.
enum class MainTermForm { density, printed };

std::string_view to_string(LaurentConvention c);
std::string_view to_string(MainTermForm f);

/// Coefficients of the order-3 pole of the tau3 Estermann series at s = 1:
/// E(s; a/q) = q^{-1} (A (s-1)^-3 + B (s-1)^-2 + C (s-1)^-1) + O(1).
struct LaurentCoeffs {
  std::int64_t q = 1;
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
};

/// Via sum_gamma e_q(a alpha beta gamma) = q [q | alpha beta]: the pairs
/// (alpha, beta) with beta a multiple of q / gcd(alpha, q).
LaurentCoeffs laurent_coeffs(std::int64_t q, LaurentConvention convention = LaurentConvention::complete);

/// Naive triple exponential sum over alpha, beta, gamma in [1, q], for q <= 64
/// and gcd(a, q) = 1. Throws ConsistencyError if the imaginary parts exceed
/// 1e-8 q^3.
LaurentCoeffs laurent_coeffs_oracle(std::int64_t q, std::int64_t a,
                                    LaurentConvention convention = LaurentConvention::complete);

/// Coefficients for every q in [1, q_max] (index q; slot 0 unused), from the
/// Gauss multiplication theorem: sum_{j<=m} gamma_0(j/m) = m (gamma + log m)
/// and sum_{j<=m} gamma_1(j/m) = m (gamma_1 - gamma log m - log^2 m / 2),
/// restricted to residues coprime to m by Mobius inversion. O(q_max log q_max).
std::vector<LaurentCoeffs> laurent_table(std::int64_t q_max,
                                         LaurentConvention convention = LaurentConvention::complete);

/// a2 L^2 + a1 L + a0 with L = log n.
struct WeightPolynomial {
  double a2 = 0.0;
  double a1 = 0.0;
  double a0 = 0.0;
  double operator()(double log_n) const noexcept { return (a2 * log_n + a1) * log_n + a0; }
};

WeightPolynomial weight_polynomial(const LaurentCoeffs& c, MainTermForm form);

/// w_1..w_6 of W_q(k, N) = sum_j w_j T_j(k, N): the products a2^2, a2 a1,
/// a1^2, a2 a0, a1 a0, a0^2 of the weight polynomial.
struct WeightVector {
  std::int64_t q = 1;
  std::array<double, 6> w{};
};

WeightVector weights(const LaurentCoeffs& c, MainTermForm form);
WeightVector weights(std::int64_t q, MainTermForm form = MainTermForm::density,
                     LaurentConvention convention = LaurentConvention::complete);

/// T_1..T_6 (k, N), sums over 1 <= n <= N - |k| of
/// log^2 n log^2(n+k), log n log(n+k) log(n(n+k)), log n log(n+k),
/// log^2 n + log^2(n+k), log(n(n+k)), 1.
using TSums = std::array<double, 6>;

TSums t_sums(std::int64_t N, std::int64_t k);

/// T_j(k, N) for every k in [0, N-1]; rows indexed by k.
struct TSumProfile {
  std::int64_t N = 0;
  std::vector<TSums> rows;
};

TSumProfile t_sum_profile(std::int64_t N, ExecPolicy policy = {});

/// W_q(k, N) evaluated term by term from its defining sum over n.
double w_q_direct(const LaurentCoeffs& c, MainTermForm form, std::int64_t N, std::int64_t k);

struct SingularSeriesConfig {
  MainTermForm form = MainTermForm::density;
  LaurentConvention convention = LaurentConvention::complete;
};

/// Default truncation floor(N^exponent), at least 1.
std::int64_t default_delta(std::int64_t N, double exponent = 4.0 / 19.0);

/// S_Delta(k, N) = sum_{q <= Delta} q^-2 c_q(|k|) W_q(k, N), one k at a time.
double s_delta(std::int64_t N, std::int64_t Delta, std::int64_t k, SingularSeriesConfig cfg = {});

/// S_Delta(k, N) for every k in [0, N-1] (index k), O(N Delta) on top of the
/// T-sum profile.
std::vector<double> s_delta_profile(std::int64_t N, std::int64_t Delta, SingularSeriesConfig cfg = {},
                                    ExecPolicy policy = {});
std::vector<double> s_delta_profile(const TSumProfile& tsums, std::int64_t Delta, SingularSeriesConfig cfg = {});

/// Polynomial in log N, coefficients for (log N)^0..(log N)^degree.
struct MainTermPoly {
  enum class Scale { per_n, absolute };
  int degree = 0;
  std::vector<double> coeffs;
  Scale scale = Scale::per_n;

  double operator()(double log_n) const noexcept;
};

/// Coefficients of the residue at s = 1 of sum_{n = b (ell)} tau3(n) n^-s N^s / s.
struct EMTCoeffs {
  std::int64_t ell = 1;
  std::int64_t b = 1;
  double A_tilde = 0.0;
  double B_tilde = 0.0;
  double C_tilde = 0.0;
};

EMTCoeffs emt_coeffs(std::int64_t ell, std::int64_t b, LaurentConvention convention = LaurentConvention::complete);
/// Same, reading A, B, C from a laurent_table covering ell.
EMTCoeffs emt_coeffs(std::int64_t ell, std::int64_t b, std::span<const LaurentCoeffs> table);

/// P_2(L) = A~/2 L^2 - (A~ - B~) L + (A~ - B~ + C~); N P_2(log N) is the EMT.
MainTermPoly emt_poly(const EMTCoeffs& c);
MainTermPoly emt_poly(std::int64_t ell, std::int64_t b, LaurentConvention convention = LaurentConvention::complete);

/// q^-1 n (A/2 log^2 n - (A-B) log n + (A-B+C)).
double residue_main_term(const LaurentCoeffs& c, double n);
double residue_main_term(std::int64_t q, double n, LaurentConvention convention = LaurentConvention::complete);

}  // namespace tau3corr
