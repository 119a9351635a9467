#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tau3corr/arith.hpp"
#include "tau3corr/parallel.hpp"
#include "tau3corr/singular_series.hpp"

namespace tau3corr {

struct LemmaConfig {
  double epsilon = 0.05;
  double pass_constant = 10.0;
  double spread_limit = 3.0;
  LaurentConvention convention = LaurentConvention::complete;
};

/// One comparison of an exact quantity with a lemma's main term.
/// normalized_error = error / (O-term, with epsilon added to exponents
/// that carry one in the lemma).
struct LemmaCheck {
  std::string lemma_id;
  std::string parameters;
  double exact = 0.0;
  double predicted = 0.0;
  double error = 0.0;
  double normalized_error = 0.0;
  bool pass = false;
  /// The main term exactly as printed, when it differs from `predicted`.
  std::optional<double> printed_predicted;
  std::optional<double> printed_normalized_error;
  /// error over the O-term as printed, when that differs from the one used.
  std::optional<double> printed_bound_normalized_error;
};

/// Order of magnitude of a lemma's error across the residues a.
struct SpreadCheck {
  std::string lemma_id;
  std::string parameters;
  std::vector<std::int64_t> residues;
  std::vector<double> magnitudes;  // max normalized |error| over the grid, per residue
  double spread = 1.0;             // max / min
  bool pass = false;
};

/// int_0^1 u^r log^i(1-u) log^j(u) du for r <= 1, i <= 2, j <= 1.
double log_moment(int r, int i, int j);

/// Coefficients (L^0 .. L^{p+1}) of int_0^1 u^r (L + log(1-u))^p (L + log u + c + 1) du:
/// the main term of sum_{k<N} k^r log^p(N-k) f(k) is kappa N^{r+1} P(log N)
/// when sum_{k<=t} f(k) ~ kappa t (log t + c).
std::vector<double> partial_summation_coeffs(int r, int p, double c);

/// H_1..H_10 at N (H_3, H_8 summed to X = N) for modulus q >= 2.
std::vector<LemmaCheck> check_h_sums(std::int64_t N, std::int64_t q, LemmaConfig cfg = {});
std::vector<LemmaCheck> check_h_sums(const DivisorTable& tau, std::int64_t N, std::int64_t q, LemmaConfig cfg = {});

/// lambda_3..lambda_5 of H_7 by least squares on
/// (H_7 - (N-1)^2 log^3(N-1) / 2) / (N-1)^2 over a grid of N.
struct LambdaFit {
  std::vector<std::int64_t> grid;
  std::array<double, 3> fitted{};   // lambda_3, lambda_4, lambda_5
  std::array<double, 3> derived{};  // from the partial-summation main term
  double printed_lambda3 = 0.0;
};

LambdaFit fit_h7_lambdas(const std::vector<std::int64_t>& grid);

/// sum_{m <= y} tau(dm) against y sum_{q | d} phi(q)/q (log dy + 2 gamma - 1 - 2 log q).
LemmaCheck check_taudm(std::int64_t d, std::int64_t y, LemmaConfig cfg = {});
LemmaCheck check_taudm(const DivisorTable& tau, std::int64_t d, std::int64_t y, LemmaConfig cfg = {});

/// sum_{n <= X} tau(n) e_q(an) against q^-1 X (log X - 2 log q + 2 gamma - 1).
LemmaCheck check_cqdeltam(std::int64_t q, std::int64_t a, std::int64_t X, LemmaConfig cfg = {});
LemmaCheck check_cqdeltam(const DivisorTable& tau, std::int64_t q, std::int64_t a, std::int64_t X,
                          LemmaConfig cfg = {});
/// Over every a coprime to q and X_j = X 2^{-j/2}, j = 0..7.
SpreadCheck cqdeltam_spread(const DivisorTable& tau, std::int64_t q, std::int64_t X, LemmaConfig cfg = {});

/// int_1^{N-1} t log^p t / (N - t) dt for p = 1, 2 against the closed forms.
/// Throws NumericalError if the quadrature misses its tolerance.
std::vector<LemmaCheck> check_geometric_integrals(double N, LemmaConfig cfg = {});

/// D(a/q, n) against q^-1 n (A/2 log^2 n - (A-B) log n + (A-B+C)).
LemmaCheck check_D_main_term(std::int64_t q, std::int64_t a, std::int64_t n, LemmaConfig cfg = {});
LemmaCheck check_D_main_term(const DivisorTable& tau3, std::int64_t q, std::int64_t a, std::int64_t n,
                             LemmaConfig cfg = {});
/// Over every a coprime to q and n_j = n 2^{-j/2}, j = 0..7.
SpreadCheck D_main_term_spread(const DivisorTable& tau3, std::int64_t q, std::int64_t n, LemmaConfig cfg = {});

struct LemmaSuiteConfig {
  LemmaConfig lemma;
  std::int64_t taudm_d_max = 20;
  std::int64_t taudm_y = 100000;
  std::int64_t cqdeltam_q_max = 10;
  std::int64_t cqdeltam_X = 100000;
  std::vector<std::int64_t> h_moduli = {2, 3, 5};
  std::int64_t h_N = 100000;
  std::vector<double> geometric_N = {1e3, 1e4};
  std::int64_t D_q_max = 7;
  std::int64_t D_nq_max = 1000000;
};

struct LemmaSuiteResult {
  std::vector<LemmaCheck> checks;
  std::vector<SpreadCheck> spreads;
  bool all_pass() const;
};

LemmaSuiteResult run_lemma_suite(const LemmaSuiteConfig& cfg = {}, ExecPolicy policy = {});

}  // namespace tau3corr
