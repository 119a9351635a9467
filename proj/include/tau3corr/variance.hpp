#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tau3corr/arith.hpp"
#include "tau3corr/parallel.hpp"
#include "tau3corr/singular_series.hpp"

namespace tau3corr {

/// sums[b-1] = sum_{n <= N, n = b (mod ell)} tau3(n), b = 1..ell.
struct APSumTable {
  std::int64_t N = 0;
  std::int64_t ell = 1;
  std::vector<std::int64_t> sums;
};

APSumTable ap_sums(std::int64_t N, std::int64_t ell);
APSumTable ap_sums(const DivisorTable& tau3, std::int64_t N, std::int64_t ell);

enum class Q1Route { direct, identity };

/// Largest N accepted by the direct route.
inline constexpr std::int64_t kQ1DirectMax = std::int64_t{1} << 13;

/// Q_1(N) = sum_{ell <= N} sum_{n1 = n2 (ell)} tau3(n1) tau3(n2).
/// direct: pair enumeration; identity: N sum tau3^2 + 2 sum_{k<N} V(k, N) tau(k).
/// Throws OverflowError if the value leaves int64.
std::int64_t q1(std::int64_t N, Q1Route route);

/// Least-squares fit Q / N^2 = sum_j c_j log^j N.
struct LogPolyFit {
  int degree = 0;
  std::vector<double> coeffs;  // c_0..c_degree; empty if rank deficient
  int rank = 0;
  bool full_rank = false;
  double rms_relative_residual = 0.0;
};

LogPolyFit fit_log_polynomial(std::span<const std::int64_t> N, std::span<const double> Q, int degree = 8);

struct VarianceReport {
  std::int64_t N = 0;
  double Q = 0.0;
  std::optional<std::int64_t> Q1_direct;  // only for N <= kQ1DirectMax
  std::int64_t Q1_identity = 0;
  double leading_ratio = 0.0;             // Q / (N^2 log^8 N)
  std::optional<double> fit_S8;           // set by a grid fit
};

struct VarianceConfig {
  LaurentConvention convention = LaurentConvention::complete;
  bool with_q1 = true;
};

/// Q(N) = sum_{ell <= N} sum_{b <= ell} (ap_sum(ell, b) - N P_2(log N; ell, b))^2.
VarianceReport variance_Q(std::int64_t N, VarianceConfig cfg = {}, ExecPolicy policy = {});

struct VarianceSweep {
  std::vector<VarianceReport> reports;
  LogPolyFit fit;
};

/// variance_Q on an increasing grid, then the degree-8 fit; fit_S8 is the
/// leading coefficient, copied into every report when the fit has full rank.
VarianceSweep variance_sweep(std::span<const std::int64_t> grid, VarianceConfig cfg = {}, ExecPolicy policy = {});

/// round(2^(lo + i/steps)) for i = 0..(hi-lo)*steps.
std::vector<std::int64_t> geometric_grid(int lo_exp, int hi_exp, int steps_per_octave);

struct EMTTailRow {
  std::int64_t N = 0;
  double sum_A2 = 0.0;  // sum_{ell <= N} sum_b A~(ell, b)^2
  double sum_B2 = 0.0;
  double sum_C2 = 0.0;
};

struct EMTTailReport {
  std::int64_t N_max = 0;
  std::vector<EMTTailRow> rows;  // N = 2, 4, 8, ..., and N_max
  double kappa_A = 0.0;          // max over rows of sum / log^2 N
  double kappa_B = 0.0;
  double kappa_C = 0.0;
};

/// N_max <= 10^4.
EMTTailReport emt_tail_bounds(std::int64_t N_max, LaurentConvention convention = LaurentConvention::complete);

/// sum_b A~(ell, b)^2 for prime ell from c_ell(b) in {-1, ell - 1}.
double emt_square_sum_prime(std::int64_t ell, LaurentConvention convention = LaurentConvention::complete);

}  // namespace tau3corr
