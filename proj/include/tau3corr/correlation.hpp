#pragma once

#include <complex>
#include <cstdint>
#include <string_view>
#include <vector>

#include "tau3corr/arith.hpp"
#include "tau3corr/parallel.hpp"
#include "tau3corr/singular_series.hpp"

namespace tau3corr {

enum class CorrelationMethod { direct, modular_transform };

std::string_view to_string(CorrelationMethod m);

/// Largest N accepted by each method.
struct CorrelationLimits {
  std::int64_t max_direct_n = std::int64_t{1} << 17;
  std::int64_t max_transform_n = std::int64_t{1} << 26;
};

/// V(k, N) = sum_{1 <= n <= N-k} tau3(n) tau3(n+k) for k = 0..N-1.
struct CorrelationSeries {
  std::int64_t n_max = 0;
  std::vector<std::int64_t> values;
  CorrelationMethod method = CorrelationMethod::direct;

  std::int64_t operator()(std::int64_t k) const { return values.at(static_cast<std::size_t>(k < 0 ? -k : k)); }
};

CorrelationSeries correlation_series(std::int64_t N, CorrelationMethod method, CorrelationLimits limits = {});
/// Uses the supplied tau3 table (must cover N).
CorrelationSeries correlation_series(const DivisorTable& tau3, std::int64_t N, CorrelationMethod method,
                                     CorrelationLimits limits = {});

/// D(alpha, N) = sum_{n <= N} tau3(n) e(alpha n).
std::complex<double> eval_D(double alpha, std::int64_t N, const DivisorTable& tau3);
/// Same at a rational point, with exact phase reduction.
std::complex<double> eval_D(const RationalPhase& phase, std::int64_t N, const DivisorTable& tau3);

/// F(alpha, a/q, N) = q^-1 sum_{n <= N} weight_q(n) e((alpha - a/q) n).
std::complex<double> eval_F(double alpha, const RationalPhase& phase, std::int64_t N,
                            SingularSeriesConfig cfg = {});

/// |D(alpha, N)|^2 next to sum_{|k| < N} V(k, N) e(alpha k).
struct FourierIdentityCheck {
  double alpha = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double relative_error = 0.0;
};
FourierIdentityCheck check_fourier_identity(double alpha, const CorrelationSeries& V, const DivisorTable& tau3);

struct GDeltaValue {
  double farey_route = 0.0;    // sum over a/q, q <= Delta, of |F|^2
  double fourier_route = 0.0;  // sum_{|k| < N} S_Delta(k, N) e(alpha k)
};

/// Both routes; throws ConsistencyError if they differ by more than
/// rel_tolerance relative to the larger magnitude.
GDeltaValue eval_G_delta(double alpha, std::int64_t N, std::int64_t Delta, SingularSeriesConfig cfg = {},
                         double rel_tolerance = 1e-6);

/// Exact V next to S_Delta for k in [0, N-1].
struct CorrelationProfile {
  std::int64_t N = 0;
  std::int64_t Delta = 0;
  SingularSeriesConfig config;
  CorrelationSeries V;
  std::vector<double> S;
};

CorrelationProfile correlation_profile(std::int64_t N, std::int64_t Delta, SingularSeriesConfig cfg = {},
                                       CorrelationMethod method = CorrelationMethod::modular_transform,
                                       ExecPolicy policy = {});

struct MomentStatistic {
  std::int64_t N = 0;
  std::int64_t Delta = 0;
  double second_moment = 0.0;  // sum_{1 <= k < N} (V - S_Delta)^2
  double ratio = 0.0;          // second_moment / N^{299/100}
};

MomentStatistic moment_statistic(const CorrelationProfile& profile);

/// Delta <= 0 selects floor(N^{4/19}).
MomentStatistic theorem1_statistic(std::int64_t N, std::int64_t Delta = 0, SingularSeriesConfig cfg = {},
                                   ExecPolicy policy = {});

}  // namespace tau3corr
