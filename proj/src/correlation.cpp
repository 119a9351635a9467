#include "tau3corr/correlation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tau3corr/errors.hpp"
#include "tau3corr/modular_transform.hpp"
#include "tau3corr/summation.hpp"

namespace tau3corr {

std::string_view to_string(CorrelationMethod m) {
  return m == CorrelationMethod::direct ? "direct" : "modular_transform";
}

CorrelationSeries correlation_series(std::int64_t N, CorrelationMethod method, CorrelationLimits limits) {
  if (N < 2) throw std::invalid_argument("correlation_series: N must be >= 2");
  return correlation_series(sieve(DivisorKind::tau3, N), N, method, limits);
}

CorrelationSeries correlation_series(const DivisorTable& tau3, std::int64_t N, CorrelationMethod method,
                                     CorrelationLimits limits) {
  if (N < 2) throw std::invalid_argument("correlation_series: N must be >= 2");
  if (tau3.kind() != DivisorKind::tau3 || tau3.n_max() < N) {
    throw std::invalid_argument("correlation_series: need a tau3 table covering N = " + std::to_string(N));
  }
  const auto t = tau3.values().first(static_cast<std::size_t>(N));
  CorrelationSeries out{N, {}, method};
  if (method == CorrelationMethod::direct) {
    if (N > limits.max_direct_n) {
      throw SizingError("correlation_series: N = " + std::to_string(N) + " exceeds the direct-method limit " +
                        std::to_string(limits.max_direct_n));
    }
    unsigned __int128 energy = 0;
    for (auto x : t) energy += static_cast<unsigned __int128>(x) * static_cast<unsigned __int128>(x);
    if (energy > static_cast<unsigned __int128>(INT64_MAX)) throw OverflowError("correlation_series: V(0) exceeds 2^63 - 1");
    out.values.assign(static_cast<std::size_t>(N), 0);
    for (std::int64_t k = 0; k < N; ++k) {
      std::int64_t v = 0;
      for (std::int64_t i = 0; i + k < N; ++i) v += t[i] * t[i + k];
      out.values[k] = v;
    }
    return out;
  }
  if (N > limits.max_transform_n) {
    throw SizingError("correlation_series: N = " + std::to_string(N) + " exceeds the transform limit " +
                      std::to_string(limits.max_transform_n));
  }
  out.values = modular_autocorrelation(t);
  return out;
}

namespace {

void require_table(const DivisorTable& tau3, std::int64_t N, const char* who) {
  if (N < 1) throw std::invalid_argument(std::string(who) + ": N must be >= 1");
  if (tau3.kind() != DivisorKind::tau3 || tau3.n_max() < N) {
    throw std::invalid_argument(std::string(who) + ": need a tau3 table covering N");
  }
}

// e(x) with x reduced mod 1 in extended precision.
std::complex<double> unit_phase(long double x) {
  const long double frac = x - std::floor(x);
  const double angle = static_cast<double>(2.0L * std::numbers::pi_v<long double> * frac);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

std::complex<double> eval_D(double alpha, std::int64_t N, const DivisorTable& tau3) {
  require_table(tau3, N, "eval_D");
  CompensatedComplexSum s;
  const long double a = alpha;
  for (std::int64_t n = 1; n <= N; ++n) {
    s.add(static_cast<double>(tau3[n]) * unit_phase(a * static_cast<long double>(n)));
  }
  return s.value();
}

std::complex<double> eval_D(const RationalPhase& phase, std::int64_t N, const DivisorTable& tau3) {
  require_table(tau3, N, "eval_D");
  const std::int64_t q = phase.q();
  std::vector<std::complex<double>> roots(static_cast<std::size_t>(q));
  for (std::int64_t r = 0; r < q; ++r) {
    roots[r] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(q));
  }
  CompensatedComplexSum s;
  std::int64_t r = 0;
  for (std::int64_t n = 1; n <= N; ++n) {
    r += phase.a();
    if (r >= q) r -= q;
    s.add(static_cast<double>(tau3[n]) * roots[r]);
  }
  return s.value();
}

std::complex<double> eval_F(double alpha, const RationalPhase& phase, std::int64_t N, SingularSeriesConfig cfg) {
  if (N < 1) throw std::invalid_argument("eval_F: N must be >= 1");
  const LaurentCoeffs c = laurent_coeffs(phase.q(), cfg.convention);
  const WeightPolynomial w = weight_polynomial(c, cfg.form);
  const long double beta = static_cast<long double>(alpha) - static_cast<long double>(phase.a()) / phase.q();
  CompensatedComplexSum s;
  for (std::int64_t n = 1; n <= N; ++n) {
    s.add(w(std::log(static_cast<double>(n))) * unit_phase(beta * static_cast<long double>(n)));
  }
  return s.value() / static_cast<double>(phase.q());
}

FourierIdentityCheck check_fourier_identity(double alpha, const CorrelationSeries& V, const DivisorTable& tau3) {
  const std::int64_t N = V.n_max;
  FourierIdentityCheck out{alpha, std::norm(eval_D(alpha, N, tau3)), 0.0, 0.0};
  CompensatedSum rhs(static_cast<double>(V.values[0]));
  const long double a = alpha;
  for (std::int64_t k = 1; k < N; ++k) {
    rhs.add(2.0 * static_cast<double>(V.values[k]) * unit_phase(a * static_cast<long double>(k)).real());
  }
  out.rhs = rhs.value();
  out.relative_error = std::abs(out.lhs - out.rhs) / std::max(std::abs(out.lhs), 1.0);
  return out;
}

GDeltaValue eval_G_delta(double alpha, std::int64_t N, std::int64_t Delta, SingularSeriesConfig cfg,
                         double rel_tolerance) {
  if (Delta < 1) throw std::domain_error("eval_G_delta: Delta must be >= 1");
  if (N < 1) throw std::invalid_argument("eval_G_delta: N must be >= 1");
  GDeltaValue out;
  CompensatedSum farey;
  for (const RationalPhase& p : farey_fractions(Delta)) farey.add(std::norm(eval_F(alpha, p, N, cfg)));
  out.farey_route = farey.value();

  const std::vector<double> S = s_delta_profile(N, Delta, cfg);
  CompensatedSum fourier(S[0]);
  const long double a = alpha;
  for (std::int64_t k = 1; k < N; ++k) fourier.add(2.0 * S[k] * unit_phase(a * static_cast<long double>(k)).real());
  out.fourier_route = fourier.value();

  const double scale = std::max(std::abs(out.farey_route), std::abs(out.fourier_route));
  if (std::abs(out.farey_route - out.fourier_route) > rel_tolerance * scale) {
    throw ConsistencyError("eval_G_delta: routes disagree (" + std::to_string(out.farey_route) + " vs " +
                           std::to_string(out.fourier_route) + ")");
  }
  return out;
}

CorrelationProfile correlation_profile(std::int64_t N, std::int64_t Delta, SingularSeriesConfig cfg,
                                       CorrelationMethod method, ExecPolicy policy) {
  if (N < 2) throw std::invalid_argument("correlation_profile: N must be >= 2");
  if (Delta <= 0) Delta = default_delta(N);
  CorrelationProfile out{N, Delta, cfg, correlation_series(N, method), {}};
  out.S = s_delta_profile(N, Delta, cfg, policy);
  return out;
}

MomentStatistic moment_statistic(const CorrelationProfile& p) {
  CompensatedSum s;
  for (std::int64_t k = 1; k < p.N; ++k) {
    const double d = static_cast<double>(p.V.values[k]) - p.S[k];
    s.add(d * d);
  }
  const double m = s.value();
  return {p.N, p.Delta, m, m / std::pow(static_cast<double>(p.N), 2.99)};
}

MomentStatistic theorem1_statistic(std::int64_t N, std::int64_t Delta, SingularSeriesConfig cfg, ExecPolicy policy) {
  if (N < 64) throw std::invalid_argument("theorem1_statistic: N must be >= 64");
  return moment_statistic(correlation_profile(N, Delta, cfg, CorrelationMethod::modular_transform, policy));
}

}  // namespace tau3corr
