#include "tau3corr/singular_series.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tau3corr/arith.hpp"
#include "tau3corr/constants.hpp"
#include "tau3corr/errors.hpp"
#include "tau3corr/summation.hpp"

namespace tau3corr {

std::string_view to_string(LaurentConvention c) {
  return c == LaurentConvention::complete ? "complete" : "printed";
}

std::string_view to_string(MainTermForm f) { return f == MainTermForm::density ? "density" : "printed"; }

LaurentCoeffs laurent_coeffs(std::int64_t q, LaurentConvention convention) {
  if (q < 1) throw std::invalid_argument("laurent_coeffs: q must be >= 1");
  const bool complete = convention == LaurentConvention::complete;
  const double L = std::log(static_cast<double>(q));
  const double qd = static_cast<double>(q);

  std::vector<double> g0(static_cast<std::size_t>(q) + 1), g1;
  for (std::int64_t alpha = 1; alpha <= q; ++alpha) g0[alpha] = stieltjes0(static_cast<double>(alpha) / qd);
  if (complete) {
    g1.resize(g0.size());
    for (std::int64_t alpha = 1; alpha <= q; ++alpha) g1[alpha] = stieltjes1(static_cast<double>(alpha) / qd);
  }
  // For fixed alpha with g = gcd(alpha, q), q | alpha beta iff beta is a
  // multiple of q/g; the beta-sum of gamma_0(beta/q) depends on g only.
  std::vector<double> beta_sum(static_cast<std::size_t>(q) + 1, 0.0);
  for (std::int64_t g : divisors(q)) {
    CompensatedSum s;
    for (std::int64_t beta = q / g; beta <= q; beta += q / g) s.add(g0[beta]);
    beta_sum[g] = s.value();
  }

  CompensatedSum a_sum, b_sum, c_sum;
  for (std::int64_t alpha = 1; alpha <= q; ++alpha) {
    const std::int64_t g = std::gcd(alpha, q);
    const double gd = static_cast<double>(g);
    a_sum.add(gd);
    b_sum.add(gd * (3.0 * g0[alpha] - 3.0 * L));
    c_sum.add(3.0 * g0[alpha] * beta_sum[g]);
    c_sum.add(-9.0 * gd * g0[alpha] * L);
    c_sum.add(4.5 * gd * L * L);
    if (complete) c_sum.add(-3.0 * gd * g1[alpha]);
  }
  return {q, a_sum.value() / qd, b_sum.value() / qd, c_sum.value() / qd};
}

LaurentCoeffs laurent_coeffs_oracle(std::int64_t q, std::int64_t a, LaurentConvention convention) {
  if (q < 1 || q > 64) throw std::domain_error("laurent_coeffs_oracle: q must lie in [1, 64]");
  if (std::gcd(a, q) != 1) throw std::invalid_argument("laurent_coeffs_oracle: a must be coprime to q");
  const bool complete = convention == LaurentConvention::complete;
  const double qd = static_cast<double>(q);
  const double L = std::log(qd);
  const std::int64_t ar = ((a % q) + q) % q;

  std::vector<std::complex<double>> roots(static_cast<std::size_t>(q));
  for (std::int64_t r = 0; r < q; ++r) roots[r] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / qd);
  std::vector<double> g0(static_cast<std::size_t>(q) + 1), g1(static_cast<std::size_t>(q) + 1, 0.0);
  for (std::int64_t x = 1; x <= q; ++x) {
    g0[x] = stieltjes0(static_cast<double>(x) / qd);
    if (complete) g1[x] = stieltjes1(static_cast<double>(x) / qd);
  }

  CompensatedComplexSum A, B, C;
  for (std::int64_t alpha = 1; alpha <= q; ++alpha) {
    for (std::int64_t beta = 1; beta <= q; ++beta) {
      const double wb = 3.0 * g0[alpha] - 3.0 * L;
      const double wc = 3.0 * g0[alpha] * g0[beta] - 9.0 * g0[alpha] * L + 4.5 * L * L - 3.0 * g1[alpha];
      for (std::int64_t gamma = 1; gamma <= q; ++gamma) {
        const std::complex<double> e = roots[(((ar * alpha) % q) * beta % q) * gamma % q];
        A.add(e);
        B.add(e * wb);
        C.add(e * wc);
      }
    }
  }
  const double tol = 1e-8 * qd * qd * qd;
  for (auto z : {A.value(), B.value(), C.value()}) {
    if (std::abs(z.imag()) > tol) {
      throw ConsistencyError("laurent_coeffs_oracle: imaginary residue " + std::to_string(z.imag()) +
                             " at q = " + std::to_string(q));
    }
  }
  const double norm = qd * qd;
  return {q, A.value().real() / norm, B.value().real() / norm, C.value().real() / norm};
}

std::vector<LaurentCoeffs> laurent_table(std::int64_t q_max, LaurentConvention convention) {
  if (q_max < 1) throw std::invalid_argument("laurent_table: q_max must be >= 1");
  const bool complete = convention == LaurentConvention::complete;
  const double gamma = euler_gamma();
  const double gamma1 = stieltjes_gamma1();
  const DivisorTable phi = sieve(DivisorKind::phi, q_max);
  const DivisorTable mu = sieve(DivisorKind::mu, q_max);
  const std::size_t size = static_cast<std::size_t>(q_max) + 1;

  std::vector<double> logs(size, 0.0), s0(size, 0.0), s1(size, 0.0);
  for (std::int64_t n = 1; n <= q_max; ++n) {
    const double nd = static_cast<double>(n);
    logs[n] = std::log(nd);
    s0[n] = nd * (gamma + logs[n]);
    s1[n] = nd * (gamma1 - gamma * logs[n] - 0.5 * logs[n] * logs[n]);
  }
  // Sums of gamma_0(a/m), gamma_1(a/m) over 1 <= a <= m with gcd(a, m) = 1.
  std::vector<CompensatedSum> coprime0(size), coprime1(size);
  for (std::int64_t e = 1; e <= q_max; ++e) {
    if (mu[e] == 0) continue;
    const double sign = static_cast<double>(mu[e]);
    for (std::int64_t j = 1, m = e; m <= q_max; ++j, m += e) {
      coprime0[m].add(sign * s0[j]);
      coprime1[m].add(sign * s1[j]);
    }
  }
  // alpha = d alpha' with d = gcd(alpha, q), m = q/d, gcd(alpha', m) = 1.
  std::vector<CompensatedSum> a_sum(size), b_sum(size), c_sum(size);
  for (std::int64_t d = 1; d <= q_max; ++d) {
    const double dd = static_cast<double>(d);
    for (std::int64_t m = 1, q = d; q <= q_max; ++m, q += d) {
      const double L = logs[q];
      const double ph = static_cast<double>(phi[m]);
      const double G0 = coprime0[m].value();
      a_sum[q].add(dd * ph);
      b_sum[q].add(3.0 * dd * G0);
      b_sum[q].add(-3.0 * dd * ph * L);
      c_sum[q].add(3.0 * G0 * s0[d]);
      c_sum[q].add(-9.0 * dd * G0 * L);
      c_sum[q].add(4.5 * dd * ph * L * L);
      if (complete) c_sum[q].add(-3.0 * dd * coprime1[m].value());
    }
  }
  std::vector<LaurentCoeffs> table(size);
  for (std::int64_t q = 1; q <= q_max; ++q) {
    const double qd = static_cast<double>(q);
    table[q] = {q, a_sum[q].value() / qd, b_sum[q].value() / qd, c_sum[q].value() / qd};
  }
  return table;
}

WeightPolynomial weight_polynomial(const LaurentCoeffs& c, MainTermForm form) {
  if (form == MainTermForm::density) return {c.A / 2.0, c.B, c.C};
  return {c.A / 2.0, -(c.A - c.B), c.A - c.B + c.C};
}

WeightVector weights(const LaurentCoeffs& c, MainTermForm form) {
  const WeightPolynomial p = weight_polynomial(c, form);
  return {c.q, {p.a2 * p.a2, p.a2 * p.a1, p.a1 * p.a1, p.a2 * p.a0, p.a1 * p.a0, p.a0 * p.a0}};
}

WeightVector weights(std::int64_t q, MainTermForm form, LaurentConvention convention) {
  return weights(laurent_coeffs(q, convention), form);
}

namespace {

void require_shift(std::int64_t N, std::int64_t k, const char* who) {
  if (N < 1 || k < 0 || k > N - 1) {
    throw std::invalid_argument(std::string(who) + ": need 0 <= k <= N-1 (N = " + std::to_string(N) +
                                ", k = " + std::to_string(k) + ")");
  }
}

std::vector<double> log_table(std::int64_t N) {
  std::vector<double> lg(static_cast<std::size_t>(N) + 1, 0.0);
  for (std::int64_t n = 1; n <= N; ++n) lg[n] = std::log(static_cast<double>(n));
  return lg;
}

// Prefix sums of log n and log^2 n, compensated.
struct LogPrefix {
  std::vector<double> p1, p2;
};

LogPrefix log_prefix(const std::vector<double>& lg) {
  LogPrefix out{std::vector<double>(lg.size(), 0.0), std::vector<double>(lg.size(), 0.0)};
  CompensatedSum s1, s2;
  for (std::size_t n = 1; n < lg.size(); ++n) {
    s1.add(lg[n]);
    s2.add(lg[n] * lg[n]);
    out.p1[n] = s1.value();
    out.p2[n] = s2.value();
  }
  return out;
}

TSums t_sums_from(const std::vector<double>& lg, const LogPrefix& pre, std::int64_t N, std::int64_t k) {
  const std::int64_t len = N - k;
  // Plain sums over blocks of 64 terms, blocks combined with compensation.
  constexpr std::int64_t kBlock = 64;
  CompensatedSum t1, t2, t3;
  for (std::int64_t start = 1; start <= len; start += kBlock) {
    const std::int64_t stop = std::min(len, start + kBlock - 1);
    double b1 = 0.0, b2 = 0.0, b3 = 0.0;
    for (std::int64_t n = start; n <= stop; ++n) {
      const double a = lg[n];
      const double b = lg[n + k];
      const double ab = a * b;
      b1 += ab * ab;
      b2 += ab * (a + b);
      b3 += ab;
    }
    t1.add(b1);
    t2.add(b2);
    t3.add(b3);
  }
  // sum_{n<=len} log^p n + sum_{k < m <= N} log^p m
  const double t4 = pre.p2[len] + (pre.p2[N] - pre.p2[k]);
  const double t5 = pre.p1[len] + (pre.p1[N] - pre.p1[k]);
  return {t1.value(), t2.value(), t3.value(), t4, t5, static_cast<double>(len)};
}

}  // namespace

TSums t_sums(std::int64_t N, std::int64_t k) {
  require_shift(N, k, "t_sums");
  const std::vector<double> lg = log_table(N);
  return t_sums_from(lg, log_prefix(lg), N, k);
}

TSumProfile t_sum_profile(std::int64_t N, ExecPolicy policy) {
  if (N < 1) throw std::invalid_argument("t_sum_profile: N must be >= 1");
  const std::vector<double> lg = log_table(N);
  const LogPrefix pre = log_prefix(lg);
  TSumProfile out{N, std::vector<TSums>(static_cast<std::size_t>(N))};
  parallel_for(0, static_cast<std::size_t>(N), policy, [&](std::size_t k) {
    out.rows[k] = t_sums_from(lg, pre, N, static_cast<std::int64_t>(k));
  });
  return out;
}

double w_q_direct(const LaurentCoeffs& c, MainTermForm form, std::int64_t N, std::int64_t k) {
  require_shift(N, k, "w_q_direct");
  const WeightPolynomial p = weight_polynomial(c, form);
  CompensatedSum s;
  for (std::int64_t n = 1; n <= N - k; ++n) {
    const double l1 = std::log(static_cast<double>(n));
    const double l2 = std::log(static_cast<double>(n + k));
    s.add(p.a2 * p.a2 * l1 * l1 * l2 * l2);
    s.add(p.a2 * p.a1 * l1 * l2 * (l1 + l2));
    s.add(p.a1 * p.a1 * l1 * l2);
    s.add(p.a2 * p.a0 * (l1 * l1 + l2 * l2));
    s.add(p.a1 * p.a0 * (l1 + l2));
    s.add(p.a0 * p.a0);
  }
  return s.value();
}

std::int64_t default_delta(std::int64_t N, double exponent) {
  if (N < 1) throw std::invalid_argument("default_delta: N must be >= 1");
  const double d = std::floor(std::pow(static_cast<double>(N), exponent) + 1e-9);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(d));
}

namespace {

void require_delta(std::int64_t N, std::int64_t Delta) {
  if (Delta < 1) throw std::domain_error("S_Delta: Delta must be >= 1, got " + std::to_string(Delta));
  if (Delta > N) throw std::invalid_argument("S_Delta: Delta must not exceed N");
}

double combine(const WeightVector& w, const TSums& t) {
  CompensatedSum s;
  for (std::size_t j = 0; j < 6; ++j) s.add(w.w[j] * t[j]);
  return s.value();
}

}  // namespace

double s_delta(std::int64_t N, std::int64_t Delta, std::int64_t k, SingularSeriesConfig cfg) {
  require_delta(N, Delta);
  const std::int64_t absk = k < 0 ? -k : k;
  require_shift(N, absk, "s_delta");
  const TSums t = t_sums(N, absk);
  CompensatedSum s;
  for (std::int64_t q = 1; q <= Delta; ++q) {
    const double c = static_cast<double>(ramanujan_sum(q, absk));
    if (c == 0.0) continue;
    const WeightVector w = weights(laurent_coeffs(q, cfg.convention), cfg.form);
    s.add(c * combine(w, t) / static_cast<double>(q * q));
  }
  return s.value();
}

std::vector<double> s_delta_profile(const TSumProfile& tsums, std::int64_t Delta, SingularSeriesConfig cfg) {
  const std::int64_t N = tsums.N;
  require_delta(N, Delta);
  std::vector<WeightVector> w;
  for (std::int64_t q = 1; q <= Delta; ++q) w.push_back(weights(laurent_coeffs(q, cfg.convention), cfg.form));
  std::vector<std::vector<double>> cq(static_cast<std::size_t>(Delta) + 1);
  for (std::int64_t q = 1; q <= Delta; ++q) {
    // c_q(k) is periodic in k with period q.
    cq[q].resize(static_cast<std::size_t>(q));
    for (std::int64_t r = 0; r < q; ++r) cq[q][r] = static_cast<double>(ramanujan_sum(q, r));
  }
  std::vector<double> out(static_cast<std::size_t>(N));
  for (std::int64_t k = 0; k < N; ++k) {
    CompensatedSum s;
    for (std::int64_t q = 1; q <= Delta; ++q) {
      const double c = cq[q][k % q];
      if (c == 0.0) continue;
      s.add(c * combine(w[q - 1], tsums.rows[k]) / static_cast<double>(q * q));
    }
    out[k] = s.value();
  }
  return out;
}

std::vector<double> s_delta_profile(std::int64_t N, std::int64_t Delta, SingularSeriesConfig cfg,
                                    ExecPolicy policy) {
  require_delta(N, Delta);
  return s_delta_profile(t_sum_profile(N, policy), Delta, cfg);
}

double MainTermPoly::operator()(double log_n) const noexcept {
  double v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * log_n + *it;
  return v;
}

namespace {

EMTCoeffs emt_from(std::int64_t ell, std::int64_t b, const std::vector<std::int64_t>& divs,
                   const auto& coeffs_of) {
  CompensatedSum A, B, C;
  for (std::int64_t q : divs) {
    const LaurentCoeffs c = coeffs_of(q);
    const double w = static_cast<double>(ramanujan_sum(q, b)) / static_cast<double>(q);
    if (w == 0.0) continue;
    A.add(w * c.A);
    B.add(w * c.B);
    C.add(w * c.C);
  }
  const double l = static_cast<double>(ell);
  return {ell, b, A.value() / l, B.value() / l, C.value() / l};
}

void require_residue(std::int64_t ell, std::int64_t b) {
  if (ell < 1) throw std::invalid_argument("emt_coeffs: ell must be >= 1");
  if (b < 1) throw std::invalid_argument("emt_coeffs: b must be >= 1");
}

}  // namespace

EMTCoeffs emt_coeffs(std::int64_t ell, std::int64_t b, LaurentConvention convention) {
  require_residue(ell, b);
  return emt_from(ell, b, divisors(ell), [&](std::int64_t q) { return laurent_coeffs(q, convention); });
}

EMTCoeffs emt_coeffs(std::int64_t ell, std::int64_t b, std::span<const LaurentCoeffs> table) {
  require_residue(ell, b);
  if (static_cast<std::int64_t>(table.size()) <= ell) {
    throw std::invalid_argument("emt_coeffs: Laurent table does not cover ell = " + std::to_string(ell));
  }
  return emt_from(ell, b, divisors(ell), [&](std::int64_t q) { return table[q]; });
}

MainTermPoly emt_poly(const EMTCoeffs& c) {
  return {2, {c.A_tilde - c.B_tilde + c.C_tilde, -(c.A_tilde - c.B_tilde), 0.5 * c.A_tilde},
          MainTermPoly::Scale::per_n};
}

MainTermPoly emt_poly(std::int64_t ell, std::int64_t b, LaurentConvention convention) {
  return emt_poly(emt_coeffs(ell, b, convention));
}

double residue_main_term(const LaurentCoeffs& c, double n) {
  if (!(n >= 1.0)) throw std::invalid_argument("residue_main_term: n must be >= 1");
  const double L = std::log(n);
  return n / static_cast<double>(c.q) * (0.5 * c.A * L * L - (c.A - c.B) * L + (c.A - c.B + c.C));
}

double residue_main_term(std::int64_t q, double n, LaurentConvention convention) {
  return residue_main_term(laurent_coeffs(q, convention), n);
}

}  // namespace tau3corr
