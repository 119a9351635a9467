#include "tau3corr/variance.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tau3corr/correlation.hpp"
#include "tau3corr/errors.hpp"
#include "tau3corr/summation.hpp"

namespace tau3corr {

APSumTable ap_sums(std::int64_t N, std::int64_t ell) {
  if (N < 1) throw std::invalid_argument("ap_sums: N must be >= 1");
  return ap_sums(sieve(DivisorKind::tau3, N), N, ell);
}

APSumTable ap_sums(const DivisorTable& tau3, std::int64_t N, std::int64_t ell) {
  if (N < 1 || ell < 1 || ell > N) throw std::invalid_argument("ap_sums: need 1 <= ell <= N");
  if (tau3.kind() != DivisorKind::tau3 || tau3.n_max() < N) throw std::invalid_argument("ap_sums: table does not cover N");
  APSumTable out{N, ell, std::vector<std::int64_t>(static_cast<std::size_t>(ell), 0)};
  for (std::int64_t b = 1; b <= ell; ++b) {
    std::int64_t s = 0;
    for (std::int64_t n = b; n <= N; n += ell) s += tau3[n];
    out.sums[b - 1] = s;
  }
  return out;
}

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v, const char* who) {
  if (v > static_cast<i128>(INT64_MAX) || v < static_cast<i128>(INT64_MIN)) {
    throw OverflowError(std::string(who) + ": value exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(v);
}

i128 energy(const DivisorTable& t, std::int64_t N) {
  i128 e = 0;
  for (std::int64_t n = 1; n <= N; ++n) e += static_cast<i128>(t[n]) * t[n];
  return e;
}

// A~, B~, C~ of (ell, g) for each divisor g of ell (b enters only through gcd(b, ell)).
struct GcdClassEMT {
  std::vector<std::int64_t> divs;
  std::vector<EMTCoeffs> coeffs;  // parallel to divs
};

GcdClassEMT emt_by_gcd(std::int64_t ell, std::span<const LaurentCoeffs> table, const DivisorTable& phi,
                       const DivisorTable& mu) {
  GcdClassEMT out{divisors(ell), {}};
  const double l = static_cast<double>(ell);
  for (std::int64_t g : out.divs) {
    CompensatedSum A, B, C;
    for (std::int64_t q : out.divs) {
      const double w = static_cast<double>(ramanujan_sum(q, g, phi, mu)) / static_cast<double>(q);
      if (w == 0.0) continue;
      A.add(w * table[q].A);
      B.add(w * table[q].B);
      C.add(w * table[q].C);
    }
    out.coeffs.push_back({ell, g, A.value() / l, B.value() / l, C.value() / l});
  }
  return out;
}

}  // namespace

std::int64_t q1(std::int64_t N, Q1Route route) {
  if (N < 1) throw std::invalid_argument("q1: N must be >= 1");
  if (N == 1) return 1;
  const DivisorTable t3 = sieve(DivisorKind::tau3, N);
  if (route == Q1Route::direct) {
    if (N > kQ1DirectMax) throw SizingError("q1: direct route limited to N <= " + std::to_string(kQ1DirectMax));
    // Every ell contributes the diagonal; off-diagonal pairs n1 < n2 with ell | n2 - n1 count twice.
    i128 off = 0;
    for (std::int64_t ell = 1; ell <= N; ++ell) {
      for (std::int64_t n1 = 1; n1 + ell <= N; ++n1) {
        std::int64_t s = 0;
        for (std::int64_t n2 = n1 + ell; n2 <= N; n2 += ell) s += t3[n2];
        off += static_cast<i128>(t3[n1]) * s;
      }
    }
    return narrow(static_cast<i128>(N) * energy(t3, N) + 2 * off, "q1");
  }
  const DivisorTable t2 = sieve(DivisorKind::tau2, N);
  const CorrelationSeries V = correlation_series(t3, N, CorrelationMethod::modular_transform);
  i128 s = static_cast<i128>(N) * energy(t3, N);
  for (std::int64_t k = 1; k < N; ++k) s += 2 * static_cast<i128>(V.values[k]) * t2[k];
  return narrow(s, "q1");
}

LogPolyFit fit_log_polynomial(std::span<const std::int64_t> N, std::span<const double> Q, int degree) {
  if (N.size() != Q.size()) throw std::invalid_argument("fit_log_polynomial: size mismatch");
  if (degree < 0) throw std::invalid_argument("fit_log_polynomial: degree must be >= 0");
  LogPolyFit out;
  out.degree = degree;
  const auto m = static_cast<Eigen::Index>(N.size());
  if (m == 0) return out;
  double lmax = 0.0;
  for (auto n : N) lmax = std::max(lmax, std::log(static_cast<double>(n)));
  // Columns in x = log N / log N_max keep the design matrix well scaled.
  Eigen::MatrixXd X(m, degree + 1);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double n = static_cast<double>(N[i]);
    const double x = std::log(n) / lmax;
    double p = 1.0;
    for (int j = 0; j <= degree; ++j, p *= x) X(i, j) = p;
    y(i) = Q[i] / (n * n);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  out.rank = static_cast<int>(qr.rank());
  out.full_rank = out.rank == degree + 1;
  if (!out.full_rank) return out;
  const Eigen::VectorXd c = qr.solve(y);
  out.coeffs.resize(static_cast<std::size_t>(degree) + 1);
  for (int j = 0; j <= degree; ++j) out.coeffs[j] = c(j) / std::pow(lmax, j);
  const Eigen::VectorXd r = X * c - y;
  double ss = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) ss += (r(i) / y(i)) * (r(i) / y(i));
  out.rms_relative_residual = std::sqrt(ss / static_cast<double>(m));
  return out;
}

VarianceReport variance_Q(std::int64_t N, VarianceConfig cfg, ExecPolicy policy) {
  if (N < 16) throw std::invalid_argument("variance_Q: N must be >= 16");
  const DivisorTable t3 = sieve(DivisorKind::tau3, N);
  const std::vector<LaurentCoeffs> table = laurent_table(N, cfg.convention);
  const DivisorTable phi = sieve(DivisorKind::phi, N);
  const DivisorTable mu = sieve(DivisorKind::mu, N);
  const double n = static_cast<double>(N);
  const double L = std::log(n);

  // Per ell, the EMT depends on b only through gcd(b, ell).
  std::vector<double> per_ell(static_cast<std::size_t>(N) + 1, 0.0);
  parallel_for(1, static_cast<std::size_t>(N) + 1, policy, [&](std::size_t idx) {
    const auto ell = static_cast<std::int64_t>(idx);
    // main[b % ell]: marking multiples of each divisor in increasing order
    // leaves the value of the largest one, gcd(b, ell).
    std::vector<double> main(static_cast<std::size_t>(ell), 0.0);
    for (const EMTCoeffs& e : emt_by_gcd(ell, table, phi, mu).coeffs) {
      const double v = n * emt_poly(e)(L);
      for (std::int64_t b = e.b; b <= ell; b += e.b) main[b % ell] = v;
    }
    // buckets[b % ell], filled in one sequential pass
    std::vector<std::int64_t> buckets(static_cast<std::size_t>(ell), 0);
    std::int64_t r = 0;
    for (std::int64_t m = 1; m <= N; ++m) {
      if (++r == ell) r = 0;
      buckets[r] += t3[m];
    }
    CompensatedSum s;
    for (std::int64_t b = 1; b <= ell; ++b) {
      const double d = static_cast<double>(buckets[b % ell]) - main[b % ell];
      s.add(d * d);
    }
    per_ell[idx] = s.value();
  });
  CompensatedSum q;
  for (std::int64_t ell = 1; ell <= N; ++ell) q.add(per_ell[ell]);

  VarianceReport out;
  out.N = N;
  out.Q = q.value();
  out.leading_ratio = out.Q / (n * n * std::pow(L, 8));
  if (cfg.with_q1) {
    out.Q1_identity = q1(N, Q1Route::identity);
    if (N <= kQ1DirectMax) out.Q1_direct = q1(N, Q1Route::direct);
  }
  return out;
}

std::vector<std::int64_t> geometric_grid(int lo_exp, int hi_exp, int steps_per_octave) {
  if (lo_exp > hi_exp || steps_per_octave < 1) throw std::invalid_argument("geometric_grid: bad range");
  std::vector<std::int64_t> out;
  for (int i = 0; i <= (hi_exp - lo_exp) * steps_per_octave; ++i) {
    const auto v = static_cast<std::int64_t>(
        std::llround(std::exp2(lo_exp + static_cast<double>(i) / steps_per_octave)));
    if (out.empty() || v > out.back()) out.push_back(v);
  }
  return out;
}

VarianceSweep variance_sweep(std::span<const std::int64_t> grid, VarianceConfig cfg, ExecPolicy policy) {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] <= grid[i - 1]) throw std::invalid_argument("variance_sweep: grid must be strictly increasing");
  }
  VarianceSweep out;
  std::vector<double> Q;
  for (auto N : grid) {
    out.reports.push_back(variance_Q(N, cfg, policy));
    Q.push_back(out.reports.back().Q);
  }
  out.fit = fit_log_polynomial(grid, Q, 8);
  if (out.fit.full_rank) {
    for (auto& r : out.reports) r.fit_S8 = out.fit.coeffs.back();
  }
  return out;
}

EMTTailReport emt_tail_bounds(std::int64_t N_max, LaurentConvention convention) {
  if (N_max < 2 || N_max > 10000) throw std::invalid_argument("emt_tail_bounds: need 2 <= N_max <= 10^4");
  const std::vector<LaurentCoeffs> table = laurent_table(N_max, convention);
  const DivisorTable phi = sieve(DivisorKind::phi, N_max);
  const DivisorTable mu = sieve(DivisorKind::mu, N_max);
  EMTTailReport out;
  out.N_max = N_max;
  CompensatedSum a2, b2, c2;
  std::int64_t next = 2;
  for (std::int64_t ell = 1; ell <= N_max; ++ell) {
    // phi(ell/g) residues b share gcd(b, ell) = g.
    for (const EMTCoeffs& e : emt_by_gcd(ell, table, phi, mu).coeffs) {
      const double count = static_cast<double>(phi[ell / e.b]);
      a2.add(count * e.A_tilde * e.A_tilde);
      b2.add(count * e.B_tilde * e.B_tilde);
      c2.add(count * e.C_tilde * e.C_tilde);
    }
    if (ell == next || ell == N_max) {
      EMTTailRow row{ell, a2.value(), b2.value(), c2.value()};
      const double l2 = std::pow(std::log(static_cast<double>(ell)), 2);
      out.kappa_A = std::max(out.kappa_A, row.sum_A2 / l2);
      out.kappa_B = std::max(out.kappa_B, row.sum_B2 / l2);
      out.kappa_C = std::max(out.kappa_C, row.sum_C2 / l2);
      out.rows.push_back(row);
      if (ell == next) next *= 2;
    }
  }
  return out;
}

double emt_square_sum_prime(std::int64_t ell, LaurentConvention convention) {
  if (ell < 2) throw std::invalid_argument("emt_square_sum_prime: ell must be prime");
  const double l = static_cast<double>(ell);
  const double r = laurent_coeffs(ell, convention).A / l;
  return ((l - 1.0) * (1.0 - r) * (1.0 - r) + (1.0 + (l - 1.0) * r) * (1.0 + (l - 1.0) * r)) / (l * l);
}

}  // namespace tau3corr
