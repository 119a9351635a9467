#include "tau3corr/arith.hpp"

#include <cmath>
#include <complex>
#include <new>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tau3corr/errors.hpp"

namespace tau3corr {

std::string_view to_string(DivisorKind kind) {
  switch (kind) {
    case DivisorKind::tau3: return "tau3";
    case DivisorKind::tau2: return "tau2";
    case DivisorKind::tau3_squared: return "tau3_squared";
    case DivisorKind::phi: return "phi";
    case DivisorKind::mu: return "mu";
  }
  return "unknown";
}

DivisorTable::DivisorTable(DivisorKind kind, std::vector<std::int64_t> values)
    : kind_(kind), values_(std::move(values)) {
  if (values_.size() < 2) throw std::invalid_argument("DivisorTable: empty table");
}

std::int64_t DivisorTable::at(std::int64_t n) const {
  if (n < 1 || n > n_max()) {
    throw std::out_of_range("DivisorTable::at: n = " + std::to_string(n) + " outside [1, " +
                            std::to_string(n_max()) + "]");
  }
  return (*this)[n];
}

namespace {

std::vector<std::int64_t> allocate(std::int64_t n_max, std::int64_t fill) {
  if (n_max < 1) throw std::invalid_argument("sieve: n_max must be >= 1, got " + std::to_string(n_max));
  if (n_max > kMaxSieveSize) {
    throw SizingError("sieve: n_max = " + std::to_string(n_max) + " exceeds the table limit " +
                      std::to_string(kMaxSieveSize));
  }
  try {
    return std::vector<std::int64_t>(static_cast<std::size_t>(n_max) + 1, fill);
  } catch (const std::bad_alloc&) {
    throw SizingError("sieve: cannot allocate a table for n_max = " + std::to_string(n_max));
  }
}

// out[m] = sum_{d | m} in[m / d]
std::vector<std::int64_t> convolve_with_one(const std::vector<std::int64_t>& in) {
  const std::size_t n = in.size() - 1;
  std::vector<std::int64_t> out = allocate(static_cast<std::int64_t>(n), 0);
  for (std::size_t d = 1; d <= n; ++d) {
    for (std::size_t j = 1, m = d; m <= n; ++j, m += d) out[m] += in[j];
  }
  return out;
}

std::vector<std::int64_t> sieve_phi_mu(std::int64_t n_max, bool want_phi) {
  std::vector<std::int64_t> phi = allocate(n_max, 0);
  std::vector<std::int64_t> mu = allocate(n_max, 0);
  std::vector<std::int64_t> primes;
  phi[1] = 1;
  mu[1] = 1;
  std::vector<bool> composite(static_cast<std::size_t>(n_max) + 1, false);
  for (std::int64_t i = 2; i <= n_max; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      phi[i] = i - 1;
      mu[i] = -1;
    }
    for (std::int64_t p : primes) {
      const std::int64_t m = i * p;
      if (m > n_max) break;
      composite[m] = true;
      if (i % p == 0) {
        phi[m] = phi[i] * p;
        mu[m] = 0;
        break;
      }
      phi[m] = phi[i] * (p - 1);
      mu[m] = -mu[i];
    }
  }
  return want_phi ? phi : mu;
}

}  // namespace

DivisorTable sieve(DivisorKind kind, std::int64_t n_max) {
  switch (kind) {
    case DivisorKind::tau2: {
      std::vector<std::int64_t> ones = allocate(n_max, 1);
      return DivisorTable(kind, convolve_with_one(ones));
    }
    case DivisorKind::tau3:
    case DivisorKind::tau3_squared: {
      std::vector<std::int64_t> ones = allocate(n_max, 1);
      std::vector<std::int64_t> t3 = convolve_with_one(convolve_with_one(ones));
      if (kind == DivisorKind::tau3_squared) {
        for (std::size_t n = 1; n < t3.size(); ++n) {
          std::int64_t sq;
          if (__builtin_mul_overflow(t3[n], t3[n], &sq)) {
            throw OverflowError("sieve: tau3(" + std::to_string(n) + ")^2 overflows 64 bits");
          }
          t3[n] = sq;
        }
      }
      return DivisorTable(kind, std::move(t3));
    }
    case DivisorKind::phi: return DivisorTable(kind, sieve_phi_mu(n_max, true));
    case DivisorKind::mu: return DivisorTable(kind, sieve_phi_mu(n_max, false));
  }
  throw std::invalid_argument("sieve: unknown kind");
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("divisors: n must be >= 1");
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::int64_t tau_k_pointwise(int k, std::int64_t n) {
  if (k < 1 || n < 1) throw std::invalid_argument("tau_k_pointwise: k and n must be >= 1");
  if (k == 1) return 1;
  std::int64_t total = 0;
  for (std::int64_t d : divisors(n)) {
    if (__builtin_add_overflow(total, tau_k_pointwise(k - 1, n / d), &total)) {
      throw OverflowError("tau_k_pointwise: overflow at k = " + std::to_string(k) + ", n = " +
                          std::to_string(n));
    }
  }
  return total;
}

std::int64_t euler_phi(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("euler_phi: n must be >= 1");
  std::int64_t result = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

int mobius(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("mobius: n must be >= 1");
  int sign = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      sign = -sign;
    }
  }
  if (n > 1) sign = -sign;
  return sign;
}

std::int64_t ramanujan_sum(std::int64_t q, std::int64_t k) {
  if (q < 1) throw std::invalid_argument("ramanujan_sum: q must be >= 1");
  const std::int64_t g = std::gcd(q, k < 0 ? -k : k);
  const std::int64_t m = q / g;
  return mobius(m) * (euler_phi(q) / euler_phi(m));
}

std::int64_t ramanujan_sum(std::int64_t q, std::int64_t k, const DivisorTable& phi,
                           const DivisorTable& mu) {
  if (q < 1) throw std::invalid_argument("ramanujan_sum: q must be >= 1");
  const std::int64_t g = std::gcd(q, k < 0 ? -k : k);
  const std::int64_t m = q / g;
  return mu[m] * (phi[q] / phi[m]);
}

std::int64_t ramanujan_sum_bruteforce(std::int64_t q, std::int64_t k) {
  if (q < 1 || q > 10'000) throw std::domain_error("ramanujan_sum_bruteforce: q must lie in [1, 10^4]");
  const std::int64_t kr = ((k % q) + q) % q;
  std::complex<double> total{0.0, 0.0};
  for (std::int64_t a = 1; a <= q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    // Reduce the numerator first so the angle stays exact.
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((a * kr) % q) / static_cast<double>(q);
    total += std::polar(1.0, angle);
  }
  if (std::abs(total.imag()) >= 1e-6) {
    throw ConsistencyError("ramanujan_sum_bruteforce: imaginary residue " + std::to_string(total.imag()) +
                           " at q = " + std::to_string(q));
  }
  const double rounded = std::round(total.real());
  if (std::abs(total.real() - rounded) >= 1e-6) {
    throw ConsistencyError("ramanujan_sum_bruteforce: real part not integral at q = " + std::to_string(q));
  }
  return static_cast<std::int64_t>(rounded);
}

RationalPhase::RationalPhase(std::int64_t a, std::int64_t q) {
  if (q < 1) throw std::invalid_argument("RationalPhase: q must be >= 1");
  a = ((a % q) + q) % q;
  if (a == 0) a = q;
  const std::int64_t g = std::gcd(a, q);
  a_ = a / g;
  q_ = q / g;
}

std::vector<RationalPhase> farey_fractions(std::int64_t order) {
  std::vector<RationalPhase> out;
  for (std::int64_t q = 1; q <= order; ++q) {
    for (std::int64_t a = 1; a <= q; ++a) {
      if (std::gcd(a, q) == 1) out.emplace_back(a, q);
    }
  }
  return out;
}

std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
  std::vector<std::int64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::int64_t m = i * i; m <= limit; m += i) composite[m] = true;
  }
  return primes;
}

}  // namespace tau3corr
