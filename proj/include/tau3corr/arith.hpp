#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace tau3corr {

enum class DivisorKind { tau3, tau2, tau3_squared, phi, mu };

std::string_view to_string(DivisorKind kind);

/// Largest table the sieve will build (entries are 64-bit).
inline constexpr std::int64_t kMaxSieveSize = 1'000'000'000;

/// Values of a multiplicative function on 1..n_max, exact 64-bit integers.
/// Immutable once built.
class DivisorTable {
 public:
  DivisorTable(DivisorKind kind, std::vector<std::int64_t> values);

  DivisorKind kind() const noexcept { return kind_; }
  std::int64_t n_max() const noexcept { return static_cast<std::int64_t>(values_.size()) - 1; }

  /// 1-based access, n in [1, n_max].
  std::int64_t operator[](std::int64_t n) const noexcept { return values_[static_cast<std::size_t>(n)]; }
  std::int64_t at(std::int64_t n) const;

  /// Values for n = 1..n_max (index 0 holds n = 1).
  std::span<const std::int64_t> values() const noexcept { return {values_.data() + 1, values_.size() - 1}; }

 private:
  DivisorKind kind_;
  std::vector<std::int64_t> values_;  // slot 0 unused
};

/// tau3 uses two cascaded divisor-sum passes (tau = 1*1, then tau3 = tau*1).
/// Throws SizingError if n_max exceeds kMaxSieveSize or memory runs out.
DivisorTable sieve(DivisorKind kind, std::int64_t n_max);

/// Number of ordered k-tuples with product n, by recursive divisor
/// enumeration. Oracle for the sieve. Throws OverflowError instead of wrapping.
std::int64_t tau_k_pointwise(int k, std::int64_t n);

/// Divisors of n in increasing order (trial division).
std::vector<std::int64_t> divisors(std::int64_t n);

std::int64_t euler_phi(std::int64_t n);
int mobius(std::int64_t n);

/// c_q(k) = mu(q/g) phi(q) / phi(q/g), g = gcd(q, |k|); c_q(0) = phi(q).
std::int64_t ramanujan_sum(std::int64_t q, std::int64_t k);

/// Same value from prebuilt phi and mu tables covering q.
std::int64_t ramanujan_sum(std::int64_t q, std::int64_t k, const DivisorTable& phi,
                           const DivisorTable& mu);

/// Sum over a coprime to q of e(ak/q), evaluated numerically and rounded.
/// q <= 10^4. Throws ConsistencyError if the imaginary residue exceeds 1e-6
/// or the rounding residue is not small.
std::int64_t ramanujan_sum_bruteforce(std::int64_t q, std::int64_t k);

/// a/q in lowest terms with 1 <= a <= q.
class RationalPhase {
 public:
  RationalPhase(std::int64_t a, std::int64_t q);

  std::int64_t a() const noexcept { return a_; }
  std::int64_t q() const noexcept { return q_; }
  double value() const noexcept { return static_cast<double>(a_) / static_cast<double>(q_); }

  friend bool operator==(const RationalPhase&, const RationalPhase&) = default;

 private:
  std::int64_t a_;
  std::int64_t q_;
};

/// All reduced a/q with 1 <= q <= order, ordered by q then a.
std::vector<RationalPhase> farey_fractions(std::int64_t order);

/// Primes up to limit (Eratosthenes).
std::vector<std::int64_t> primes_up_to(std::int64_t limit);

}  // namespace tau3corr
