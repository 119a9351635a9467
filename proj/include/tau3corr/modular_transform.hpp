#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace tau3corr {

/// Prime modulus p < 2^62 with 2^k | p - 1, arithmetic in Montgomery form.
class MontgomeryField {
 public:
  MontgomeryField(std::uint64_t modulus, std::uint64_t primitive_root);

  std::uint64_t modulus() const noexcept { return p_; }
  std::uint64_t to_mont(std::uint64_t x) const noexcept;
  std::uint64_t from_mont(std::uint64_t x) const noexcept;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
    const std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t pow(std::uint64_t base_mont, std::uint64_t exp) const noexcept;
  /// Primitive 2^log_len-th root of unity, Montgomery form.
  std::uint64_t root_of_unity(int log_len) const;
  int max_log_len() const noexcept { return two_adicity_; }

  /// In-place transform of length 2^log_len (values in Montgomery form).
  void transform(std::vector<std::uint64_t>& a, int log_len, bool inverse) const;

 private:
  std::uint64_t p_;
  std::uint64_t g_;
  std::uint64_t p_inv_neg_;  // -p^{-1} mod 2^64
  std::uint64_t r2_;         // 2^128 mod p
  int two_adicity_;
};

/// The two transform primes (both below 2^62, 2^33 | p - 1).
const MontgomeryField& transform_field(int index);

/// Exact linear convolution of nonnegative sequences (entries < 2^61) by two
/// modular transforms and Chinese remaindering. Throws OverflowError if a
/// coefficient can exceed 2^63 - 1 and ConsistencyError if a reconstructed
/// value falls outside its guaranteed range.
std::vector<std::int64_t> modular_convolution(std::span<const std::int64_t> a, std::span<const std::int64_t> b);

/// out[k] = sum_{i} a[i] a[i + k] for k in [0, size-1].
std::vector<std::int64_t> modular_autocorrelation(std::span<const std::int64_t> a);

}  // namespace tau3corr
