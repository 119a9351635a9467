#include "tau3corr/modular_transform.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "tau3corr/errors.hpp"

namespace tau3corr {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

MontgomeryField::MontgomeryField(u64 modulus, u64 primitive_root) : p_(modulus), g_(primitive_root) {
  if (modulus % 2 == 0 || modulus >= (u64{1} << 62)) {
    throw std::invalid_argument("MontgomeryField: modulus must be odd and below 2^62");
  }
  // Newton iteration for p^{-1} mod 2^64.
  u64 inv = modulus;
  for (int i = 0; i < 6; ++i) inv *= 2 - modulus * inv;
  p_inv_neg_ = ~inv + 1;
  const u128 r = (u128{1} << 64) % modulus;
  r2_ = static_cast<u64>((r * r) % modulus);
  two_adicity_ = __builtin_ctzll(modulus - 1);
}

u64 MontgomeryField::mul(u64 a, u64 b) const noexcept {
  const u128 t = static_cast<u128>(a) * b;
  const u64 m = static_cast<u64>(t) * p_inv_neg_;
  const u64 u = static_cast<u64>((t + static_cast<u128>(m) * p_) >> 64);
  return u >= p_ ? u - p_ : u;
}

u64 MontgomeryField::to_mont(u64 x) const noexcept { return mul(x % p_, r2_); }
u64 MontgomeryField::from_mont(u64 x) const noexcept { return mul(x, 1); }

u64 MontgomeryField::pow(u64 base, u64 exp) const noexcept {
  u64 result = to_mont(1);
  while (exp > 0) {
    if (exp & 1) result = mul(result, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return result;
}

u64 MontgomeryField::root_of_unity(int log_len) const {
  if (log_len > two_adicity_) throw SizingError("transform length 2^" + std::to_string(log_len) + " exceeds the field");
  return pow(to_mont(g_), (p_ - 1) >> log_len);
}

void MontgomeryField::transform(std::vector<u64>& a, int log_len, bool inverse) const {
  const std::size_t n = std::size_t{1} << log_len;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<u64> twiddle;
  for (int s = 1; s <= log_len; ++s) {
    const std::size_t len = std::size_t{1} << s;
    const std::size_t half = len >> 1;
    u64 w = root_of_unity(s);
    if (inverse) w = pow(w, (u64{1} << s) - 1);
    twiddle.assign(half, 0);
    twiddle[0] = to_mont(1);
    for (std::size_t j = 1; j < half; ++j) twiddle[j] = mul(twiddle[j - 1], w);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const u64 u = a[i + j];
        const u64 v = mul(a[i + j + half], twiddle[j]);
        a[i + j] = add(u, v);
        a[i + j + half] = sub(u, v);
      }
    }
  }
  if (inverse) {
    const u64 n_inv = pow(to_mont(n % p_), p_ - 2);
    for (auto& x : a) x = mul(x, n_inv);
  }
}

const MontgomeryField& transform_field(int index) {
  static const MontgomeryField fields[2] = {MontgomeryField(4611685941117976577ULL, 3),
                                            MontgomeryField(4611685692009873409ULL, 19)};
  if (index < 0 || index > 1) throw std::out_of_range("transform_field: index must be 0 or 1");
  return fields[index];
}

namespace {

std::vector<u64> residues_of_product(const MontgomeryField& f, std::span<const std::int64_t> a,
                                     std::span<const std::int64_t> b, int log_len, bool same) {
  const std::size_t n = std::size_t{1} << log_len;
  std::vector<u64> fa(n, 0);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = f.to_mont(static_cast<u64>(a[i]));
  f.transform(fa, log_len, false);
  if (same) {
    for (auto& x : fa) x = f.mul(x, x);
  } else {
    std::vector<u64> fb(n, 0);
    for (std::size_t i = 0; i < b.size(); ++i) fb[i] = f.to_mont(static_cast<u64>(b[i]));
    f.transform(fb, log_len, false);
    for (std::size_t i = 0; i < n; ++i) fa[i] = f.mul(fa[i], fb[i]);
  }
  f.transform(fa, log_len, true);
  for (auto& x : fa) x = f.from_mont(x);
  return fa;
}

u128 checked_max_coefficient(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  // Every output coefficient is at most (max a) * (sum b).
  u128 max_a = 0, sum_b = 0;
  for (auto x : a) {
    if (x < 0 || x >= (std::int64_t{1} << 61)) throw std::invalid_argument("modular_convolution: entries must lie in [0, 2^61)");
    max_a = std::max<u128>(max_a, static_cast<u128>(x));
  }
  for (auto x : b) {
    if (x < 0 || x >= (std::int64_t{1} << 61)) throw std::invalid_argument("modular_convolution: entries must lie in [0, 2^61)");
    sum_b += static_cast<u128>(x);
  }
  return max_a * sum_b;
}

std::vector<std::int64_t> convolve(std::span<const std::int64_t> a, std::span<const std::int64_t> b, bool same,
                                   u128 bound) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  int log_len = 0;
  while ((std::size_t{1} << log_len) < out_len) ++log_len;
  const MontgomeryField& f1 = transform_field(0);
  const MontgomeryField& f2 = transform_field(1);
  if (log_len > std::min(f1.max_log_len(), f2.max_log_len())) {
    throw SizingError("modular_convolution: output length " + std::to_string(out_len) + " too long");
  }
  if (bound > static_cast<u128>(std::numeric_limits<std::int64_t>::max())) {
    throw OverflowError("modular_convolution: coefficients may exceed 2^63 - 1");
  }
  const std::vector<u64> r1 = residues_of_product(f1, a, b, log_len, same);
  const std::vector<u64> r2 = residues_of_product(f2, a, b, log_len, same);
  const u64 p1 = f1.modulus();
  const u64 p2 = f2.modulus();
  // p1^{-1} mod p2 via Fermat.
  const u64 p1_inv_mont = f2.pow(f2.to_mont(p1 % p2), p2 - 2);
  std::vector<std::int64_t> out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) {
    const u64 diff = f2.sub(r2[i] % p2, r1[i] % p2);
    const u64 t = f2.from_mont(f2.mul(f2.to_mont(diff), p1_inv_mont));
    const u128 x = static_cast<u128>(r1[i]) + static_cast<u128>(t) * p1;
    if (x > bound) {
      throw ConsistencyError("modular_convolution: CRT reconstruction at index " + std::to_string(i) +
                             " exceeds the guaranteed bound");
    }
    out[i] = static_cast<std::int64_t>(x);
  }
  return out;
}

}  // namespace

std::vector<std::int64_t> modular_convolution(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  const u128 bound = std::min(checked_max_coefficient(a, b), checked_max_coefficient(b, a));
  return convolve(a, b, false, bound);
}

std::vector<std::int64_t> modular_autocorrelation(std::span<const std::int64_t> a) {
  const std::size_t n = a.size();
  if (n == 0) return {};
  // By Cauchy-Schwarz every lag is at most sum a^2.
  u128 energy = 0;
  for (auto x : a) {
    if (x < 0 || x >= (std::int64_t{1} << 61)) throw std::invalid_argument("modular_autocorrelation: entries must lie in [0, 2^61)");
    energy += static_cast<u128>(x) * static_cast<u128>(x);
  }
  std::vector<std::int64_t> reversed(a.rbegin(), a.rend());
  const std::vector<std::int64_t> full = convolve(a, reversed, false, energy);
  // full[n-1+k] = sum_i a[i + k] a[i]
  return std::vector<std::int64_t>(full.begin() + static_cast<std::ptrdiff_t>(n - 1), full.end());
}

}  // namespace tau3corr
