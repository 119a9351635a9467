#include <random>

#include "doctest.h"
#include "tau3corr/errors.hpp"
#include "tau3corr/modular_transform.hpp"

using namespace tau3corr;

namespace {

std::vector<std::int64_t> schoolbook(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  std::vector<std::int64_t> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

}  // namespace

TEST_CASE("field arithmetic") {
  for (int f = 0; f < 2; ++f) {
    const auto& F = transform_field(f);
    CHECK(F.modulus() < (std::uint64_t{1} << 62));
    CHECK(F.max_log_len() >= 33);
    const auto w = F.root_of_unity(20);
    CHECK(F.from_mont(F.pow(w, std::uint64_t{1} << 20)) == 1);
    CHECK(F.from_mont(F.pow(w, std::uint64_t{1} << 19)) == F.modulus() - 1);
    const std::uint64_t x = 123456789012345ULL, y = 987654321098765ULL;
    const unsigned __int128 expect = static_cast<unsigned __int128>(x) * y % F.modulus();
    CHECK(F.from_mont(F.mul(F.to_mont(x), F.to_mont(y))) == static_cast<std::uint64_t>(expect));
  }
  CHECK_THROWS(transform_field(2));
}

TEST_CASE("convolution equals schoolbook") {
  std::mt19937_64 rng(99);
  for (std::size_t n : {1u, 2u, 3u, 17u, 64u, 1000u}) {
    for (std::size_t m : {1u, 5u, 333u}) {
      std::uniform_int_distribution<std::int64_t> d(0, 1000000);
      std::vector<std::int64_t> a(n), b(m);
      for (auto& x : a) x = d(rng);
      for (auto& x : b) x = d(rng);
      CHECK(modular_convolution(a, b) == schoolbook(a, b));
    }
  }
}

TEST_CASE("large entries reconstruct through CRT") {
  // Products near 2^62 exceed either modulus alone.
  std::vector<std::int64_t> a = {std::int64_t{1} << 30, (std::int64_t{1} << 31) - 1, 3};
  std::vector<std::int64_t> b = {std::int64_t{1} << 30, 7};
  CHECK(modular_convolution(a, b) == schoolbook(a, b));
  std::vector<std::int64_t> big = {std::int64_t{1} << 40, std::int64_t{1} << 40};
  CHECK_THROWS_AS(modular_convolution(big, big), OverflowError);
}

TEST_CASE("autocorrelation") {
  std::vector<std::int64_t> a = {1, 3, 3, 6, 3};
  const auto r = modular_autocorrelation(a);
  REQUIRE(r.size() == 5);
  CHECK(r[0] == 1 + 9 + 9 + 36 + 9);
  CHECK(r[1] == 48);
  CHECK(r[4] == 3);
}
