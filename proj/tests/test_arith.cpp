#include <numeric>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "tau3corr/arith.hpp"
#include "tau3corr/errors.hpp"

using namespace tau3corr;

namespace {

// Ordered triples (d1, d2, d3) with d1 d2 d3 = n, counted by brute force.
std::int64_t count_triples(std::int64_t n) {
  std::int64_t c = 0;
  for (std::int64_t d1 = 1; d1 <= n; ++d1) {
    if (n % d1) continue;
    for (std::int64_t d2 = 1; d2 <= n / d1; ++d2) {
      if ((n / d1) % d2 == 0) ++c;
    }
  }
  return c;
}

}  // namespace

TEST_CASE("tau3 sieve small values") {
  const auto t = sieve(DivisorKind::tau3, 10);
  const std::int64_t expected[] = {1, 3, 3, 6, 3, 9, 3, 10, 6, 9};
  for (int n = 1; n <= 10; ++n) CHECK(t[n] == expected[n - 1]);
  CHECK(sieve(DivisorKind::tau3, 1).values().size() == 1);
  const auto sq = sieve(DivisorKind::tau3_squared, 4);
  CHECK(sq[1] == 1);
  CHECK(sq[2] == 9);
  CHECK(sq[3] == 9);
  CHECK(sq[4] == 36);
}

TEST_CASE("tau3 sieve against triple enumeration") {
  const auto t = sieve(DivisorKind::tau3, 400);
  for (std::int64_t n = 1; n <= 400; ++n) CHECK(t[n] == count_triples(n));
}

TEST_CASE("sieve against pointwise enumeration at random points") {
  const std::int64_t N = 200000;
  const auto t3 = sieve(DivisorKind::tau3, N);
  const auto t2 = sieve(DivisorKind::tau2, N);
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::int64_t> dist(1, N);
  for (int i = 0; i < 500; ++i) {
    const auto n = dist(rng);
    CHECK(t3[n] == tau_k_pointwise(3, n));
    CHECK(t2[n] == tau_k_pointwise(2, n));
  }
}

TEST_CASE("pointwise tau_k") {
  CHECK(tau_k_pointwise(3, 8) == 10);
  CHECK(tau_k_pointwise(3, 101) == 3);
  CHECK(tau_k_pointwise(2, 12) == 6);
  CHECK(tau_k_pointwise(1, 12) == 1);
}

TEST_CASE("table invariants") {
  const std::int64_t N = 5000;
  const auto t3 = sieve(DivisorKind::tau3, N);
  const auto t2 = sieve(DivisorKind::tau2, N);
  const auto phi = sieve(DivisorKind::phi, N);
  const auto mu = sieve(DivisorKind::mu, N);
  const auto sq = sieve(DivisorKind::tau3_squared, N);
  CHECK(t3[1] == 1);
  CHECK(t2[1] == 1);
  CHECK(phi[1] == 1);
  CHECK(mu[1] == 1);
  CHECK(sq[1] == 1);
  for (auto p : primes_up_to(N)) {
    CHECK(t3[p] == 3);
    CHECK(t2[p] == 2);
    CHECK(phi[p] == p - 1);
    CHECK(mu[p] == -1);
  }
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> dist(1, 70);
  int tested = 0;
  while (tested < 1000) {
    const auto m = dist(rng), n = dist(rng);
    if (std::gcd(m, n) != 1) continue;
    ++tested;
    for (const auto* t : {&t3, &t2, &phi, &mu, &sq}) CHECK((*t)[m * n] == (*t)[m] * (*t)[n]);
  }
  for (std::int64_t n = 1; n <= 300; ++n) {
    CHECK(phi[n] == euler_phi(n));
    CHECK(mu[n] == mobius(n));
    CHECK(sq[n] == t3[n] * t3[n]);
  }
}

TEST_CASE("sieve sizing error") {
  CHECK_THROWS_AS(sieve(DivisorKind::tau3, kMaxSieveSize + 1), SizingError);
  CHECK_THROWS_AS(sieve(DivisorKind::tau3, 0), std::invalid_argument);
}

TEST_CASE("ramanujan sums") {
  for (int k = -5; k <= 5; ++k) CHECK(ramanujan_sum(1, k) == 1);
  CHECK(ramanujan_sum(4, 2) == -2);
  CHECK(ramanujan_sum(7, 7) == 6);
  CHECK(ramanujan_sum(7, 0) == 6);
  CHECK(ramanujan_sum(6, 1) == 1);
  CHECK(ramanujan_sum_bruteforce(6, 1) == 1);
  CHECK(ramanujan_sum_bruteforce(5, 5) == 4);
  CHECK(ramanujan_sum_bruteforce(9, 3) == -3);
  CHECK(ramanujan_sum(9, -3) == -3);
}

TEST_CASE("ramanujan sums equal the exponential sums") {
  for (std::int64_t q = 1; q <= 200; ++q) {
    for (std::int64_t k = 0; k <= 200; ++k) REQUIRE(ramanujan_sum(q, k) == ramanujan_sum_bruteforce(q, k));
  }
}

TEST_CASE("ramanujan sum orthogonality and table overload") {
  const auto phi = sieve(DivisorKind::phi, 300);
  const auto mu = sieve(DivisorKind::mu, 300);
  for (std::int64_t q = 1; q <= 300; ++q) {
    std::int64_t s = 0;
    for (std::int64_t k = 1; k <= q; ++k) {
      s += ramanujan_sum(q, k);
      CHECK(ramanujan_sum(q, k, phi, mu) == ramanujan_sum(q, k));
    }
    CHECK(s == (q == 1 ? 1 : 0));
  }
}

TEST_CASE("rational phase") {
  const RationalPhase p(4, 6);
  CHECK(p.a() == 2);
  CHECK(p.q() == 3);
  CHECK(RationalPhase(0, 1) == RationalPhase(1, 1));
  CHECK(RationalPhase(-1, 4) == RationalPhase(3, 4));
  CHECK_THROWS(RationalPhase(1, 0));
  // sum of phi(q) over q <= 5
  CHECK(farey_fractions(5).size() == 1 + 1 + 2 + 2 + 4);
}
