#include <doctest.h>

#include <cmath>

#include "emn/density.hpp"
#include "emn/errors.hpp"

using namespace emn;

namespace {

// Second route to omega: roots mod p, then count lifts to p^2. A simple
// root lifts uniquely; a multiple root r lifts p ways if D(r) = 0 mod p^2
// and not at all otherwise.
unsigned omega_by_lifting(Family f, std::uint64_t p) {
  const std::uint64_t q = p * p;
  auto D = [&](std::uint64_t t, std::uint64_t mod) {
    std::uint64_t t2 = t * t % mod, t4 = t2 * t2 % mod;
    if (f == Family::E1N) return (27 * t4 % mod + mod - 4 % mod) % mod;
    const std::uint64_t t6 = t4 * t2 % mod;
    return (27 % mod + mod - 4 * t6 % mod) % mod;
  };
  auto dD = [&](std::uint64_t t) {
    const std::uint64_t t3 = t * t % p * t % p;
    if (f == Family::E1N) return 108 * t3 % p;
    return (p - 24 * (t3 * t % p * t % p) % p) % p;
  };
  unsigned count = 0;
  for (std::uint64_t r = 0; r < p; ++r) {
    if (D(r, p) != 0) continue;
    if (dD(r) != 0) {
      ++count;
    } else if (D(r, q) == 0) {
      count += static_cast<unsigned>(p);
    }
  }
  return count;
}

}  // namespace

TEST_SUITE("density") {

TEST_CASE("family polynomials") {
  CHECK(family_polynomial(Family::E1N, 2) == 27 * 16 - 4);
  CHECK(family_polynomial(Family::EM1, 2) == 27 - 4 * 64);
  CHECK(parse_family("EM1") == Family::EM1);
  CHECK_THROWS_AS(parse_family("e2n"), DomainError);
}

TEST_CASE("omega counts") {
  const unsigned w5 = omega_count(Family::E1N, 5);
  CHECK(w5 <= 4);
  CHECK(omega_count(Family::EM1, 7) <= 6);
  CHECK_THROWS_AS(omega_count(Family::E1N, 3), DomainError);
  CHECK_THROWS_AS(omega_count(Family::E1N, 9), DomainError);
  for (std::size_t k = 3; k <= 60; ++k) {
    const std::uint64_t p = nth_prime(k);
    for (Family f : {Family::E1N, Family::EM1}) {
      const unsigned w = omega_count(f, p);
      CHECK(w <= omega_bound(f));
      CHECK(w == omega_by_lifting(f, p));
    }
  }
}

TEST_CASE("prime zeta constant") {
  const Interval pz = prime_zeta_2(128);
  const Integer scale("10000000000000000000");
  CHECK(pz.lower_exact() > Rational(Integer("4522474200410654985"), scale));
  CHECK(pz.upper_exact() < Rational(Integer("4522474200410654986"), scale));
  CHECK(pz.width() < 1e-30);
}

TEST_CASE("kappa bounds") {
  const KappaBound k1 = kappa_lower_bound(Family::E1N, 60);
  CHECK(std::abs(k1.product.to_double() - 0.972866) < 1e-6);
  CHECK(std::abs(k1.tail.to_double() - 0.997939) < 1e-6);
  CHECK(k1.lower() > Rational(Integer(97), Integer(100)));
  const KappaBound k2 = kappa_lower_bound(Family::EM1, 60);
  CHECK(std::abs(k2.product.to_double() - 0.976111) < 1e-6);
  CHECK(std::abs(k2.tail.to_double() - 0.996909) < 1e-6);
  CHECK(k2.lower() > Rational(Integer(97), Integer(100)));

  const KappaBound k3 = kappa_lower_bound(Family::E1N, 3);
  CHECK(k3.product_exact == Rational(1) - Rational(Integer(omega_count(Family::E1N, 5)), Integer(25)));
  CHECK_THROWS_AS(kappa_lower_bound(Family::E1N, 2), DomainError);

  for (Family f : {Family::E1N, Family::EM1}) {
    Rational prev(2);
    for (std::size_t K = 3; K <= 80; K += 7) {
      const KappaBound kb = kappa_lower_bound(f, K);
      CHECK(kb.product_exact <= prev);
      CHECK(kb.bound.upper() <= 1);
      prev = kb.product_exact;
    }
  }
}

TEST_CASE("census") {
  CHECK(squarefree_census(Family::E1N, 1) == 1);
  CHECK(squarefree_census(Family::EM1, 7) == 6);
  CHECK_FALSE(squarefree_member(Family::EM1, 7));
  const std::uint64_t one = squarefree_census(Family::E1N, 400, 1);
  CHECK(squarefree_census(Family::E1N, 400, 4) == one);
  CHECK(squarefree_census(Family::EM1, 300, 3) == squarefree_census(Family::EM1, 300, 1));
  const double ratio = static_cast<double>(squarefree_census(Family::E1N, 1000, 4)) / 1000;
  CHECK(std::abs(ratio - kappa_lower_bound(Family::E1N, 60).bound.to_double()) < 0.02);
  try {
    squarefree_census(Family::E1N, 50, 2, 10);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("parameter") != std::string::npos);
  }
}

}  // TEST_SUITE
