#pragma once

#include <cstdint>
#include <string>

#include "emn/interval.hpp"
#include "emn/number_core.hpp"

namespace emn {

/// E1N: the curves E_{1,n}, D(n) = 27 n^4 - 4. EM1: E_{m,1}, D(m) = 27 - 4 m^6.
enum class Family { E1N, EM1 };

std::string to_string(Family f);
/// Accepts "e1n" and "em1" (any case).
Family parse_family(const std::string& text);

/// D_{m,n} = 27 n^4 - 4 m^6 along the family; disc(E) = -16 D.
Integer family_polynomial(Family f, const Integer& t);
/// Largest number of roots of D modulo p^2 for p > 3 (4 resp. 6).
unsigned omega_bound(Family f);

/// #{t mod p^2 : D(t) = 0 mod p^2}, by enumerating all p^2 residues.
/// DomainError unless p is a prime with 3 < p < 2^31.
unsigned omega_count(Family f, std::uint64_t p);

/// sum over p of 1/p^2, from log zeta(2k) by Moebius inversion.
Interval prime_zeta_2(mpfr_prec_t prec = 128);

struct KappaBound {
  std::size_t primes = 0;  // K: the product runs over p_3 .. p_K
  Rational product_exact;
  Interval product;
  Interval tail;   // 1 - B (zeta_P(2) - sum_{k <= K} 1/p_k^2)
  Interval bound;  // product * tail
  /// Certified: every value in `bound` is >= this.
  Rational lower() const { return bound.lower_exact(); }
};

/// DomainError for K < 3.
KappaBound kappa_lower_bound(Family f, std::size_t K, mpfr_prec_t prec = 128);

/// True when p^2 does not divide the discriminant of the family member for
/// any p > 3. Errors from factorization name the parameter.
bool squarefree_member(Family f, const Integer& t, std::uint64_t effort = kDefaultFactorEffort);

/// #{t in (0, x] : squarefree_member(f, t)}. `workers` threads split the
/// range; the count does not depend on it.
std::uint64_t squarefree_census(Family f, std::uint64_t x, unsigned workers = 1,
                                std::uint64_t effort = kDefaultFactorEffort);

}  // namespace emn
