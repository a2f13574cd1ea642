#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "emn/errors.hpp"
#include "emn/interval.hpp"
#include "emn/rational.hpp"

namespace emn {

inline constexpr std::uint64_t kDefaultFactorEffort = 100'000'000;
inline constexpr std::uint64_t kTrialDivisionLimit = 1'000'000;

struct PrimePower {
  Integer prime;
  unsigned exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// sign * prod(prime^exponent), primes strictly increasing.
struct Factorization {
  int sign = 1;
  std::vector<PrimePower> factors;

  Integer value() const;
  /// Exponent of p (0 if p does not occur).
  unsigned exponent_of(const Integer& p) const;
  std::string to_string() const;
};

/// Raised when the effort budget runs out. Carries every prime found so far
/// and the composite cofactor that could not be split.
class IncompleteFactorization : public Error {
 public:
  IncompleteFactorization(Factorization partial, Integer cofactor);
  const Factorization& partial() const { return partial_; }
  const Integer& cofactor() const { return cofactor_; }

 private:
  Factorization partial_;
  Integer cofactor_;
};

/// Largest e with p^e | a. Throws UndefinedValuation for a = 0 and
/// DomainError when p is not prime.
unsigned valuation(const Integer& a, const Integer& p);
/// Signed valuation of a nonzero rational.
long valuation(const Rational& a, const Integer& p);

/// Deterministic for |n| < 2^64; BPSW plus 64 Miller-Rabin rounds above.
bool is_prime(const Integer& n);

/// Complete factorization: trial division to 10^6, then Pollard-Brent rho.
/// `effort` counts trial divisions plus rho iterations.
Factorization factor(const Integer& n, std::uint64_t effort = kDefaultFactorEffort);

/// All positive divisors, ascending. Returns nullopt when more than `cap`.
std::optional<std::vector<Integer>> divisors(const Factorization& f, std::size_t cap);

/// Primes p <= limit, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// The k-th prime, k >= 1 (nth_prime(1) == 2).
std::uint64_t nth_prime(std::size_t k);

/// Exact sum of 1/p_k^2 over the first K primes.
Rational prime_zeta_partial_exact(std::size_t K);
/// Enclosure of the same sum at `prec` bits (width <= 2^-prec relative).
Interval prime_zeta_partial(std::size_t K, mpfr_prec_t prec = 128);

Integer gcd(const Integer& a, const Integer& b);
Integer pow(const Integer& base, unsigned e);

}  // namespace emn
