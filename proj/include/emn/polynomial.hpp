#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "emn/interval.hpp"
#include "emn/number_core.hpp"

namespace emn {

/// Dense univariate polynomial with rational coefficients, lowest degree
/// first, no trailing zeros (the zero polynomial has no coefficients).
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<Rational> coeffs);
  explicit Polynomial(std::vector<Rational> coeffs);
  static Polynomial monomial(const Rational& c, std::size_t degree);

  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Rational& leading() const { return c_.back(); }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational operator()(const Rational& x) const;
  Interval operator()(const Interval& x) const;
  int sign_at(const Rational& x) const { return (*this)(x).sign(); }

  Polynomial derivative() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Euclidean division over Q; divisor must be nonzero.
  void divmod(const Polynomial& divisor, Polynomial& quotient, Polynomial& remainder) const;
  Polynomial operator%(const Polynomial& divisor) const;

  /// Primitive integer multiple with positive leading coefficient.
  std::vector<Integer> primitive_integer_coefficients() const;

  std::string to_string(const char* var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Monic gcd over Q.
Polynomial gcd(const Polynomial& a, const Polynomial& b);
/// p / gcd(p, p'), monic.
Polynomial squarefree_part(const Polynomial& p);

/// Closed rational interval [lo, hi] known to contain exactly one root.
struct RationalBracket {
  Rational lo;
  Rational hi;
  Rational width() const { return hi - lo; }
};

/// Number of distinct real roots in (a, b] via a Sturm sequence.
std::size_t count_real_roots(const Polynomial& p, const Rational& a, const Rational& b);

/// Isolating brackets for the distinct real roots, ascending.
std::vector<RationalBracket> isolate_real_roots(const Polynomial& p);

/// Shrinks a bracket of a squarefree polynomial to width <= max_width by
/// exact sign bisection.
RationalBracket refine_root(const Polynomial& p, RationalBracket bracket, const Rational& max_width);

/// The rational with the smallest denominator in the closed interval.
Rational simplest_rational_between(const Rational& lo, const Rational& hi);

struct RationalRootOptions {
  std::size_t divisor_pair_cap = 1'000'000;
  std::uint64_t factor_effort = kDefaultFactorEffort;
};

/// Distinct rational roots, ascending. Uses the rational-root theorem by
/// divisor enumeration; falls back to real-root isolation plus a
/// denominator bound when factoring or enumeration is too expensive.
std::vector<Rational> rational_roots(const Polynomial& p, const RationalRootOptions& opts = {});

/// The two routes, exposed separately for cross-checking. The divisor route
/// returns false when it had to give up.
bool rational_roots_by_divisors(const Polynomial& p, const RationalRootOptions& opts,
                                std::vector<Rational>& roots);
std::vector<Rational> rational_roots_by_isolation(const Polynomial& p);

}  // namespace emn
