#pragma once

#include <string>

#include <mpfr.h>

#include "emn/rational.hpp"

namespace emn {

/// Closed real interval [lo, hi] with MPFR endpoints. Every operation rounds
/// the lower endpoint toward -inf and the upper endpoint toward +inf, so the
/// result always encloses the exact value of the operation applied to any
/// points of the operands.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 128);
  Interval(long value, mpfr_prec_t prec);
  Interval(const Integer& value, mpfr_prec_t prec);
  Interval(const Rational& value, mpfr_prec_t prec);
  template <class Expr>
  Interval(const __gmp_expr<mpz_t, Expr>& value, mpfr_prec_t prec) : Interval(Integer(value), prec) {}
  /// Enclosure of a decimal literal such as "0.4522474200410654985".
  static Interval from_decimal(const char* text, mpfr_prec_t prec);
  /// Smallest interval containing both arguments.
  static Interval hull(const Interval& a, const Interval& b);

  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }

  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);
  Interval& operator/=(const Interval& o);
  Interval operator-() const;

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
  friend Interval operator/(Interval a, const Interval& b) { return a /= b; }

  /// Lower/upper endpoints rounded outward to double.
  double lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  /// Exact endpoints as rationals (MPFR values are dyadic).
  Rational lower_exact() const;
  Rational upper_exact() const;

  /// Midpoint as a point interval, and a radius r (rounded up) with
  /// [mid - r, mid + r] containing this interval.
  Interval midpoint() const;
  double radius() const;
  double width() const;
  double to_double() const;

  bool contains(const Rational& q) const;
  bool contains_zero() const;
  bool is_positive() const { return mpfr_sgn(lo_) > 0; }
  bool is_negative() const { return mpfr_sgn(hi_) < 0; }

  /// Certified comparisons: true only if every point of a relates to every
  /// point of b.
  friend bool certainly_less(const Interval& a, const Interval& b);
  friend bool certainly_less(const Interval& a, double b);
  friend bool certainly_greater(const Interval& a, double b);

  /// "[lo, hi]" with the given number of significant decimal digits.
  std::string to_string(int digits = 20) const;
  /// Decimal midpoint with the given number of significant digits.
  std::string mid_string(int digits = 20) const;

  const __mpfr_struct* lo() const { return lo_; }
  const __mpfr_struct* hi() const { return hi_; }

  friend Interval log(const Interval& x);
  friend Interval exp(const Interval& x);
  friend Interval sqrt(const Interval& x);
  friend Interval cbrt(const Interval& x);
  friend Interval sqr(const Interval& x);
  friend Interval abs(const Interval& x);
  friend Interval pow(const Interval& x, unsigned e);
  friend Interval max(const Interval& a, const Interval& b);
  friend Interval intersect(const Interval& a, const Interval& b);
  friend Interval zeta(unsigned long s, mpfr_prec_t prec);

 private:
  void set_precision_at_least(mpfr_prec_t prec);

  mpfr_t lo_;
  mpfr_t hi_;
};

Interval log(const Interval& x);
Interval exp(const Interval& x);
Interval sqrt(const Interval& x);
Interval cbrt(const Interval& x);
Interval sqr(const Interval& x);
Interval abs(const Interval& x);
Interval pow(const Interval& x, unsigned e);
Interval max(const Interval& a, const Interval& b);
/// Common part of two enclosures of the same quantity; PrecisionError if
/// they are disjoint.
Interval intersect(const Interval& a, const Interval& b);

/// Riemann zeta at an integer s >= 2.
Interval zeta(unsigned long s, mpfr_prec_t prec);

/// Enclosure of log(value) for a positive integer.
Interval log_of(const Integer& value, mpfr_prec_t prec);

}  // namespace emn
