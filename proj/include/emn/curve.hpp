#pragma once

#include <optional>
#include <string>

#include "emn/polynomial.hpp"
#include "emn/rational.hpp"

namespace emn {

/// E_{m,n}: y^2 = x^3 - m^2 x + n^2 with m, n >= 1.
struct Curve {
  Integer m;
  Integer n;
  Integer a4;  // -m^2
  Integer a6;  // n^2
  Integer b2;  // 0
  Integer b4;  // -2 m^2
  Integer b6;  // 4 n^2
  Integer b8;  // -m^4
  Integer c4;  // 48 m^2
  Integer c6;  // -864 n^2
  Integer disc;  // -16 (27 n^4 - 4 m^6)

  std::string label() const;
};

/// Throws DomainError for m <= 0 or n <= 0.
Curve make_curve(const Integer& m, const Integer& n);

class Point {
 public:
  /// The point at infinity.
  Point() = default;
  Point(Rational x, Rational y) : affine_(true), x_(std::move(x)), y_(std::move(y)) {}
  static Point infinity() { return Point(); }

  bool is_infinity() const { return !affine_; }
  /// Coordinates; DomainError at infinity.
  const Rational& x() const;
  const Rational& y() const;

  friend bool operator==(const Point&, const Point&) = default;
  std::string to_string() const;

 private:
  bool affine_ = false;
  Rational x_;
  Rational y_;
};

bool contains(const Curve& c, const Point& p);

Point negate(const Curve& c, const Point& p);
Point add(const Curve& c, const Point& p, const Point& q);
Point subtract(const Curve& c, const Point& p, const Point& q);
Point scalar_mul(const Curve& c, const Point& p, long k);

enum class DivisionPoly { Psi2, Psi3 };

/// psi_2 = 2y, psi_3 = 3x^4 - 6m^2x^2 + 12n^2x - m^4.
Rational division_poly_eval(const Curve& c, DivisionPoly which, const Point& p);

struct UZ {
  Rational u;
  std::optional<Rational> z;  // absent when x(P) = 0
};

/// u = x^4 - b4 x^2 - 2 b6 x - b8 and z = u / x^4.
UZ uz_eval(const Curve& c, const Point& p);

/// 16 k psi_3 - 4 l psi_2^2 - disc at P, where k and l are the polynomials
/// of the classical identity (named kl-poly here); zero on the curve.
Rational kl_identity_residual(const Curve& c, const Point& p);

struct NamedPoints {
  Point p0;       // (0, n)
  Point pplus1;   // (m, n)
  Point pminus1;  // (-m, n)
  std::optional<Point> p2;  // (-1, m), only when n = 1
};

NamedPoints named_points(const Curve& c);

/// x^3 - m^2 x + n^2.
Polynomial rhs_poly(const Curve& c);
/// psi_3 as a polynomial in x.
Polynomial psi3_poly(const Curve& c);
/// g with psi_4 = 2 psi_2 g, i.e. x^6 + 5Ax^4 + 20Bx^3 - 5A^2x^2 - 4ABx - 8B^2 - A^3
/// for A = a4, B = a6.
Polynomial psi4_cofactor_poly(const Curve& c);
/// u(x) from uz_eval.
Polynomial u_poly(const Curve& c);

}  // namespace emn
