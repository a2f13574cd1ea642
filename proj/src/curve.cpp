#include "emn/curve.hpp"

#include <sstream>

#include "emn/errors.hpp"

namespace emn {

std::string Curve::label() const { return "E_{" + emn::to_string(m) + "," + emn::to_string(n) + "}"; }

Curve make_curve(const Integer& m, const Integer& n) {
  if (m <= 0 || n <= 0) throw DomainError("E_{m,n} needs m >= 1 and n >= 1");
  Curve c;
  c.m = m;
  c.n = n;
  const Integer m2 = m * m;
  const Integer n2 = n * n;
  c.a4 = -m2;
  c.a6 = n2;
  c.b2 = 0;
  c.b4 = -2 * m2;
  c.b6 = 4 * n2;
  c.b8 = -m2 * m2;
  c.c4 = 48 * m2;
  c.c6 = -864 * n2;
  c.disc = -16 * (27 * n2 * n2 - 4 * m2 * m2 * m2);
  if (c.disc == 0) throw DomainError("singular curve");
  return c;
}

const Rational& Point::x() const {
  if (!affine_) throw DomainError("point at infinity has no coordinates");
  return x_;
}

const Rational& Point::y() const {
  if (!affine_) throw DomainError("point at infinity has no coordinates");
  return y_;
}

std::string Point::to_string() const {
  if (!affine_) return "O";
  return "(" + x_.to_string() + ", " + y_.to_string() + ")";
}

bool contains(const Curve& c, const Point& p) {
  if (p.is_infinity()) return true;
  const Rational& x = p.x();
  return p.y() * p.y() == x * x * x + Rational(c.a4) * x + Rational(c.a6);
}

namespace {

void require_on_curve(const Curve& c, const Point& p) {
  if (!contains(c, p)) throw DomainError("point " + p.to_string() + " is not on " + c.label());
}

Point add_unchecked(const Curve& c, const Point& p, const Point& q) {
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  Rational slope;
  if (p.x() == q.x()) {
    if (p.y() != q.y() || p.y().is_zero()) return Point::infinity();
    slope = (Rational(3) * p.x() * p.x() + Rational(c.a4)) / (Rational(2) * p.y());
  } else {
    slope = (q.y() - p.y()) / (q.x() - p.x());
  }
  Rational x = slope * slope - p.x() - q.x();
  Rational y = slope * (p.x() - x) - p.y();
  return Point(std::move(x), std::move(y));
}

}  // namespace

Point negate(const Curve& c, const Point& p) {
  require_on_curve(c, p);
  if (p.is_infinity()) return p;
  return Point(p.x(), -p.y());
}

Point add(const Curve& c, const Point& p, const Point& q) {
  require_on_curve(c, p);
  require_on_curve(c, q);
  return add_unchecked(c, p, q);
}

Point subtract(const Curve& c, const Point& p, const Point& q) { return add(c, p, negate(c, q)); }

Point scalar_mul(const Curve& c, const Point& p, long k) {
  require_on_curve(c, p);
  Point base = k < 0 ? Point(p.is_infinity() ? p : Point(p.x(), -p.y())) : p;
  unsigned long e = k < 0 ? 0UL - static_cast<unsigned long>(k) : static_cast<unsigned long>(k);
  Point acc;
  while (e != 0) {
    if (e & 1UL) acc = add_unchecked(c, acc, base);
    e >>= 1;
    if (e != 0) base = add_unchecked(c, base, base);
  }
  return acc;
}

Rational division_poly_eval(const Curve& c, DivisionPoly which, const Point& p) {
  if (p.is_infinity()) throw DomainError("division polynomial at O");
  if (which == DivisionPoly::Psi2) return Rational(2) * p.y();
  return psi3_poly(c)(p.x());
}

UZ uz_eval(const Curve& c, const Point& p) {
  if (p.is_infinity()) throw DomainError("u is undefined at O");
  UZ out{u_poly(c)(p.x()), std::nullopt};
  if (!p.x().is_zero()) out.z = out.u / pow(p.x(), 4);
  return out;
}

Rational kl_identity_residual(const Curve& c, const Point& p) {
  require_on_curve(c, p);
  if (p.is_infinity()) throw DomainError("identity residual at O");
  const Rational& x = p.x();
  const Rational a4(c.a4), a6(c.a6);
  const Rational k = Rational(3) * x * x + Rational(4) * a4;
  const Rational l = Rational(9) * x * x * x + Rational(21) * a4 * x + Rational(27) * a6;
  const Rational psi2 = division_poly_eval(c, DivisionPoly::Psi2, p);
  const Rational psi3 = division_poly_eval(c, DivisionPoly::Psi3, p);
  return Rational(16) * k * psi3 - Rational(4) * l * psi2 * psi2 - Rational(c.disc);
}

NamedPoints named_points(const Curve& c) {
  NamedPoints out{Point(0, c.n), Point(c.m, c.n), Point(-c.m, c.n), std::nullopt};
  if (c.n == 1) out.p2 = Point(-1, c.m);
  return out;
}

Polynomial rhs_poly(const Curve& c) { return Polynomial{c.a6, c.a4, 0, 1}; }

Polynomial psi3_poly(const Curve& c) {
  const Integer m2 = c.m * c.m;
  return Polynomial{-m2 * m2, 12 * c.n * c.n, -6 * m2, 0, 3};
}

Polynomial psi4_cofactor_poly(const Curve& c) {
  const Integer& A = c.a4;
  const Integer& B = c.a6;
  return Polynomial{-8 * B * B - A * A * A, -4 * A * B, -5 * A * A, 20 * B, 5 * A, 0, 1};
}

Polynomial u_poly(const Curve& c) { return Polynomial{-c.b8, -2 * c.b6, -c.b4, 0, 1}; }

}  // namespace emn
