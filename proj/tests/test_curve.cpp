#include <doctest.h>

#include <random>

#include "emn/curve.hpp"
#include "emn/errors.hpp"

using namespace emn;

namespace {

// Small combinations of the named points; all lie on the curve.
std::vector<Point> sample_points(const Curve& c, int count, std::mt19937& rng) {
  const NamedPoints np = named_points(c);
  std::uniform_int_distribution<long> k(-3, 3);
  std::vector<Point> out;
  while (static_cast<int>(out.size()) < count) {
    Point p = add(c, scalar_mul(c, np.p0, k(rng)), scalar_mul(c, np.pminus1, k(rng)));
    if (np.p2) p = add(c, p, scalar_mul(c, *np.p2, k(rng)));
    out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_SUITE("curve") {

TEST_CASE("make_curve") {
  const Curve c = make_curve(1, 2);
  CHECK(c.a4 == -1);
  CHECK(c.a6 == 4);
  CHECK(c.disc == -6848);
  CHECK(make_curve(1, 1).disc == -368);
  CHECK(make_curve(10, 1).disc == 63999568);
  CHECK(c.c4 == 48);
  CHECK(c.c6 == -864 * 4);
  CHECK(c.b8 == -1);
  CHECK_THROWS_AS(make_curve(0, 1), DomainError);
  CHECK_THROWS_AS(make_curve(1, 0), DomainError);
  // c4^3 - c6^2 = 1728 disc.
  for (long m = 1; m < 20; ++m)
    for (long n = 1; n < 20; ++n) {
      const Curve e = make_curve(m, n);
      CHECK(e.c4 * e.c4 * e.c4 - e.c6 * e.c6 == 1728 * e.disc);
    }
}

TEST_CASE("contains") {
  CHECK(contains(make_curve(1, 2), Point(0, 2)));
  CHECK(contains(make_curve(10, 1), Point(12, -23)));
  CHECK_FALSE(contains(make_curve(1, 2), Point(1, 1)));
  CHECK(contains(make_curve(1, 2), Point::infinity()));
}

TEST_CASE("group law examples") {
  const Curve c = make_curve(10, 1);
  CHECK(add(c, Point(0, 1), Point(10, 1)) == Point(-10, -1));
  CHECK(add(c, Point(-10, 1), Point(-1, 10)) == Point(12, -23));
  CHECK(add(c, Point(-1, 10), Point::infinity()) == Point(-1, 10));
  CHECK(scalar_mul(make_curve(1, 1), Point(1, 1), 3) == Point(0, -1));
  CHECK(scalar_mul(make_curve(3, 1), Point(-1, 3), 2) == Point(3, 1));
  CHECK(scalar_mul(c, Point(-1, 10), 1) == Point(-1, 10));
  CHECK(scalar_mul(c, Point(-1, 10), 0).is_infinity());
  CHECK_THROWS_AS(add(c, Point(1, 1), Point(0, 1)), DomainError);
  CHECK_THROWS_AS(scalar_mul(c, Point(1, 1), 2), DomainError);
}

TEST_CASE("explicit sums on E_{m,1}") {
  for (long m = 4; m < 40; ++m) {
    const Curve c = make_curve(m, 1);
    const NamedPoints np = named_points(c);
    const Integer M(m);
    CHECK(add(c, np.p0, np.pminus1) == Point(M, -1));
    CHECK(add(c, np.pminus1, *np.p2) == Point(M + 2, -2 * M - 3));
    CHECK(add(c, *np.p2, np.p0) == Point(M * M - 2 * M + 2, M * M * M - 3 * M * M + 4 * M - 3));
    CHECK(add(c, add(c, np.p0, np.pminus1), *np.p2) == Point(-M + 2, -2 * M + 3));
  }
}

TEST_CASE("group axioms and closure on sampled points") {
  std::mt19937 rng(23);
  for (auto [m, n] : std::vector<std::pair<long, long>>{{1, 2}, {1, 5}, {10, 1}, {5, 3}, {2, 7}, {13, 1}}) {
    const Curve c = make_curve(m, n);
    const auto pts = sample_points(c, 12, rng);
    for (std::size_t i = 0; i + 2 < pts.size(); ++i) {
      const Point &p = pts[i], &q = pts[i + 1], &r = pts[i + 2];
      CHECK(contains(c, p));
      CHECK(add(c, p, q) == add(c, q, p));
      CHECK(add(c, add(c, p, q), r) == add(c, p, add(c, q, r)));
      CHECK(add(c, p, negate(c, p)).is_infinity());
      CHECK(contains(c, add(c, p, q)));
      CHECK(scalar_mul(c, p, -3) == negate(c, scalar_mul(c, p, 3)));
      CHECK(scalar_mul(c, p, 5) == add(c, scalar_mul(c, p, 2), scalar_mul(c, p, 3)));
    }
  }
}

TEST_CASE("named relation P0 + P+1 + P-1 = O") {
  for (long m = 1; m < 15; ++m)
    for (long n = 1; n < 15; ++n) {
      const Curve c = make_curve(m, n);
      const NamedPoints np = named_points(c);
      CHECK(contains(c, np.p0));
      CHECK(contains(c, np.pplus1));
      CHECK(contains(c, np.pminus1));
      CHECK(np.p2.has_value() == (n == 1));
      if (np.p2) CHECK(contains(c, *np.p2));
      CHECK(add(c, add(c, np.p0, np.pplus1), np.pminus1).is_infinity());
    }
  const NamedPoints e15 = named_points(make_curve(1, 5));
  CHECK(e15.p0 == Point(0, 5));
  CHECK(e15.pplus1 == Point(1, 5));
  CHECK(e15.pminus1 == Point(-1, 5));
}

TEST_CASE("division polynomials") {
  CHECK(division_poly_eval(make_curve(1, 5), DivisionPoly::Psi2, Point(0, 5)) == 10);
  for (long n = 1; n < 10; ++n)
    CHECK(division_poly_eval(make_curve(1, n), DivisionPoly::Psi3, Point(0, n)) == -1);
  CHECK(division_poly_eval(make_curve(10, 1), DivisionPoly::Psi3, Point(0, 1)) == -10000);
  CHECK_THROWS_AS(division_poly_eval(make_curve(1, 1), DivisionPoly::Psi3, Point::infinity()), DomainError);
  // psi_3 vanishes exactly at x(3-torsion), so x(3P) has psi_3^2 in its denominator.
  std::mt19937 rng(2);
  const Curve c = make_curve(5, 3);
  for (const auto& p : sample_points(c, 10, rng)) {
    if (p.is_infinity()) continue;
    const Point t = scalar_mul(c, p, 3);
    if (t.is_infinity()) continue;
    const Rational psi3 = psi3_poly(c)(p.x());
    const Rational g = psi4_cofactor_poly(c)(p.x());
    const Rational f = rhs_poly(c)(p.x());
    CHECK(t.x() == p.x() - Rational(8) * f * g / (psi3 * psi3));
  }
}

TEST_CASE("u and z") {
  const Curve c = make_curve(10, 1);
  const UZ at_p0 = uz_eval(c, Point(0, 1));
  CHECK(at_p0.u == 10000);
  CHECK_FALSE(at_p0.z.has_value());
  CHECK(uz_eval(c, Point(-10, 1)).u == 40080);
  const UZ at_p2 = uz_eval(c, Point(-1, 10));
  CHECK(at_p2.u == 10209);
  CHECK(*at_p2.z == 10209);
  std::mt19937 rng(4);
  for (auto [m, n] : std::vector<std::pair<long, long>>{{1, 2}, {10, 1}, {4, 9}}) {
    const Curve e = make_curve(m, n);
    for (const auto& p : sample_points(e, 15, rng)) {
      if (p.is_infinity() || p.y().is_zero()) continue;
      const Rational x = p.x();
      const Rational u = uz_eval(e, p).u;
      const Rational x2 = x * x + Rational(m * m);
      CHECK(u == x2 * x2 - Rational(8 * n * n) * x);
      CHECK(scalar_mul(e, p, 2).x() == u / (Rational(4) * rhs_poly(e)(x)));
    }
  }
}

TEST_CASE("kl identity vanishes on the curve") {
  CHECK(kl_identity_residual(make_curve(1, 2), Point(0, 2)) == 0);
  CHECK(kl_identity_residual(make_curve(10, 1), Point(-1, 10)) == 0);
  CHECK(kl_identity_residual(make_curve(7, 1), Point(-3, 11)) == 0);
  CHECK_THROWS_AS(kl_identity_residual(make_curve(1, 2), Point(1, 1)), DomainError);
}

}  // TEST_SUITE
