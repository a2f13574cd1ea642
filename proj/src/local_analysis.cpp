#include "emn/local_analysis.hpp"

#include <set>
#include <sstream>

namespace emn {

std::string KodairaType::to_string() const {
  switch (kind) {
    case Kind::I: return "I" + std::to_string(k);
    case Kind::II: return "II";
    case Kind::III: return "III";
    case Kind::IV: return "IV";
    case Kind::Unsupported: return "unsupported(" + reason + ")";
  }
  return "?";
}

bool is_global_minimal(const Curve& c, std::uint64_t effort) {
  const Factorization f = factor(c.disc, effort);
  std::set<Integer> primes{2, 3};
  for (const auto& pp : f.factors) primes.insert(pp.prime);
  for (const auto& p : primes) {
    const bool ok = valuation(c.c4, p) < 4 || valuation(c.c6, p) < 6 || f.exponent_of(p) < 12;
    if (!ok) return false;
  }
  return true;
}

namespace {

bool both_even(const Curve& c) { return mpz_even_p(c.m.get_mpz_t()) && mpz_even_p(c.n.get_mpz_t()); }

void require_coprime(const Curve& c) {
  if (gcd(c.m, c.n) != 1) throw PreconditionError("reduction table needs gcd(m, n) = 1 on " + c.label());
}

void require_prime(const Integer& p) {
  if (p < 2 || !is_prime(p)) throw DomainError(emn::to_string(p) + " is not prime");
}

struct LongModel {
  Integer a1, a2, a3, a4, a6;
};

// [1, r, s, t]: x -> x + r, y -> y + s x + t, applied to y^2 = x^3 + a4 x + a6.
LongModel shift(const Curve& c, long r, long s, long t) {
  const Integer R(r), S(s), T(t);
  LongModel w;
  w.a1 = 2 * S;
  w.a2 = 3 * R - S * S;
  w.a3 = 2 * T;
  w.a4 = c.a4 + 3 * R * R - 2 * S * T;
  w.a6 = c.a6 + R * c.a4 + R * R * R - T * T;
  return w;
}

bool divides(const Integer& d, const Integer& a) { return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0; }

}  // namespace

KodairaType kodaira_type(const Curve& c, const Integer& p) {
  require_prime(p);
  if (p == 2) {
    if (both_even(c)) return KodairaType::unsupported("m and n both even");
    require_coprime(c);
    return KodairaType::of(mpz_odd_p(c.n.get_mpz_t()) ? KodairaType::Kind::IV : KodairaType::Kind::III);
  }
  require_coprime(c);
  if (p == 3) {
    if (!divides(3, c.m)) return KodairaType::good();
    const unsigned long r = mpz_fdiv_ui(c.n.get_mpz_t(), 9);
    return KodairaType::of(r == 1 || r == 8 ? KodairaType::Kind::III : KodairaType::Kind::II);
  }
  if (!divides(p, c.disc)) return KodairaType::good();
  return KodairaType::multiplicative(valuation(c.disc, p));
}

KodairaType kodaira_type_by_shift(const Curve& c, const Integer& p) {
  if (p != 2 && p != 3) throw DomainError("shift derivation covers p = 2 and p = 3 only");
  LongModel w;
  if (p == 3) {
    require_coprime(c);
    if (!divides(3, c.m)) return KodairaType::good();
    w = shift(c, -1, 0, 0);
  } else {
    if (both_even(c)) return KodairaType::unsupported("m and n both even");
    require_coprime(c);
    const bool n_odd = mpz_odd_p(c.n.get_mpz_t());
    const bool m_odd = mpz_odd_p(c.m.get_mpz_t());
    if (n_odd && !m_odd) w = shift(c, 0, 0, 1);
    else if (n_odd) w = shift(c, 1, 1, 1);
    else w = shift(c, 1, 1, 0);
  }
  if (!divides(p, w.a3) || !divides(p, w.a4) || !divides(p, w.a6))
    throw InternalContradiction("shifted model of " + c.label() + " is not singular at the origin mod " +
                                emn::to_string(p));
  const Integer b2 = w.a1 * w.a1 + 4 * w.a2;
  const Integer b6 = w.a3 * w.a3 + 4 * w.a6;
  const Integer b8 = w.a1 * w.a1 * w.a6 + 4 * w.a2 * w.a6 - w.a1 * w.a3 * w.a4 + w.a2 * w.a3 * w.a3 - w.a4 * w.a4;
  const Integer p2 = p * p, p3 = p2 * p;
  if (!divides(p, b2)) return KodairaType::multiplicative(valuation(c.disc, p));
  if (!divides(p2, w.a6)) return KodairaType::of(KodairaType::Kind::II);
  if (!divides(p3, b8)) return KodairaType::of(KodairaType::Kind::III);
  if (!divides(p3, b6)) return KodairaType::of(KodairaType::Kind::IV);
  return KodairaType::unsupported("beyond type IV");
}

unsigned implied_disc_valuation(const KodairaType& t, const Integer& p) {
  using K = KodairaType::Kind;
  if (p == 2 && t.kind == K::IV) return 4;
  if (p == 2 && t.kind == K::III) return 6;
  if (p == 3 && (t.kind == K::II || t.kind == K::III)) return 3;
  if (t.kind == K::I) return t.k;
  throw DomainError("no implied valuation for " + t.to_string() + " at " + emn::to_string(p));
}

std::string SquarefreeCheck::certificate() const {
  std::ostringstream os;
  os << "disc = " << disc.to_string();
  if (!squares.empty()) {
    os << "; square factors:";
    for (const auto& pp : squares) os << " " << pp.prime << "^" << pp.exponent;
  }
  return os.str();
}

SquarefreeCheck squarefree_condition(const Curve& c, std::uint64_t effort) {
  SquarefreeCheck out;
  auto scan = [&out](const Factorization& f) {
    out.disc = f;
    out.squares.clear();
    for (const auto& pp : f.factors)
      if (pp.prime > 3 && pp.exponent >= 2) out.squares.push_back(pp);
    out.holds = out.squares.empty();
  };
  try {
    scan(factor(c.disc, effort));
  } catch (const IncompleteFactorization& e) {
    scan(e.partial());
    // A square among the primes already found decides the question.
    if (out.holds) throw;
  }
  return out;
}

bool squarefree_condition_holds(const Curve& c, std::uint64_t effort) {
  return squarefree_condition(c, effort).holds;
}

namespace {

// -1 if q lies below the root isolated by b, +1 above, 0 equal. Shrinks b.
int compare_to_root(const Polynomial& f, RationalBracket& b, const Rational& q) {
  if (b.lo == b.hi) return q < b.lo ? -1 : (q > b.lo ? 1 : 0);
  if (b.lo < q && q <= b.hi && f(q).is_zero()) return 0;
  for (;;) {
    if (q <= b.lo) return -1;
    if (q >= b.hi) {
      // The root may sit exactly at hi.
      return q == b.hi && f(q).is_zero() ? 0 : 1;
    }
    b = refine_root(f, b, b.width() / Rational(2));
    if (b.lo == b.hi) return q < b.lo ? -1 : (q > b.lo ? 1 : 0);
  }
}

void expect_below(const Polynomial& f, RationalBracket& b, const Rational& q, const char* what) {
  if (compare_to_root(f, b, q) >= 0) throw InternalContradiction(std::string("root bound failed: ") + what);
}

void expect_above(const Polynomial& f, RationalBracket& b, const Rational& q, const char* what) {
  if (compare_to_root(f, b, q) <= 0) throw InternalContradiction(std::string("root bound failed: ") + what);
}

}  // namespace

RootBounds real_root_bounds(const Curve& c, mpfr_prec_t prec) {
  const Polynomial f = rhs_poly(c);
  const Rational tolerance(Integer(1), Integer(10'000'000'000L));
  RootBounds out;
  for (auto b : isolate_real_roots(f)) out.roots.push_back(refine_root(f, b, tolerance));
  out.root_count = static_cast<int>(out.roots.size());
  const Integer n2 = c.n * c.n, m2 = c.m * c.m;
  const bool one_root = 27 * n2 * n2 - 4 * m2 * m2 * m2 > 0;
  if (out.root_count != (one_root ? 1 : 3))
    throw InternalContradiction("root count disagrees with the discriminant sign on " + c.label());

  out.l = cbrt(Interval(n2, prec));
  const Rational m_bound = -Rational(c.m) - Rational(n2, 2 * m2);

  if (one_root) {
    out.lower_by_m = m_bound;
    RationalBracket b = out.roots[0];
    expect_below(f, b, m_bound, "-m(1 + l^3/(2m^3)) < root");
    // The l-bound is irrational; compare both enclosure endpoints, raising
    // precision until they land on the same side.
    for (mpfr_prec_t wp = prec;; wp *= 2) {
      const Interval l = cbrt(Interval(n2, wp));
      const Interval bound = -l - Interval(m2, wp) / (Interval(3L, wp) * l);
      RationalBracket probe = b;
      if (compare_to_root(f, probe, bound.upper_exact()) < 0) {
        out.lower_by_l = bound;
        break;
      }
      if (compare_to_root(f, probe, bound.lower_exact()) >= 0)
        throw InternalContradiction("root bound failed: -l(1 + m^2/(3l^2)) < root");
      if (wp > 1 << 16) throw PrecisionError("could not separate the l-bound from the root");
    }
    return out;
  }

  out.three_root_estimates = c.m * m2 >= 3 * n2;
  if (out.three_root_estimates) {
    out.alpha_lower = m_bound;
    out.beta_upper = Rational(2 * n2, m2);
    out.gamma_lower = Rational(c.m) - Rational(n2, m2);
    if (*out.beta_upper > *out.gamma_lower) throw InternalContradiction("2l^3/m^2 > m(1 - l^3/m^3)");
    expect_below(f, out.roots[0], *out.alpha_lower, "alpha lower bound");
    expect_above(f, out.roots[0], Rational(0), "alpha < 0");
    expect_below(f, out.roots[1], Rational(0), "beta > 0");
    expect_above(f, out.roots[1], *out.beta_upper, "beta upper bound");
    expect_below(f, out.roots[2], *out.gamma_lower, "gamma lower bound");
  }
  return out;
}

}  // namespace emn
