#include "emn/heights.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace emn {

namespace {

// 2^-e, exact at any precision.
Interval dyadic(unsigned e, mpfr_prec_t prec) {
  Integer d = 1;
  mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), e);
  return Interval(Rational(Integer(1), d), prec);
}

// b-invariants of y^2 = f(x - s), i.e. x^3 + A2 x^2 + A4 x + A6.
struct ShiftedInvariants {
  Interval b2, b4, b6, b8;

  ShiftedInvariants(const Curve& c, const Interval& s) {
    const mpfr_prec_t prec = s.precision();
    const Interval m2(c.m * c.m, prec), n2(c.n * c.n, prec);
    const Interval a2 = Interval(-3L, prec) * s;
    const Interval a4 = Interval(3L, prec) * sqr(s) - m2;
    const Interval a6 = m2 * s + n2 - s * sqr(s);
    b2 = Interval(4L, prec) * a2;
    b4 = Interval(2L, prec) * a4;
    b6 = Interval(4L, prec) * a6;
    b8 = Interval(4L, prec) * a2 * a6 - sqr(a4);
  }

  // u(x) = x^4 - b4 x^2 - 2 b6 x - b8
  Interval u(const Interval& x) const {
    const mpfr_prec_t prec = x.precision();
    return ((x * x - b4) * x - Interval(2L, prec) * b6) * x - b8;
  }
  // 4x^3 + b2 x^2 + 2 b4 x + b6
  Interval doubling_denominator(const Interval& x) const {
    const mpfr_prec_t prec = x.precision();
    return ((Interval(4L, prec) * x + b2) * x + Interval(2L, prec) * b4) * x + b6;
  }
  // z as a polynomial in t = 1/x: 1 - b4 t^2 - 2 b6 t^3 - b8 t^4
  Interval z_of_t(const Interval& t) const {
    const mpfr_prec_t prec = t.precision();
    return Interval(1L, prec) - sqr(t) * (b4 + t * (Interval(2L, prec) * b6 + t * b8));
  }
};

Interval standard_shift(const Curve& c, mpfr_prec_t prec) {
  const Interval l = cbrt(Interval(c.n * c.n, prec));
  return Interval(2L, prec) * l + Interval(1L, prec) / (Interval(3L, prec) * l);
}

Interval shift_value(const Curve& c, const ArchStrategy& s, mpfr_prec_t prec) {
  if (s.kind == ArchStrategy::Kind::ModifiedTate) return Interval(0L, prec);
  if (s.standard_shift) return standard_shift(c, prec);
  return Interval(s.shift, prec);
}

// Lower bound on x over the real points visited by the series, in the
// coordinate the series uses.
Interval visited_lower_bound(const HeightContext& ctx, const ArchStrategy& s, mpfr_prec_t prec) {
  const RootBounds& r = ctx.roots();
  if (s.kind == ArchStrategy::Kind::ModifiedTate) {
    if (r.root_count != 3 || r.largest().lo.sign() <= 0)
      throw StrategyError("modified Tate series needs x > 0 on the identity component of " + ctx.curve().label());
    return Interval(r.largest().lo, prec);
  }
  const Interval lo = shift_value(ctx.curve(), s, prec) + Interval(r.smallest().lo, prec);
  if (!lo.is_positive())
    throw StrategyError("shift " + s.to_string() + " does not clear the real roots of " + ctx.curve().label());
  return lo;
}

Interval clamp_log(const Interval& term, const Interval& bound) {
  const Interval window = Interval::hull(-bound, bound);
  try {
    return intersect(term, window);
  } catch (const PrecisionError&) {
    throw InternalContradiction("|log z| exceeds its proven bound");
  }
}

}  // namespace

Interval HeightValue::value(mpfr_prec_t prec) const {
  Interval total = arch;
  for (const auto& t : exact_part) total += Interval(t.coeff, prec) * log_of(t.base, prec);
  return total;
}

std::string HeightValue::exact_string() const {
  if (exact_part.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : exact_part) {
    if (!first) os << (t.coeff.sign() < 0 ? " - " : " + ");
    else if (t.coeff.sign() < 0) os << "-";
    first = false;
    os << abs(t.coeff) << "*log(" << t.base << ")";
  }
  return os.str();
}

std::string ArchStrategy::to_string() const {
  if (kind == Kind::ModifiedTate) return "modified-tate";
  if (standard_shift) return "shifted-tate(2l+1/(3l))";
  return "shifted-tate(" + shift.to_string() + ")";
}

HeightContext::HeightContext(Curve c, HeightOptions opts)
    : curve_(std::move(c)),
      opts_(opts),
      disc_(factor(curve_.disc, opts_.factor_effort)),
      roots_(real_root_bounds(curve_, opts_.precision_bits)) {}

ArchStrategy HeightContext::default_strategy() const {
  if (roots_.root_count == 3) return ArchStrategy::modified();
  if (curve_.m == 1 && curve_.n >= 27) return ArchStrategy::standard();
  return ArchStrategy::shifted(Rational(Integer(-floor(roots_.smallest().lo) + 1)));
}

HeightContext::ZBound HeightContext::z_bound(const ArchStrategy& s) const {
  const mpfr_prec_t prec = opts_.precision_bits;
  const Curve& c = curve_;
  if (s.kind == ArchStrategy::Kind::ShiftedTate && s.standard_shift && c.m == 1 && c.n >= 27) {
    visited_lower_bound(*this, s, prec);
    return {-log(Interval::from_decimal("0.098", prec)), "E_{1,n} regime: 0.098 < z < 9.075"};
  }
  if (s.kind == ArchStrategy::Kind::ModifiedTate && c.n == 1 && c.m >= 10) {
    visited_lower_bound(*this, s, prec);
    const Interval m(c.m, prec), m1(c.m - 1, prec);
    return {Interval(2L, prec) * log(Interval(1L, prec) + sqr(m) / sqr(m1)), "E_{m,1} regime: 1 < z < (1 + m^2/(m-1)^2)^2"};
  }
  // Enclose z(t), t = 1/x, over the x-ranges holding real points by interval
  // evaluation on a grid, refining until every cell is bounded away from zero.
  const Interval x_lo = visited_lower_bound(*this, s, prec);
  const Interval shift = shift_value(c, s, prec);
  const ShiftedInvariants inv(c, shift);
  std::vector<std::pair<Rational, Rational>> t_ranges;
  const Interval x_identity = s.kind == ArchStrategy::Kind::ModifiedTate ? x_lo : shift + Interval(roots_.largest().lo, prec);
  t_ranges.emplace_back(Rational(0), (Interval(1L, prec) / Interval(x_identity.lower_exact(), prec)).upper_exact());
  if (s.kind == ArchStrategy::Kind::ShiftedTate && roots_.root_count == 3) {
    // The bounded component: x in [alpha, beta].
    const Interval beta = shift + Interval(roots_.roots[1].hi, prec);
    t_ranges.emplace_back((Interval(1L, prec) / Interval(beta.upper_exact(), prec)).lower_exact(),
                          (Interval(1L, prec) / Interval(x_lo.lower_exact(), prec)).upper_exact());
  }
  for (long cells = 64; cells <= (1L << 18); cells *= 4) {
    std::optional<Interval> range;
    for (const auto& [t_lo, t_hi] : t_ranges) {
      const Rational step = (t_hi - t_lo) / Rational(cells);
      for (long i = 0; i < cells; ++i) {
        const Interval t = Interval::hull(Interval(t_lo + step * Rational(i), prec), Interval(t_lo + step * Rational(i + 1), prec));
        const Interval z = inv.z_of_t(t);
        if (!z.is_positive()) {
          range.reset();
          break;
        }
        range = range ? Interval::hull(*range, z) : z;
      }
      if (!range) break;
    }
    if (!range) continue;
    const Interval bound = max(-log(Interval(range->lower_exact(), prec)), log(Interval(range->upper_exact(), prec)));
    return {Interval(max(bound, Interval(0L, prec)).upper_exact(), prec), "grid(" + std::to_string(cells) + " cells)"};
  }
  throw PrecisionError("could not bound z away from zero on " + c.label());
}

ArchResult lambda_arch(const HeightContext& ctx, const Point& p, const ArchStrategy& s, unsigned terms,
                       mpfr_prec_t precision) {
  const Curve& c = ctx.curve();
  if (p.is_infinity()) throw DomainError("local height at O");
  if (p.y().is_zero()) throw DomainError("local height at a 2-torsion point");
  if (!contains(c, p)) throw DomainError("point " + p.to_string() + " is not on " + c.label());
  const Interval M = ctx.z_bound(s).m;
  const bool modified = s.kind == ArchStrategy::Kind::ModifiedTate;

  // Tail: (1/8) sum_{k >= K0} 4^-k M. Pick K so it stays below a quarter of
  // the target radius 2^(-precision/2).
  const double log2_m = std::max(0.0, std::log2(M.upper() + 1));
  const unsigned needed = static_cast<unsigned>(std::ceil((precision / 2.0 + 2 + log2_m) / 2.0)) + 1;
  const unsigned K = std::max(terms, needed);
  const double target = std::ldexp(1.0, -static_cast<int>(precision / 2));

  for (mpfr_prec_t wp = precision + 64 + 2 * K;; wp *= 2) {
    if (wp > 64 * precision + 4096) throw PrecisionError("archimedean series did not reach target precision");
    try {
      const ShiftedInvariants inv(c, shift_value(c, s, wp));
      const Interval Mw(M.upper_exact(), wp);
      ArchResult out;
      out.terms = K;
      out.working_precision = wp;
      Interval sum(0L, wp);
      Interval x(wp);
      unsigned k0;
      if (modified) {
        const Rational u = uz_eval(c, p).u;
        sum = log(Interval(abs(u), wp)) * dyadic(3, wp);
        x = Interval(u / (Rational(4) * p.y() * p.y()), wp);
        k0 = 1;
      } else {
        x = Interval(p.x(), wp) + shift_value(c, s, wp);
        sum = log(x) * dyadic(1, wp);
        k0 = 0;
      }
      const unsigned k_end = modified ? K + 1 : K;
      bool lost = false;
      for (unsigned k = k0; k < k_end; ++k) {
        const Interval weight = dyadic(3 + 2 * k, wp);
        if (lost) {
          sum += Interval::hull(-Mw, Mw) * weight;
          continue;
        }
        const Interval u = inv.u(x);
        const Interval x4 = sqr(sqr(x));
        Interval term(wp);
        if (!x.is_positive()) {
          lost = true;
          term = Interval::hull(-Mw, Mw);
        } else {
          const Interval z = u / x4;
          out.z_trace.push_back(z);
          term = z.is_positive() ? clamp_log(log(z), Mw) : Interval::hull(-Mw, Mw);
          const Interval d = inv.doubling_denominator(x);
          if (d.is_positive()) x = u / d;
          else lost = true;
        }
        sum += term * weight;
      }
      // sum_{k >= k_end} 4^-k / 8 = 4^-k_end / 6
      const Interval tail = Mw * dyadic(2 * k_end, wp) / Interval(6L, wp);
      sum += Interval::hull(-tail, tail);
      out.value = sum;
      if (out.value.radius() <= target / 2) return out;
    } catch (const PrecisionError&) {
      // retry at a higher working precision
    }
  }
}

Rational lambda_nonarch(const Curve& c, const Point& p, const Integer& prime) {
  if (p.is_infinity()) throw DomainError("local height at O");
  const KodairaType t = kodaira_type(c, prime);
  using K = KodairaType::Kind;
  if (t.kind == K::Unsupported) throw UnsupportedReduction(t.to_string() + " at " + emn::to_string(prime));
  if (t.kind == K::I && t.k >= 2)
    throw UnsupportedReduction("type " + t.to_string() + " at " + emn::to_string(prime) + " on " + c.label());
  const unsigned vd = mpz_divisible_p(c.disc.get_mpz_t(), prime.get_mpz_t()) ? valuation(c.disc, prime) : 0;
  const Rational disc_term(Integer(vd), Integer(12));
  const Rational& x = p.x();
  const long vx = x.is_zero() ? 0 : valuation(x, prime);
  if (vx < 0) return disc_term + Rational(Integer(-vx), Integer(2));
  if (t.is_good()) return disc_term;

  auto positive_valuation = [&prime](const Rational& v) { return v.is_zero() || valuation(v, prime) > 0; };
  const Rational fx = Rational(3) * x * x - Rational(c.m * c.m);
  const Rational psi2 = Rational(2) * p.y();
  if (!(positive_valuation(fx) && positive_valuation(psi2))) return disc_term;

  if (t.kind != K::III && t.kind != K::IV)
    throw InternalContradiction(p.to_string() + " reduces to a singular point at " + emn::to_string(prime) +
                                " but the type is " + t.to_string());
  if (psi2.is_zero()) throw DomainError("local height at a 2-torsion point");
  const long B = valuation(psi2, prime);
  const Rational psi3 = division_poly_eval(c, DivisionPoly::Psi3, p);
  const bool psi3_dominates = psi3.is_zero() || valuation(psi3, prime) >= 3 * B;
  if ((t.kind == K::IV) != psi3_dominates)
    throw InternalContradiction("division polynomial valuations disagree with type " + t.to_string() + " at " +
                                emn::to_string(prime));
  if (t.kind == K::IV) return disc_term - Rational(Integer(B), Integer(3));
  return disc_term - Rational(Integer(valuation(psi3, prime)), Integer(8));
}

namespace {

void add_term(std::map<Integer, Rational>& acc, const Integer& base, const Rational& coeff) {
  if (coeff.is_zero()) return;
  acc[base] += coeff;
}

}  // namespace

HeightValue canonical_height(const HeightContext& ctx, const Point& p) {
  return canonical_height(ctx, p, ctx.default_strategy());
}

HeightValue canonical_height(const HeightContext& ctx, const Point& p, const ArchStrategy& s) {
  const Curve& c = ctx.curve();
  const mpfr_prec_t prec = ctx.options().precision_bits;
  HeightValue out{{}, Interval(0L, prec)};
  // Torsion points (only 2-torsion can reach this for the family) have height 0.
  if (p.is_infinity() || p.y().is_zero()) return out;
  if (!contains(c, p)) throw DomainError("point " + p.to_string() + " is not on " + c.label());

  std::map<Integer, Rational> acc;
  Integer rest = p.x().den();
  for (const auto& pp : ctx.disc_factorization().factors) {
    add_term(acc, pp.prime, lambda_nonarch(c, p, pp.prime));
    // lambda_inf carries (1/12) v_inf(disc) = -(1/12) log|disc|.
    add_term(acc, pp.prime, Rational(-Integer(pp.exponent), Integer(12)));
    mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), pp.prime.get_mpz_t());
  }
  // Good primes dividing the denominator contribute (1/2) v_p(den x) log p.
  if (rest > 1) {
    try {
      for (const auto& pp : factor(rest, ctx.options().factor_effort).factors)
        add_term(acc, pp.prime, Rational(Integer(pp.exponent), Integer(2)));
    } catch (const IncompleteFactorization& e) {
      for (const auto& pp : e.partial().factors) add_term(acc, pp.prime, Rational(Integer(pp.exponent), Integer(2)));
      add_term(acc, e.cofactor(), Rational(Integer(1), Integer(2)));
    }
  }
  for (auto& [base, coeff] : acc)
    if (!coeff.is_zero()) out.exact_part.push_back({base, coeff});
  out.arch = lambda_arch(ctx, p, s, ctx.options().series_terms, prec).value;
  return out;
}

HeightValue canonical_height(const Curve& c, const Point& p, mpfr_prec_t precision) {
  HeightOptions opts;
  opts.precision_bits = precision;
  return canonical_height(HeightContext(c, opts), p);
}

Interval naive_x_height(const Point& p, mpfr_prec_t prec) {
  if (p.is_infinity()) return Interval(0L, prec);
  const Integer num = abs(p.x().num());
  return log_of(num > p.x().den() ? num : p.x().den(), prec);
}

namespace {

// Bareiss fraction-free determinant.
Integer determinant(std::vector<std::vector<Integer>> a) {
  const std::size_t n = a.size();
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]);
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

struct DoublingForms {
  // F(X, Z) and G(X, Z), coefficients from X^4 down to Z^4.
  std::vector<Integer> f, g;

  explicit DoublingForms(const Curve& c)
      : f{1, 0, -c.b4, -2 * c.b6, -c.b8}, g{0, 4, c.b2, 2 * c.b4, c.b6} {}

  static Integer eval(const std::vector<Integer>& form, const Integer& X, const Integer& Z) {
    Integer acc = 0, zpow = 1;
    std::vector<Integer> xs(5);
    xs[0] = 1;
    for (int i = 1; i < 5; ++i) xs[i] = xs[i - 1] * X;
    for (int i = 4; i >= 0; --i) {
      acc += form[static_cast<std::size_t>(4 - i)] * xs[i] * zpow;
      zpow *= Z;
    }
    return acc;
  }

  static Interval eval(const std::vector<Integer>& form, const Interval& x) {
    const mpfr_prec_t prec = x.precision();
    Interval acc(0L, prec);
    for (const auto& coeff : form) acc = acc * x + Interval(coeff, prec);
    return acc;
  }

  Integer resultant() const {
    std::vector<std::vector<Integer>> s(8, std::vector<Integer>(8, 0));
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t i = 0; i < 5; ++i) {
        s[r][r + i] = f[i];
        s[r + 4][r + i] = g[i];
      }
    return abs(determinant(std::move(s)));
  }
};

Interval positive_log_part(const Interval& x) {
  const Interval a = abs(x);
  if (a.upper() <= 1.0) return Interval(0L, x.precision());
  if (a.lower() >= 1.0) return log(a);
  return Interval::hull(Interval(0L, x.precision()), log(Interval(a.upper_exact(), x.precision())));
}

}  // namespace

Interval doubling_limit_oracle(const Curve& c, const Point& p, unsigned k) {
  const mpfr_prec_t base = 128;
  if (p.is_infinity()) return Interval(0L, base);
  if (!contains(c, p)) throw DomainError("point " + p.to_string() + " is not on " + c.label());
  if (k == 0) return naive_x_height(p, base) * dyadic(1, base);
  if (p.y().is_zero()) return Interval(0L, base);

  const DoublingForms forms(c);
  const Integer R = forms.resultant();
  if (R == 0) throw InternalContradiction("doubling forms share a root");

  for (mpfr_prec_t wp = 256 + 8 * k;; wp *= 2) {
    if (wp > 1 << 16) throw PrecisionError("doubling oracle could not reach precision");
    try {
      Integer modulus = pow(R, k + 1);
      Integer X = p.x().num() % modulus, Z = p.x().den() % modulus;
      Interval x(p.x(), wp);
      Interval L = log_of(p.x().den(), wp);
      for (unsigned j = 0; j < k; ++j) {
        Integer F = DoublingForms::eval(forms.f, X, Z) % modulus;
        Integer G = DoublingForms::eval(forms.g, X, Z) % modulus;
        // gcd(F, G) divides R, and R divides the modulus.
        Integer g = gcd(gcd(F, G), R);
        if (F < 0) F += modulus;
        if (G < 0) G += modulus;
        modulus /= g;
        X = (F / g) % modulus;
        Z = (G / g) % modulus;
        const Interval Gx = DoublingForms::eval(forms.g, x);
        if (!Gx.is_positive()) throw PrecisionError("2^j P too close to a 2-torsion point");
        L = Interval(4L, wp) * L + log(Gx) - log_of(g, wp);
        x = DoublingForms::eval(forms.f, x) / Gx;
      }
      const Interval out = (L + positive_log_part(x)) * dyadic(1 + 2 * k, wp);
      if (out.radius() < 1e-12) return out;
    } catch (const PrecisionError&) {
      // retry at a higher working precision
    }
  }
}

Interval doubling_limit_oracle_exact(const Curve& c, const Point& p, unsigned k) {
  const mpfr_prec_t prec = 128;
  Point q = p;
  for (unsigned j = 0; j < k && !q.is_infinity(); ++j) {
    if (q.y().is_zero()) return Interval(0L, prec);
    const Rational x = q.x();
    const Rational x2 = u_poly(c)(x) / (Rational(4) * rhs_poly(c)(x));
    // Only x is needed; y is kept consistent up to sign via the curve equation.
    Rational y;
    if (!rational_sqrt(rhs_poly(c)(x2), y)) throw InternalContradiction("x(2Q) is not on the curve");
    q = Point(x2, y);
  }
  if (q.is_infinity()) return Interval(0L, prec);
  return naive_x_height(q, prec) * dyadic(1 + 2 * k, prec);
}

Interval height_pairing(const HeightContext& ctx, const Point& p, const Point& q) {
  const mpfr_prec_t prec = ctx.options().precision_bits;
  const Interval hp = canonical_height(ctx, p).value(prec);
  const Interval hq = canonical_height(ctx, q).value(prec);
  const Interval hs = canonical_height(ctx, add(ctx.curve(), p, q)).value(prec);
  return (hs - hp - hq) * dyadic(1, prec);
}

namespace {

Interval laplace_det(const std::vector<std::vector<Interval>>& a, std::vector<bool>& used, std::size_t row,
                     mpfr_prec_t prec) {
  const std::size_t n = a.size();
  if (row == n) return Interval(1L, prec);
  Interval acc(0L, prec);
  int sign = 1;
  for (std::size_t col = 0; col < n; ++col) {
    if (used[col]) continue;
    used[col] = true;
    const Interval minor = laplace_det(a, used, row + 1, prec);
    used[col] = false;
    const Interval term = a[row][col] * minor;
    if (sign > 0) acc += term;
    else acc -= term;
    sign = -sign;
  }
  return acc;
}

}  // namespace

Interval regulator(const HeightContext& ctx, const std::vector<Point>& points) {
  const std::size_t n = points.size();
  if (n == 0 || n > 6) throw DomainError("regulator needs 1 to 6 points");
  const mpfr_prec_t prec = ctx.options().precision_bits;
  std::vector<Interval> h;
  h.reserve(n);
  for (const auto& p : points) h.push_back(canonical_height(ctx, p).value(prec));
  std::vector<std::vector<Interval>> gram(n, std::vector<Interval>(n, Interval(prec)));
  for (std::size_t i = 0; i < n; ++i) {
    gram[i][i] = h[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Interval hs = canonical_height(ctx, add(ctx.curve(), points[i], points[j])).value(prec);
      gram[i][j] = gram[j][i] = (hs - h[i] - h[j]) * dyadic(1, prec);
    }
  }
  std::vector<bool> used(n, false);
  return laplace_det(gram, used, 0, prec);
}

Interval lambda_lower_bound(const Curve& c, mpfr_prec_t prec, std::uint64_t effort) {
  const bool e1n = c.m == 1 && c.n >= 27;
  const bool em1 = c.n == 1 && c.m >= 10;
  if (!e1n && !em1) throw NotApplicable("no proven height lower bound for " + c.label());
  const SquarefreeCheck sq = squarefree_condition(c, effort);
  if (!sq.holds) throw NotApplicable("square-free condition fails on " + c.label() + ": " + sq.certificate());
  if (e1n) return log_of(c.n, prec) / Interval(3L, prec) - Interval(Rational(619, 1000), prec);
  return log_of(c.m, prec) * dyadic(1, prec) - Interval(Rational(509, 1000), prec);
}

}  // namespace emn
