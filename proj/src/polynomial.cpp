#include "emn/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace emn {

Polynomial::Polynomial(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }
Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1, Rational(0));
  v[degree] = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Interval Polynomial::operator()(const Interval& x) const {
  Interval acc(0L, x.precision());
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Interval(*it, x.precision());
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
  return Polynomial(std::move(d));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  c_ = std::move(r);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  for (auto& a : c_) a *= c;
  trim();
  return *this;
}

void Polynomial::divmod(const Polynomial& divisor, Polynomial& quotient, Polynomial& remainder) const {
  if (divisor.is_zero()) throw DomainError("polynomial division by zero");
  remainder = *this;
  const long dd = divisor.degree();
  if (remainder.degree() < dd) {
    quotient = {};
    return;
  }
  std::vector<Rational> q(static_cast<std::size_t>(remainder.degree() - dd + 1), Rational(0));
  while (!remainder.is_zero() && remainder.degree() >= dd) {
    const std::size_t shift = static_cast<std::size_t>(remainder.degree() - dd);
    const Rational factor = remainder.leading() / divisor.leading();
    q[shift] = factor;
    for (std::size_t i = 0; i < divisor.c_.size(); ++i) remainder.c_[i + shift] -= factor * divisor.c_[i];
    remainder.trim();
  }
  quotient = Polynomial(std::move(q));
}

Polynomial Polynomial::operator%(const Polynomial& divisor) const {
  Polynomial q, r;
  divmod(divisor, q, r);
  return r;
}

std::vector<Integer> Polynomial::primitive_integer_coefficients() const {
  if (is_zero()) throw DomainError("zero polynomial has no primitive part");
  Integer lcm = 1;
  for (const auto& a : c_) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a.den().get_mpz_t());
  std::vector<Integer> out;
  out.reserve(c_.size());
  Integer content = 0;
  for (const auto& a : c_) {
    Integer v = a.num() * (lcm / a.den());
    content = gcd(content, v);
    out.push_back(v);
  }
  if (c_.back().sign() < 0) content = -content;
  for (auto& v : out) v /= content;
  return out;
}

std::string Polynomial::to_string(const char* var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long i = degree(); i >= 0; --i) {
    const Rational& a = c_[static_cast<std::size_t>(i)];
    if (a.is_zero()) continue;
    if (!first) os << (a.sign() < 0 ? " - " : " + ");
    else if (a.sign() < 0) os << "-";
    first = false;
    const Rational mag = abs(a);
    if (i == 0 || mag != 1) os << mag;
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return x * (Rational(1) / x.leading());
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() <= 0) return p;
  const Polynomial g = gcd(p, p.derivative());
  Polynomial q, r;
  p.divmod(g, q, r);
  return q * (Rational(1) / q.leading());
}

namespace {

std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
  std::vector<Polynomial> seq{p, p.derivative()};
  while (!seq.back().is_zero() && seq.back().degree() > 0) {
    Polynomial r = seq[seq.size() - 2] % seq.back();
    if (r.is_zero()) break;
    seq.push_back(r * Rational(-1));
  }
  return seq;
}

std::size_t sign_changes(const std::vector<Polynomial>& seq, const Rational& x) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& q : seq) {
    const int s = q.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

Rational cauchy_bound(const Polynomial& p) {
  Rational m = 0;
  for (long i = 0; i < p.degree(); ++i) m = std::max(m, abs(p.coeff(static_cast<std::size_t>(i)) / p.leading()));
  return m + 1;
}

void isolate(const std::vector<Polynomial>& seq, const Rational& a, const Rational& b, std::size_t count,
             std::vector<RationalBracket>& out) {
  if (count == 0) return;
  if (count == 1) {
    out.push_back({a, b});
    return;
  }
  const Rational mid = (a + b) / Rational(2);
  const std::size_t left = sign_changes(seq, a) - sign_changes(seq, mid);
  isolate(seq, a, mid, left, out);
  isolate(seq, mid, b, count - left, out);
}

}  // namespace

std::size_t count_real_roots(const Polynomial& p, const Rational& a, const Rational& b) {
  const auto seq = sturm_sequence(squarefree_part(p));
  return sign_changes(seq, a) - sign_changes(seq, b);
}

std::vector<RationalBracket> isolate_real_roots(const Polynomial& p) {
  if (p.is_zero()) throw DomainError("zero polynomial has no isolated roots");
  if (p.degree() == 0) return {};
  const Polynomial sp = squarefree_part(p);
  const auto seq = sturm_sequence(sp);
  const Rational bound = cauchy_bound(sp);
  std::vector<RationalBracket> out;
  isolate(seq, -bound, bound, sign_changes(seq, -bound) - sign_changes(seq, bound), out);
  return out;
}

RationalBracket refine_root(const Polynomial& p, RationalBracket bracket, const Rational& max_width) {
  const int s_hi = p.sign_at(bracket.hi);
  if (s_hi == 0) return {bracket.hi, bracket.hi};
  while (bracket.width() > max_width) {
    const Rational mid = (bracket.lo + bracket.hi) / Rational(2);
    const int s = p.sign_at(mid);
    if (s == 0) return {mid, mid};
    if (s == s_hi) bracket.hi = mid;
    else bracket.lo = mid;
  }
  return bracket;
}

Rational simplest_rational_between(const Rational& lo, const Rational& hi) {
  if (hi < lo) throw DomainError("empty interval");
  if (lo.sign() <= 0 && hi.sign() >= 0) return 0;
  if (hi.sign() < 0) return -simplest_rational_between(-hi, -lo);
  const Integer fl = floor(lo);
  if (Rational(fl) == lo) return lo;
  if (Rational(Integer(fl + 1)) <= hi) return Rational(Integer(fl + 1));
  // Both ends lie in (fl, fl + 1): recurse on the reciprocals of the
  // fractional parts (continued-fraction step).
  const Rational inner = simplest_rational_between(Rational(1) / (hi - Rational(fl)), Rational(1) / (lo - Rational(fl)));
  return Rational(fl) + Rational(1) / inner;
}

namespace {

// Splits off the root x = 0 and returns the cofactor.
Polynomial strip_zero_root(const Polynomial& p, bool& has_zero_root) {
  std::size_t k = 0;
  while (k < p.coeffs().size() && p.coeffs()[k].is_zero()) ++k;
  has_zero_root = k > 0;
  return Polynomial(std::vector<Rational>(p.coeffs().begin() + static_cast<long>(k), p.coeffs().end()));
}

void finish(std::vector<Rational>& roots, bool zero) {
  if (zero) roots.push_back(0);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
}

}  // namespace

bool rational_roots_by_divisors(const Polynomial& p, const RationalRootOptions& opts, std::vector<Rational>& roots) {
  if (p.is_zero()) throw DomainError("zero polynomial has infinitely many roots");
  roots.clear();
  bool zero = false;
  const Polynomial q = strip_zero_root(p, zero);
  if (q.degree() <= 0) {
    finish(roots, zero);
    return true;
  }
  const auto ints = q.primitive_integer_coefficients();
  std::vector<Integer> d0, dn;
  try {
    auto a = divisors(factor(ints.front(), opts.factor_effort), opts.divisor_pair_cap);
    auto b = divisors(factor(ints.back(), opts.factor_effort), opts.divisor_pair_cap);
    if (!a || !b) return false;
    d0 = std::move(*a);
    dn = std::move(*b);
  } catch (const IncompleteFactorization&) {
    return false;
  }
  if (d0.size() * dn.size() > opts.divisor_pair_cap) return false;
  const Rational bound = cauchy_bound(q);
  for (const auto& den : dn) {
    for (const auto& num : d0) {
      if (gcd(num, den) != 1) continue;
      const Rational r(num, den);
      if (r > bound) break;
      for (const Rational& cand : {r, -r})
        if (q(cand).is_zero()) roots.push_back(cand);
    }
  }
  finish(roots, zero);
  return true;
}

std::vector<Rational> rational_roots_by_isolation(const Polynomial& p) {
  if (p.is_zero()) throw DomainError("zero polynomial has infinitely many roots");
  std::vector<Rational> roots;
  bool zero = false;
  const Polynomial q = strip_zero_root(p, zero);
  if (q.degree() <= 0) {
    finish(roots, zero);
    return roots;
  }
  const Integer lead = abs(q.primitive_integer_coefficients().back());
  const Polynomial sp = squarefree_part(q);
  // Distinct fractions with denominators <= lead are >= 1/lead^2 apart.
  const Rational max_width(Integer(1), Integer(2 * lead * lead));
  for (auto bracket : isolate_real_roots(sp)) {
    bracket = refine_root(sp, bracket, max_width);
    const Rational cand = simplest_rational_between(bracket.lo, bracket.hi);
    if (cand.den() <= lead && q(cand).is_zero()) roots.push_back(cand);
  }
  finish(roots, zero);
  return roots;
}

std::vector<Rational> rational_roots(const Polynomial& p, const RationalRootOptions& opts) {
  std::vector<Rational> roots;
  if (rational_roots_by_divisors(p, opts, roots)) return roots;
  return rational_roots_by_isolation(p);
}

}  // namespace emn
