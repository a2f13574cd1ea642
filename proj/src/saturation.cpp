#include "emn/saturation.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace emn {

using nlohmann::json;

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::NotApplicable: return "not-applicable";
    case Status::NeedsExternalData: return "needs-external-data";
  }
  return "?";
}

Status CurveReport::overall() const {
  bool any_pass = false, any_external = false;
  for (const auto& c : checks) {
    if (c.status == Status::Fail) return Status::Fail;
    any_external |= c.status == Status::NeedsExternalData;
    any_pass |= c.status == Status::Pass;
  }
  if (any_external) return Status::NeedsExternalData;
  return any_pass ? Status::Pass : Status::NotApplicable;
}

namespace {

bool point_less(const Point& a, const Point& b) {
  if (a.is_infinity() || b.is_infinity()) return a.is_infinity() && !b.is_infinity();
  if (a.x() != b.x()) return a.x() < b.x();
  return a.y() < b.y();
}

bool is_integral(const Point& p) { return p.is_infinity() || (p.x().is_integer() && p.y().is_integer()); }

std::vector<std::string> point_strings(const std::vector<Point>& pts) {
  std::vector<std::string> out;
  for (const auto& p : pts) out.push_back(p.to_string());
  return out;
}

}  // namespace

std::vector<Point> torsion_subgroup(const Curve& c, std::uint64_t effort) {
  // Every y with y^2 | disc divides s = prod p^floor(v_p / 2).
  Factorization half;
  for (const auto& pp : factor(c.disc, effort).factors)
    if (pp.exponent >= 2) half.factors.push_back({pp.prime, pp.exponent / 2});
  const auto ys = divisors(half, 10'000'000);
  if (!ys) throw PreconditionError("too many Lutz-Nagell candidates on " + c.label());
  std::vector<Integer> candidates{0};
  candidates.insert(candidates.end(), ys->begin(), ys->end());

  std::vector<Point> out{Point::infinity()};
  for (const auto& y : candidates) {
    const Polynomial cubic{Rational(c.a6 - y * y), Rational(c.a4), 0, 1};
    for (const auto& x : rational_roots_by_isolation(cubic)) {
      for (const Integer& sy : {Integer(y), Integer(-y)}) {
        const Point p(x, sy);
        Point q = p;
        for (int k = 1; k <= 12 && is_integral(q); ++k) {
          if (q.is_infinity()) {
            out.push_back(p);
            break;
          }
          q = add(c, q, p);
        }
        if (y == 0) break;
      }
    }
  }
  std::sort(out.begin(), out.end(), point_less);
  return out;
}

Polynomial division_equation(const Curve& c, const Point& p, int d) {
  if (d != 2 && d != 3) throw DomainError("division_points supports d = 2 and d = 3");
  if (p.is_infinity()) return d == 2 ? rhs_poly(c) : psi3_poly(c);
  const Polynomial f = rhs_poly(c);
  const Rational& xp = p.x();
  if (d == 2) return u_poly(c) - f * (Rational(4) * xp);
  // x(3Q) = X - psi_2 psi_4 / psi_3^2 = X - 8 f g / psi_3^2.
  const Polynomial psi3 = psi3_poly(c);
  return Polynomial{-xp, 1} * psi3 * psi3 - f * psi4_cofactor_poly(c) * Rational(8);
}

std::vector<Point> division_points(const Curve& c, const Point& p, int d) {
  if (!contains(c, p)) throw DomainError("point " + p.to_string() + " is not on " + c.label());
  const Polynomial eq = division_equation(c, p, d);
  const Polynomial f = rhs_poly(c);
  std::vector<Point> out;
  if (p.is_infinity()) out.push_back(p);
  for (const auto& x : rational_roots(eq)) {
    Rational y;
    if (!rational_sqrt(f(x), y)) continue;
    for (const Rational& sy : {y, -y}) {
      const Point q(x, sy);
      if (scalar_mul(c, q, d) == p) out.push_back(q);
      if (y.is_zero()) break;
    }
  }
  std::sort(out.begin(), out.end(), point_less);
  return out;
}

Interval siksek_index_bound(const Interval& regulator, const Interval& lambda, std::size_t rank) {
  const mpfr_prec_t prec = std::max(regulator.precision(), lambda.precision());
  const Interval lam(lambda.lower_exact(), prec);
  if (!lam.is_positive()) throw DomainError("Siksek bound needs lambda > 0");
  const Interval r(regulator.upper_exact(), prec);
  if (r.is_negative()) throw DomainError("negative regulator");
  Interval gamma(1L, prec);
  switch (rank) {
    case 1: break;
    case 2: gamma = Interval(2L, prec) / sqrt(Interval(3L, prec)); break;
    case 3: gamma = sqrt(Interval(2L, prec)); break;
    default: throw DomainError("Siksek bound implemented for rank 1 to 3");
  }
  return gamma * sqrt(r / pow(lam, static_cast<unsigned>(rank)));
}

Interval siksek_index_bound(const HeightContext& ctx, const std::vector<Point>& points, const Interval& lambda) {
  return siksek_index_bound(regulator(ctx, points), lambda, points.size());
}

namespace {

Interval q(long num, long den, mpfr_prec_t prec) { return Interval(Rational(Integer(num), Integer(den)), prec); }

}  // namespace

Interval e1n_window_index_bound(const Integer& n, mpfr_prec_t prec) {
  const Interval t = log_of(n, prec) / Interval(3L, prec);
  const Interval num = sqrt((t + q(716, 1000, prec)) * (t + q(541, 1000, prec)));
  return Interval(2L, prec) / sqrt(Interval(3L, prec)) * num / (t - q(619, 1000, prec));
}

Interval em1_window_index_bound(const Integer& m, mpfr_prec_t prec) {
  const Interval lm = log_of(m, prec);
  const Interval half = lm / Interval(2L, prec);
  const Interval quarter = lm / Interval(4L, prec);
  const Interval r = pow(half + q(290, 1000, prec), 3) +
                     Interval(2L, prec) * sqr(quarter + q(1308, 2000, prec)) * q(1214, 2000, prec);
  return sqrt(Interval(2L, prec)) * sqrt(r / pow(half - q(509, 1000, prec), 3));
}

Interval em1_combination_upper_bound(const Integer& m, bool p2_plus_p0, mpfr_prec_t prec) {
  const Interval lm = log_of(m, prec);
  if (p2_plus_p0) return lm + q(68, 1000, prec);
  return lm / Interval(2L, prec) + q(290, 1000, prec);
}

namespace {

CheckRecord squarefree_record(const Curve& c, std::uint64_t effort, bool& holds) {
  const SquarefreeCheck sq = squarefree_condition(c, effort);
  holds = sq.holds;
  CheckRecord rec{"squarefree-condition", sq.holds ? Status::Pass : Status::NotApplicable, json::object()};
  rec.certificate["disc"] = sq.disc.to_string();
  if (!sq.holds) {
    json squares = json::array();
    for (const auto& pp : sq.squares) squares.push_back(emn::to_string(pp.prime) + "^" + std::to_string(pp.exponent));
    rec.certificate["square_factors"] = squares;
  }
  return rec;
}

CheckRecord torsion_record(const Curve& c, std::uint64_t effort) {
  const auto tors = torsion_subgroup(c, effort);
  CheckRecord rec{"torsion-trivial", tors.size() == 1 ? Status::Pass : Status::Fail, json::object()};
  rec.certificate["torsion"] = point_strings(tors);
  return rec;
}

// Pass iff no listed point is d-divisible.
CheckRecord division_record(const Curve& c, const std::string& name,
                            const std::vector<std::pair<std::string, Point>>& points, int d) {
  CheckRecord rec{name, Status::Pass, json::object()};
  for (const auto& [label, p] : points) {
    const auto divs = division_points(c, p, d);
    rec.certificate[label] = point_strings(divs);
    if (!divs.empty()) rec.status = Status::Fail;
  }
  rec.certificate["d"] = d;
  return rec;
}

std::string str(const Interval& x) { return x.to_string(20); }

CheckRecord index_bound_record(const HeightContext& ctx, const std::vector<Point>& base, const Interval& lambda,
                               long threshold) {
  const Interval reg = regulator(ctx, base);
  const Interval bound = siksek_index_bound(reg, lambda, base.size());
  CheckRecord rec{"index-bound", Status::Pass, json::object()};
  rec.certificate["regulator"] = str(reg);
  rec.certificate["lambda"] = str(lambda);
  rec.certificate["bound"] = str(bound);
  rec.certificate["threshold"] = threshold;
  if (!(reg.is_positive() && certainly_less(bound, Interval(threshold, bound.precision())))) rec.status = Status::Fail;
  return rec;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (fn(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// With a full basis G of rank r, some completion B' of the base points by
// r - |base| members of G has R(B') / R(G) = index^2; a value in (0, 4)
// forces index 1.
CheckRecord external_ratio_record(const HeightContext& ctx, const std::vector<Point>& base,
                                  const std::vector<Point>& gens) {
  const Curve& c = ctx.curve();
  CheckRecord rec{"regulator-ratio", Status::Fail, json::object()};
  rec.certificate["generators"] = point_strings(gens);
  for (const auto& g : gens)
    if (!contains(c, g)) throw DomainError("generator " + g.to_string() + " is not on " + c.label());
  if (gens.size() < base.size() || gens.size() > 6) {
    rec.certificate["reason"] = "generator count out of range";
    return rec;
  }
  const Interval reg = regulator(ctx, gens);
  rec.certificate["regulator"] = str(reg);
  if (!reg.is_positive()) {
    rec.certificate["reason"] = "generators not certified independent";
    return rec;
  }
  json tried = json::array();
  for_each_subset(gens.size(), gens.size() - base.size(), [&](const std::vector<std::size_t>& idx) {
    std::vector<Point> pts = base;
    for (auto i : idx) pts.push_back(gens[i]);
    const Interval ratio = regulator(ctx, pts) / reg;
    tried.push_back({{"completion", idx}, {"ratio", str(ratio)}});
    if (ratio.is_positive() && certainly_less(ratio, Interval(4L, ratio.precision()))) {
      rec.status = Status::Pass;
      rec.certificate["completion"] = idx;
      rec.certificate["ratio"] = str(ratio);
      return true;
    }
    return false;
  });
  rec.certificate["tried"] = tried;
  return rec;
}

CheckRecord external_record(const std::string& why) {
  CheckRecord rec{"index-bound", Status::NeedsExternalData, json::object()};
  rec.certificate["reason"] = why;
  return rec;
}

}  // namespace

CurveReport verify_e1n(const Integer& n, const VerifyOptions& opts) {
  if (n < 2) throw PreconditionError("verify_e1n needs n >= 2");
  const Curve c = make_curve(1, n);
  CurveReport report{Integer(1), n, {}};
  bool squarefree = false;
  report.checks.push_back(squarefree_record(c, opts.heights.factor_effort, squarefree));
  if (!squarefree) return report;
  report.checks.push_back(torsion_record(c, opts.heights.factor_effort));

  const NamedPoints np = named_points(c);
  const Point p0_plus = add(c, np.p0, np.pplus1);
  report.checks.push_back(
      division_record(c, "two-independence", {{"P0", np.p0}, {"P+1", np.pplus1}, {"P0+P+1", p0_plus}}, 2));
  if (report.overall() == Status::Fail) return report;

  const HeightContext ctx(c, opts.heights);
  const std::vector<Point> base{np.p0, np.pminus1};
  if (opts.generators) {
    report.checks.push_back(external_ratio_record(ctx, base, *opts.generators));
    return report;
  }
  if (n <= 27) {
    report.checks.push_back(external_record("n <= 27: needs a Mordell-Weil basis from a descent"));
    return report;
  }
  const Interval lambda = lambda_lower_bound(c, opts.heights.precision_bits, opts.heights.factor_effort);
  if (n > 66) {
    report.checks.push_back(index_bound_record(ctx, base, lambda, 3));
    return report;
  }
  report.checks.push_back(index_bound_record(ctx, base, lambda, 5));
  report.checks.push_back(division_record(c, "three-division",
                                          {{"P0", np.p0},
                                           {"P-1", np.pminus1},
                                           {"P0+P-1", add(c, np.p0, np.pminus1)},
                                           {"P0-P-1", subtract(c, np.p0, np.pminus1)}},
                                          3));
  return report;
}

CurveReport verify_em1(const Integer& m, const VerifyOptions& opts) {
  if (m < 4) throw PreconditionError("verify_em1 needs m >= 4");
  const Curve c = make_curve(m, 1);
  CurveReport report{m, Integer(1), {}};
  bool squarefree = false;
  report.checks.push_back(squarefree_record(c, opts.heights.factor_effort, squarefree));
  if (!squarefree) return report;
  report.checks.push_back(torsion_record(c, opts.heights.factor_effort));

  const NamedPoints np = named_points(c);
  const Point& p0 = np.p0;
  const Point& pm = np.pminus1;
  const Point& p2 = *np.p2;
  report.checks.push_back(division_record(
      c, "two-independence", {{"P0", p0}, {"P+1", np.pplus1}, {"P0+P+1", add(c, p0, np.pplus1)}}, 2));

  const HeightContext ctx(c, opts.heights);
  const mpfr_prec_t prec = opts.heights.precision_bits;
  std::optional<Interval> lambda;
  if (m >= 10) lambda = lambda_lower_bound(c, prec, opts.heights.factor_effort);

  // The remaining four combinations: if Q = 2R then h(Q) = 4 h(R) >= 4 lambda,
  // so an upper bound on h(Q) below 4 lambda rules Q out of 2E(Q).
  const std::vector<std::pair<std::string, Point>> combos{{"P2", p2},
                                                          {"P-1+P2", add(c, pm, p2)},
                                                          {"P2+P0", add(c, p2, p0)},
                                                          {"P0+P-1+P2", add(c, add(c, p0, pm), p2)}};
  CheckRecord heights_rec{"two-independence-heights", Status::Pass, json::object()};
  for (const auto& [label, pt] : combos) {
    json cert = json::object();
    bool decided = false;
    if (lambda) {
      const Interval four_lambda = Interval(4L, prec) * *lambda;
      const Interval upper = em1_combination_upper_bound(m, label == "P2+P0", prec);
      cert["upper_bound"] = str(upper);
      cert["four_lambda"] = str(four_lambda);
      cert["height"] = str(canonical_height(ctx, pt).value(prec));
      decided = certainly_less(upper, four_lambda);
    }
    if (!decided) {
      const auto divs = division_points(c, pt, 2);
      cert["halves"] = point_strings(divs);
      if (!divs.empty()) heights_rec.status = Status::Fail;
    }
    cert["method"] = decided ? "height" : "division";
    heights_rec.certificate[label] = cert;
  }
  report.checks.push_back(heights_rec);
  if (report.overall() == Status::Fail) return report;

  const std::vector<Point> base{p0, pm, p2};
  if (opts.generators) {
    report.checks.push_back(external_ratio_record(ctx, base, *opts.generators));
    return report;
  }
  if (m < 59) {
    report.checks.push_back(external_record("m < 59: needs a Mordell-Weil basis from a descent"));
    return report;
  }
  report.checks.push_back(index_bound_record(ctx, base, *lambda, 3));
  return report;
}

CurveReport check_remark_relations() {
  CurveReport report;
  auto relation = [&report](long m, const Point& base, long k, const Point& expected, const std::string& text) {
    const Curve c = make_curve(m, 1);
    CheckRecord rec{"relation " + c.label(), Status::Pass, json::object()};
    rec.certificate["relation"] = text;
    if (!contains(c, base)) {
      rec.status = Status::Fail;
      rec.certificate["error"] = base.to_string() + " is not on the curve";
    } else {
      const Point got = scalar_mul(c, base, k);
      rec.certificate["computed"] = got.to_string();
      if (got != expected) rec.status = Status::Fail;
    }
    report.checks.push_back(rec);
  };
  relation(1, Point(1, 1), -3, Point(0, 1), "P0 = -3 P+1");
  relation(3, Point(-1, 3), 2, Point(3, 1), "P+1 = 2 P2");
  relation(7, Point(-3, 11), -2, Point(7, 1), "P+1 = -2 (-3, 11)");
  relation(24, Point(-10, 69), -2, Point(24, 1), "P+1 = -2 (-10, 69)");
  return report;
}

std::vector<Point> parse_generators(std::istream& in) {
  std::vector<Point> out;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 2) throw DomainError("generator line " + std::to_string(lineno) + ": expected \"x y\"");
    try {
      out.emplace_back(Rational::parse(tok[0]), Rational::parse(tok[1]));
    } catch (const Error& e) {
      throw DomainError("generator line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<Point> read_generator_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open generator file " + path);
  return parse_generators(in);
}

}  // namespace emn
