#pragma once

#include <optional>
#include <string>
#include <vector>

#include "emn/curve.hpp"
#include "emn/interval.hpp"
#include "emn/number_core.hpp"
#include "emn/polynomial.hpp"

namespace emn {

struct KodairaType {
  enum class Kind { I, II, III, IV, Unsupported };
  Kind kind = Kind::I;
  unsigned k = 0;      // only for Kind::I
  std::string reason;  // only for Kind::Unsupported

  static KodairaType good() { return {}; }
  static KodairaType multiplicative(unsigned k) { return {Kind::I, k, {}}; }
  static KodairaType of(Kind kind) { return {kind, 0, {}}; }
  static KodairaType unsupported(std::string why) { return {Kind::Unsupported, 0, std::move(why)}; }

  bool is_good() const { return kind == Kind::I && k == 0; }
  std::string to_string() const;
  friend bool operator==(const KodairaType& a, const KodairaType& b) {
    return a.kind == b.kind && a.k == b.k;
  }
};

/// Checks the Kraus-style criterion (v_p(c4) < 4, v_p(c6) < 6 or
/// v_p(disc) < 12) at 2, 3 and every prime dividing the discriminant.
bool is_global_minimal(const Curve& c, std::uint64_t effort = kDefaultFactorEffort);

/// Reduction type from the closed-form congruence tables.
/// p = 2 with m, n both even gives Unsupported; gcd(m, n) > 1 otherwise
/// throws PreconditionError.
KodairaType kodaira_type(const Curve& c, const Integer& p);

/// Re-derives the type at p = 2 or 3 by shifting the model so the singular
/// point sits at (0, 0) and running steps 2-5 of Tate's algorithm.
KodairaType kodaira_type_by_shift(const Curve& c, const Integer& p);

/// v_p(disc) implied by an additive type at p in {2, 3} for this family.
unsigned implied_disc_valuation(const KodairaType& t, const Integer& p);

struct SquarefreeCheck {
  bool holds = false;
  Factorization disc;              // complete, or the partial result when it already decides
  std::vector<PrimePower> squares; // primes p > 3 with p^2 | disc
  std::string certificate() const;
};

/// Whether p^2 does not divide disc for every prime p > 3. Throws
/// IncompleteFactorization when factoring stalls before a decision.
SquarefreeCheck squarefree_condition(const Curve& c, std::uint64_t effort = kDefaultFactorEffort);
bool squarefree_condition_holds(const Curve& c, std::uint64_t effort = kDefaultFactorEffort);

struct RootBounds {
  int root_count = 0;
  /// Certified brackets of the real roots of f, ascending, width <= 1e-10.
  std::vector<RationalBracket> roots;
  /// l = n^(2/3).
  Interval l;

  // One real root: -l - m^2/(3l) and -m - n^2/(2m^2) both lie below it.
  std::optional<Interval> lower_by_l;
  std::optional<Rational> lower_by_m;

  // Three real roots with m^3 >= 3n^2:
  // -m - n^2/(2m^2) < alpha < 0 < beta < 2n^2/m^2 <= m - n^2/m^2 < gamma.
  bool three_root_estimates = false;
  std::optional<Rational> alpha_lower;
  std::optional<Rational> beta_upper;
  std::optional<Rational> gamma_lower;

  const RationalBracket& smallest() const { return roots.front(); }
  const RationalBracket& largest() const { return roots.back(); }
};

/// Root count, certified roots and the closed-form bounds, each checked
/// against the certified roots (InternalContradiction if one fails).
RootBounds real_root_bounds(const Curve& c, mpfr_prec_t prec = 128);

}  // namespace emn
