#pragma once

#include <optional>
#include <string>
#include <vector>

#include "emn/curve.hpp"
#include "emn/interval.hpp"
#include "emn/local_analysis.hpp"
#include "emn/number_core.hpp"

namespace emn {

// Normalization: Silverman, Advanced Topics, Ch. VI. h_hat(P) is about
// (1/2) h(x(P)), and lambda_p(P) = (1/2) max(0, log|x|_p) + (1/12) v_p(disc) log p
// at nonsingular reduction.

struct HeightOptions {
  mpfr_prec_t precision_bits = 128;
  unsigned series_terms = 40;
  std::uint64_t factor_effort = kDefaultFactorEffort;
};

/// coeff * log(base). The base is prime except when a denominator could not
/// be factored within the effort budget; such a base is still coprime to
/// every other base in the same value.
struct LogTerm {
  Integer base;
  Rational coeff;
  friend bool operator==(const LogTerm&, const LogTerm&) = default;
};

struct HeightValue {
  std::vector<LogTerm> exact_part;  // sorted by base, no zero coefficients
  Interval arch;                    // Tate-series part, without the disc term

  /// Enclosure of the total.
  Interval value(mpfr_prec_t prec = 128) const;
  double midpoint() const { return value().midpoint().to_double(); }
  double radius() const { return arch.radius(); }
  std::string exact_string() const;
};

struct ArchStrategy {
  enum class Kind { ShiftedTate, ModifiedTate };
  Kind kind = Kind::ModifiedTate;
  /// ShiftedTate only: true for the shift 2l + 1/(3l) with l = n^(2/3),
  /// otherwise the rational `shift`.
  bool standard_shift = false;
  Rational shift;

  static ArchStrategy modified() { return {}; }
  static ArchStrategy shifted(Rational s) { return {Kind::ShiftedTate, false, std::move(s)}; }
  static ArchStrategy standard() { return {Kind::ShiftedTate, true, Rational(0)}; }
  std::string to_string() const;
};

/// Per-curve data shared read-only by height evaluations.
class HeightContext {
 public:
  explicit HeightContext(Curve c, HeightOptions opts = {});

  const Curve& curve() const { return curve_; }
  const HeightOptions& options() const { return opts_; }
  const Factorization& disc_factorization() const { return disc_; }
  const RootBounds& roots() const { return roots_; }

  /// ModifiedTate for three real roots; the standard shift for E_{1,n} with
  /// n >= 27; otherwise an integer shift past the smallest root.
  ArchStrategy default_strategy() const;

  /// Bound on |log z| over the real points the strategy's series visits,
  /// and where it came from (a regime constant or the interval grid).
  struct ZBound {
    Interval m;
    std::string source;
  };
  ZBound z_bound(const ArchStrategy& s) const;

 private:
  Curve curve_;
  HeightOptions opts_;
  Factorization disc_;
  RootBounds roots_;
};

struct ArchResult {
  /// Enclosure of the series, truncation tail included.
  Interval value;
  /// Enclosures of z(2^k P') (or z(2^k P), k >= 1) for the summed terms.
  std::vector<Interval> z_trace;
  unsigned terms = 0;
  mpfr_prec_t working_precision = 0;
};

/// Tate series for lambda_inf minus its (1/12) v_inf(disc) term. Throws
/// StrategyError when the strategy does not apply to the curve, DomainError
/// for O or 2-torsion.
ArchResult lambda_arch(const HeightContext& ctx, const Point& p, const ArchStrategy& s, unsigned terms,
                       mpfr_prec_t precision);

/// lambda_p(P) / log p, exact. Throws UnsupportedReduction for I(k >= 2) or
/// an unsupported type, InternalContradiction if P reduces to a singular
/// point where the component group is trivial.
Rational lambda_nonarch(const Curve& c, const Point& p, const Integer& prime);

/// Sum of all local heights; total arch radius <= 2^(-precision/2).
HeightValue canonical_height(const HeightContext& ctx, const Point& p);
HeightValue canonical_height(const HeightContext& ctx, const Point& p, const ArchStrategy& s);
HeightValue canonical_height(const Curve& c, const Point& p, mpfr_prec_t precision = 128);

/// log max(|num x|, |den x|); 0 for O.
Interval naive_x_height(const Point& p, mpfr_prec_t prec = 128);

/// h(x(2^k P)) / (2 * 4^k). Avoids forming 2^k P exactly: the numerator and
/// denominator are tracked modulo a power of Res(F, G) for the gcd
/// cancellation, and their size through an interval copy of x(2^j P).
Interval doubling_limit_oracle(const Curve& c, const Point& p, unsigned k);
/// Same quantity from the exact rational 2^k P; feasible for small k.
Interval doubling_limit_oracle_exact(const Curve& c, const Point& p, unsigned k);

/// <P, Q> = (h_hat(P + Q) - h_hat(P) - h_hat(Q)) / 2.
Interval height_pairing(const HeightContext& ctx, const Point& p, const Point& q);

/// Gram determinant of the height pairing of 1-6 points.
Interval regulator(const HeightContext& ctx, const std::vector<Point>& points);

/// (1/3) log n - 0.619 on E_{1,n}, n >= 27, or (1/2) log m - 0.509 on E_{m,1},
/// m >= 10, when the square-free condition holds; NotApplicable otherwise.
Interval lambda_lower_bound(const Curve& c, mpfr_prec_t prec = 128,
                            std::uint64_t effort = kDefaultFactorEffort);

}  // namespace emn
