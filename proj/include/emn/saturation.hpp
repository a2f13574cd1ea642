#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "emn/curve.hpp"
#include "emn/heights.hpp"

namespace emn {

enum class Status { Pass, Fail, NotApplicable, NeedsExternalData };
std::string to_string(Status s);

struct CheckRecord {
  std::string name;
  Status status = Status::Pass;
  nlohmann::json certificate = nlohmann::json::object();
};

struct CurveReport {
  std::optional<Integer> m;  // absent for reports spanning several curves
  std::optional<Integer> n;
  std::vector<CheckRecord> checks;

  /// Fail if any check fails, else needs-external-data if any check does,
  /// else not-applicable when nothing passed, else pass.
  Status overall() const;
};

/// All rational torsion points (O included), ascending by x, via
/// Lutz-Nagell: integral points with y = 0 or y^2 | disc whose multiples
/// reach O within 12 steps.
std::vector<Point> torsion_subgroup(const Curve& c, std::uint64_t effort = kDefaultFactorEffort);

/// Every rational Q with dQ = P, d in {2, 3}, ordered by (x, y).
std::vector<Point> division_points(const Curve& c, const Point& p, int d);

/// Polynomial in X = x(Q) whose rational roots contain x(Q) for every Q with
/// dQ = P (P affine).
Polynomial division_equation(const Curve& c, const Point& p, int d);

/// Siksek's bound for the index of the span of r = 1, 2, 3 independent
/// points: gamma_r^(r/2) sqrt(R / lambda^r), evaluated at the upper end of R
/// and the lower end of lambda. DomainError unless lambda > 0.
Interval siksek_index_bound(const Interval& regulator, const Interval& lambda, std::size_t rank);
Interval siksek_index_bound(const HeightContext& ctx, const std::vector<Point>& points, const Interval& lambda);

/// The index bound with the regulator replaced by the closed-form height
/// bounds: for E_{1,n},
///   (2/sqrt 3) sqrt((log n/3 + 0.716)(log n/3 + 0.541)) / (log n/3 - 0.619),
/// and for E_{m,1},
///   sqrt(2) sqrt(((log m/2 + 0.290)^3 + 2 (log m/4 + 0.654)^2 0.607) / (log m/2 - 0.509)^3).
Interval e1n_window_index_bound(const Integer& n, mpfr_prec_t prec = 128);
Interval em1_window_index_bound(const Integer& m, mpfr_prec_t prec = 128);

/// Upper bounds on the heights of the named combinations on E_{m,1}, m >= 10:
/// (1/2) log m + 0.290, and log m + 0.068 for P2 + P0.
Interval em1_combination_upper_bound(const Integer& m, bool p2_plus_p0, mpfr_prec_t prec = 128);

struct VerifyOptions {
  HeightOptions heights;
  /// Externally supplied Mordell-Weil generators (from a descent).
  std::optional<std::vector<Point>> generators;
};

/// Checks that {P0, P-1} extends to a basis of E_{1,n}(Q).
CurveReport verify_e1n(const Integer& n, const VerifyOptions& opts = {});
/// Checks that {P0, P-1, P2} extends to a basis of E_{m,1}(Q).
CurveReport verify_em1(const Integer& m, const VerifyOptions& opts = {});

/// The four exact relations among named points on E_{1,1}, E_{3,1},
/// E_{7,1} and E_{24,1}.
CurveReport check_remark_relations();

/// One point per line, "x y" with x, y integers or a/b; '#' starts a comment.
std::vector<Point> parse_generators(std::istream& in);
std::vector<Point> read_generator_file(const std::string& path);

}  // namespace emn
