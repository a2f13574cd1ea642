#pragma once

#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "emn/saturation.hpp"

namespace emn {

inline constexpr int kReportSchema = 1;

/// {m, n, check, status, certificate}; m and n are strings (or null) so
/// large parameters survive a round trip.
nlohmann::json report_record(const CurveReport& r, const CheckRecord& c);

/// Line-delimited JSON: a {"schema": 1} header, then one record per check
/// and a closing "overall" record per curve. Keys are sorted, so equal
/// reports give equal bytes.
void write_report(std::ostream& os, const std::vector<CurveReport>& reports);

/// Fixed-width table: m, n, overall status, per-check statuses.
void write_summary(std::ostream& os, const std::vector<CurveReport>& reports);

/// 0 pass / not-applicable, 1 any fail, 3 needs external data.
int exit_code(const std::vector<CurveReport>& reports);

}  // namespace emn
