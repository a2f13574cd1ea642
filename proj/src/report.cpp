#include "emn/report.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

namespace emn {

namespace {

nlohmann::json param(const std::optional<Integer>& v) {
  return v ? nlohmann::json(emn::to_string(*v)) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json report_record(const CurveReport& r, const CheckRecord& c) {
  return {{"m", param(r.m)},
          {"n", param(r.n)},
          {"check", c.name},
          {"status", to_string(c.status)},
          {"certificate", c.certificate}};
}

void write_report(std::ostream& os, const std::vector<CurveReport>& reports) {
  os << nlohmann::json{{"schema", kReportSchema}}.dump() << '\n';
  for (const auto& r : reports) {
    for (const auto& c : r.checks) os << report_record(r, c).dump() << '\n';
    os << report_record(r, CheckRecord{"overall", r.overall(), nlohmann::json::object()}).dump() << '\n';
  }
}

void write_summary(std::ostream& os, const std::vector<CurveReport>& reports) {
  os << std::left << std::setw(8) << "m" << std::setw(8) << "n" << std::setw(22) << "overall"
     << "checks\n";
  for (const auto& r : reports) {
    os << std::setw(8) << (r.m ? emn::to_string(*r.m) : "-") << std::setw(8)
       << (r.n ? emn::to_string(*r.n) : "-") << std::setw(22) << to_string(r.overall());
    bool first = true;
    for (const auto& c : r.checks) {
      os << (first ? "" : ", ") << c.name << "=" << to_string(c.status);
      first = false;
    }
    os << '\n';
  }
}

int exit_code(const std::vector<CurveReport>& reports) {
  bool external = false;
  for (const auto& r : reports) {
    const Status s = r.overall();
    if (s == Status::Fail) return 1;
    external |= s == Status::NeedsExternalData;
  }
  return external ? 3 : 0;
}

}  // namespace emn
