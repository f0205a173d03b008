#ifndef GHK_REPORT_HPP
#define GHK_REPORT_HPP

// JSON and CSV serialization of verification and sampling reports.
//
// Exact scalars are written as exact fraction strings ("733/2", "5/3+4/3i"),
// never as floating-point numbers.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ghk/identities.hpp"
#include "ghk/stochastic.hpp"

namespace ghk {

inline constexpr const char* kReportVersion = "1.0";

using Json = nlohmann::ordered_json;

inline Json to_json(const Params& params) {
  Json j = Json::object();
  for (const auto& [k, v] : params) j[k] = v;
  return j;
}

inline Json to_json(const IdentityReport& r) {
  Json j;
  j["identity"] = r.identity;
  j["mode"] = to_string(r.mode);
  j["params"] = to_json(r.params);
  j["lhs"] = r.lhs.to_string();
  j["rhs"] = r.rhs.to_string();
  j["residual"] = r.residual.to_string();
  j["verdict"] = to_string(r.verdict);
  j["spec_version"] = kReportVersion;
  return j;
}

struct VerifyDocument {
  std::string identity;
  Mode mode = Mode::exact;
  std::optional<double> tolerance;
  Params grid;
  std::vector<IdentityReport> reports;

  std::size_t failures() const {
    return static_cast<std::size_t>(
        std::count_if(reports.begin(), reports.end(), [](const IdentityReport& r) { return !r.passed(); }));
  }
  bool passed() const { return failures() == 0; }
};

inline Json to_json(const VerifyDocument& d) {
  Json j;
  j["command"] = "verify";
  j["identity"] = d.identity;
  j["mode"] = to_string(d.mode);
  if (d.tolerance) j["tolerance"] = *d.tolerance;
  j["grid"] = to_json(d.grid);
  j["spec_version"] = kReportVersion;
  Json reports = Json::array();
  for (const auto& r : d.reports) reports.push_back(to_json(r));
  j["reports"] = std::move(reports);
  j["summary"] = {{"total", d.reports.size()}, {"passed", d.reports.size() - d.failures()}, {"failed", d.failures()}};
  return j;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

} // namespace detail

/// One row per report; the grid is recorded on a leading comment line.
inline std::string to_csv(const VerifyDocument& d) {
  std::ostringstream os;
  os << "# grid: " << to_json(d.grid).dump() << "\n";
  os << "identity,mode,params,lhs,rhs,residual,verdict,spec_version\n";
  for (const auto& r : d.reports) {
    os << detail::csv_field(r.identity) << ',' << to_string(r.mode) << ',' << detail::csv_field(to_json(r.params).dump())
       << ',' << detail::csv_field(r.lhs.to_string()) << ',' << detail::csv_field(r.rhs.to_string()) << ','
       << detail::csv_field(r.residual.to_string()) << ',' << to_string(r.verdict) << ',' << kReportVersion << "\n";
  }
  return os.str();
}

inline Json to_json(const SampleStats& s) {
  Json j;
  j["count"] = s.count;
  j["moments"] = s.moments;
  j["standard_errors"] = s.standard_errors;
  return j;
}

struct SampleDocument {
  std::string target;
  Params params;
  SamplingConfig config;
  MomentTest test;
};

inline Json to_json(const SampleDocument& d) {
  Json j;
  j["command"] = "sample";
  j["target"] = d.target;
  j["params"] = to_json(d.params);
  j["seed"] = d.config.seed;
  j["count"] = d.config.count;
  j["streams"] = d.config.streams;
  j["max_order"] = d.config.max_order;
  j["z"] = d.config.z;
  j["lhs"] = to_json(d.test.lhs);
  j["rhs"] = to_json(d.test.rhs);
  Json verdicts = Json::array();
  for (const auto& v : d.test.verdicts)
    verdicts.push_back({{"order", v.order}, {"difference", v.difference}, {"bound", v.bound}, {"passed", v.passed}});
  j["verdicts"] = std::move(verdicts);
  if (d.test.ks) j["ks"] = {{"statistic", d.test.ks->statistic}, {"p_value", d.test.ks->p_value}};
  j["passed"] = d.test.passed();
  j["spec_version"] = kReportVersion;
  return j;
}

inline std::string to_csv(const SampleDocument& d) {
  std::ostringstream os;
  os.precision(17);
  os << "# target: " << d.target << " params: " << to_json(d.params).dump() << " seed: " << d.config.seed
     << " count: " << d.config.count << " streams: " << d.config.streams << " z: " << d.config.z << "\n";
  os << "order,lhs_moment,lhs_se,rhs_moment,rhs_se,difference,bound,passed,spec_version\n";
  for (const auto& v : d.test.verdicts) {
    os << v.order << ',' << d.test.lhs.moment(v.order) << ',' << d.test.lhs.standard_error(v.order) << ','
       << d.test.rhs.moment(v.order) << ',' << d.test.rhs.standard_error(v.order) << ',' << v.difference << ','
       << v.bound << ',' << (v.passed ? "true" : "false") << ',' << kReportVersion << "\n";
  }
  return os.str();
}

} // namespace ghk

#endif
