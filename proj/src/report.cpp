#include "lazard/report.hpp"

#include <algorithm>

#include "lazard/errors.hpp"

namespace lazard {

using nlohmann::json;

json to_json(const CheckReport& r) {
  return {{"claim_id", r.claim_id}, {"params", r.params}, {"lhs", r.lhs},     {"rhs", r.rhs},
          {"modulus_ideal", r.modulus_ideal}, {"member", r.member}, {"window", r.window}, {"exact", r.exact}};
}

CheckReport check_report_from_json(const json& j) {
  try {
    CheckReport r;
    r.claim_id = j.at("claim_id").get<std::string>();
    r.params = j.at("params");
    r.lhs = j.at("lhs").get<std::string>();
    r.rhs = j.at("rhs").get<std::string>();
    r.modulus_ideal = j.at("modulus_ideal").get<std::string>();
    r.member = j.at("member").get<bool>();
    r.window = j.at("window");
    r.exact = j.at("exact").get<bool>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad check report: ") + e.what(), 0);
  }
}

bool SuiteReport::all_member() const {
  return errors.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.member; });
}

bool SuiteReport::all_exact() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.exact; });
}

json to_json(const SuiteReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"schema", kReportSchema}, {"suite", r.suite}, {"checks", checks}, {"errors", r.errors}};
}

SuiteReport suite_report_from_json(const json& j) {
  try {
    if (j.at("schema").get<int>() != kReportSchema) throw ParseError("unsupported report schema", 0);
    SuiteReport r;
    r.suite = j.at("suite").get<std::string>();
    for (const auto& c : j.at("checks")) r.checks.push_back(check_report_from_json(c));
    r.errors = j.at("errors").get<std::vector<std::string>>();
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad suite report: ") + e.what(), 0);
  }
}

std::string dump(const json& j, bool pretty) { return pretty ? j.dump(2) : j.dump(); }

}  // namespace lazard
