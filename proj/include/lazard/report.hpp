#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace lazard {

inline constexpr int kReportSchema = 1;

// Outcome of one identity check: lhs - rhs tested for membership in an ideal.
struct CheckReport {
  std::string claim_id;
  nlohmann::json params = nlohmann::json::object();
  std::string lhs;
  std::string rhs;
  std::string modulus_ideal;
  bool member = false;
  nlohmann::json window = nlohmann::json::object();
  bool exact = false;

  bool passed() const { return member && exact; }
  friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

nlohmann::json to_json(const CheckReport& r);
CheckReport check_report_from_json(const nlohmann::json& j);

// Aggregate of a verification run; sorted by claim and parameters.
struct SuiteReport {
  std::string suite;
  std::vector<CheckReport> checks;
  std::vector<std::string> errors;  // grid points that raised

  bool all_member() const;
  bool all_exact() const;
  friend bool operator==(const SuiteReport&, const SuiteReport&) = default;
};

nlohmann::json to_json(const SuiteReport& r);
SuiteReport suite_report_from_json(const nlohmann::json& j);

// Canonical text form used for files and round-trip checks.
std::string dump(const nlohmann::json& j, bool pretty = true);

}  // namespace lazard
