#pragma once

#include <optional>
#include <string>
#include <utility>

#include "json.hpp"

namespace lazard {

struct EvalRequest {
  std::string ring = "bp";  // universal | bp | ck1
  std::optional<int> p;
  std::optional<std::string> expr;  // F | log | exp | pseries | nseries
  std::optional<std::string> op;    // st | phi | ln
  std::optional<std::string> elem;
  std::optional<int> slice;
  std::optional<int> n;      // multiplier for nseries
  std::optional<int> order;  // series order for FGL expressions
  std::optional<int> codegree;
  std::optional<std::pair<int, int>> t_window;  // inclusive
  std::optional<std::string> mod;
};

struct EvalResult {
  std::string value;
  nlohmann::json report;  // schema 1
  bool truncation_touched = false;
};

// Throws ParseError on malformed input, TruncationError when the window is too small.
EvalResult evaluate(const EvalRequest& req);

// "lo:hi" with lo <= hi.
std::pair<int, int> parse_window(const std::string& text);

}  // namespace lazard
