#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lazard/operations.hpp"
#include "lazard/report.hpp"

namespace lazard {

// One grid point: key -> value text. Keys are ordered, values compare numerically
// when both are integers.
struct GridPoint {
  std::map<std::string, std::string> values;

  bool has(const std::string& key) const { return values.count(key) > 0; }
  std::string get(const std::string& key, const std::string& fallback = "") const;
  int get_int(const std::string& key, std::optional<int> fallback = {}) const;
  std::string key() const;  // "n=1 p=2"
};

bool operator<(const GridPoint& a, const GridPoint& b);
bool operator==(const GridPoint& a, const GridPoint& b);

struct SuiteSpec {
  std::string suite;
  std::vector<GridPoint> points;  // sorted, duplicates removed
  OpWindow window;                // overrides applied to every point
};

const std::vector<std::string>& suite_ids();
std::string default_grid(std::string_view suite);
// One line per suite: default grid and default window rule.
std::string window_table();

// Grid syntax: clauses separated by ';'. A clause holding p= is a block whose ':'-separated
// parts are expanded as a product; clauses without p= apply to every block. Commas split
// values except inside parentheses. An empty grid means the suite default.
SuiteSpec parse_suite_spec(std::string_view suite, std::string_view grid, OpWindow window = {});

std::vector<CheckReport> run_point(const std::string& suite, const GridPoint& point, OpWindow window = {});

struct RunOptions {
  int jobs = 1;
  std::optional<std::size_t> sample;  // random subset of the grid
  std::uint64_t seed = 0;
};

SuiteReport run_suite(const SuiteSpec& spec, const RunOptions& options = {});

enum class Verdict { Pass, Fail, Inconclusive };
Verdict verdict(const SuiteReport& r);
std::string to_string(Verdict v);

// LAZARD_CODEGREE if set to a valid bound, else empty.
std::optional<int> env_codegree();

}  // namespace lazard
