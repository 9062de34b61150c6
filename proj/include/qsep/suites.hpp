#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsep/macdonald.hpp"

namespace qsep::suites {

struct Check {
  std::string group;
  std::string name;
  bool pass = false;
  std::optional<double> residual;  // numeric checks only
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;
  double seconds = 0;
  int passed() const;
  bool ok() const { return !checks.empty() && passed() == static_cast<int>(checks.size()); }
};

struct Options {
  int min = -2, max = 3;  // sweep over dominant weights with min <= lambda_1, lambda_3 <= max
  double q = 0.5, g = 1;
  int grid = 512;
  std::string data_dir;  // directory holding data/ and golden/
};

const std::vector<std::string>& suite_names();
// Groups of a suite, in run order.
const std::vector<std::string>& group_names(const std::string& suite);

// Runs every group of the suite, or only `group` when it is non-empty.
// std::invalid_argument for an unknown suite or group, or bad options.
SuiteResult run_suite(const std::string& suite, const Options& opts, const std::string& group = "");

std::vector<macdonald::Weight> sweep(int min, int max);

// Lines "key | value" of a table file, skipping blanks and '#' comments.
std::vector<std::pair<std::string, std::string>> read_table(const std::string& path);

}  // namespace qsep::suites
