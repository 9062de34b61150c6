#pragma once

#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

inline std::string test_path(const std::string& rel) {
  const char* root = std::getenv("QSEP_TEST_DATA");
  return std::string(root ? root : "tests") + "/" + rel;
}

// Lines "key | value", skipping blanks and '#' comments.
inline std::vector<std::pair<std::string, std::string>> read_table(const std::string& rel) {
  std::ifstream in(test_path(rel));
  if (!in) throw std::runtime_error("cannot open " + rel);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  auto strip = [](std::string s) {
    auto b = s.find_first_not_of(" \t"), e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto bar = line.find('|');
    if (bar == std::string::npos) continue;
    out.emplace_back(strip(line.substr(0, bar)), strip(line.substr(bar + 1)));
  }
  return out;
}
