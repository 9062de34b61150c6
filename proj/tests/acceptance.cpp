#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "qsep/suites.hpp"

using namespace qsep::suites;

namespace {

struct Part {
  std::string suite, group;  // empty group: whole suite
};

struct Criterion {
  int id;
  std::string title;
  std::vector<Part> parts;
  double time_limit;
  std::function<std::string(const std::vector<Check>&)> extra;  // empty on success
};

std::string at_least(const std::vector<Check>& cs, const std::string& prefix, size_t n) {
  size_t k = 0;
  for (auto& c : cs) k += c.name.rfind(prefix, 0) == 0;
  return k >= n ? "" : "expected at least " + std::to_string(n) + " '" + prefix + "' checks, got " + std::to_string(k);
}

}  // namespace

int main() {
  Options opts;
  const char* data = std::getenv("QSEP_TEST_DATA");
  opts.data_dir = data ? data : "tests";

  std::vector<Criterion> criteria = {
      {1, "Macdonald table", {{"tables", "macdonald"}}, 10, [](auto& c) { return at_least(c, "P ", 9); }},
      {2, "Separation table and routes", {{"tables", "separation"}}, 30, [](auto& c) { return at_least(c, "S ", 36); }},
      {3, "Factorization theorem", {{"factorization", "factorization"}}, 300,
       [](auto& c) { return at_least(c, "factorization ", 50); }},
      {4, "Separated equation", {{"separated-eq", "annihilation"}}, 300,
       [](auto& c) { return at_least(c, "annihilation n=4", 3); }},
      {5, "Inverse", {{"factorization", "inverse"}}, 300, [](auto& c) { return at_least(c, "difference form", 2); }},
      {6, "Quantum identities", {{"commutativity", "quantum"}}, 300, nullptr},
      {7, "Classical suite", {{"classical", ""}}, 300, [](auto& c) { return at_least(c, "point ", 60); }},
      {8, "Two-parameter family", {{"appendix-b", ""}}, 300, nullptr},
      {9, "Numeric", {{"numeric", ""}}, 180,
       [](auto& c) { return at_least(c, "askey-wilson", 5) + at_least(c, "orthogonality", 3); }},
  };

  int failed = 0;
  for (auto& cr : criteria) {
    std::vector<Check> checks;
    double seconds = 0;
    std::string why;
    for (auto& p : cr.parts) {
      try {
        auto r = run_suite(p.suite, opts, p.group);
        seconds += r.seconds;
        for (auto& c : r.checks) {
          if (!c.pass && why.empty()) why = c.group + "/" + c.name + ": " + c.detail;
          checks.push_back(c);
        }
      } catch (const std::exception& e) {
        why = e.what();
      }
    }
    if (why.empty() && checks.empty()) why = "no checks ran";
    if (why.empty() && cr.extra) why = cr.extra(checks);
    if (why.empty() && seconds > cr.time_limit) why = "over the time limit of " + std::to_string(cr.time_limit) + " s";
    bool ok = why.empty();
    failed += !ok;
    std::printf("%s criterion %d: %s (%zu checks, %.2f s)%s%s\n", ok ? "PASS" : "FAIL", cr.id, cr.title.c_str(),
                checks.size(), seconds, ok ? "" : " - ", why.c_str());
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
