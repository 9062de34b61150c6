#include <doctest.h>

#include "qsep/suites.hpp"
#include "test_support.hpp"

using namespace qsep::suites;

TEST_CASE("suite registry") {
  CHECK(suite_names() == std::vector<std::string>{"tables", "factorization", "separated-eq", "commutativity", "classical",
                                                  "appendix-a", "appendix-b", "numeric"});
  CHECK(group_names("numeric").size() == 4);
  CHECK_THROWS_AS(group_names("nope"), std::invalid_argument);
  CHECK_THROWS_AS(run_suite("nope", {}), std::invalid_argument);
  CHECK_THROWS_AS(run_suite("numeric", {}, "nope"), std::invalid_argument);
}

TEST_CASE("option validation") {
  Options o;
  o.q = 1.5;
  CHECK_THROWS_AS(run_suite("numeric", o), std::invalid_argument);
  o = {};
  o.g = 0;
  CHECK_THROWS_AS(run_suite("numeric", o), std::invalid_argument);
  o = {};
  o.grid = 96;
  CHECK_THROWS_AS(run_suite("numeric", o), std::invalid_argument);
  o = {};
  o.min = 1;
  o.max = 0;
  CHECK_THROWS_AS(run_suite("factorization", o), std::invalid_argument);
}

TEST_CASE("sweep enumerates dominant weights") {
  auto s = sweep(-2, 3);
  CHECK(s.size() == 56);
  for (auto& w : s) CHECK(w.is_dominant());
  CHECK(sweep(0, 0).size() == 1);
}

TEST_CASE("a small run records every check") {
  Options o;
  o.data_dir = test_path("");
  auto r = run_suite("tables", o, "macdonald");
  CHECK(r.checks.size() == 9);
  CHECK(r.ok());
  o.min = 0;
  o.max = 1;
  r = run_suite("separated-eq", o, "recursion");
  CHECK(r.checks.size() == 4);
  CHECK(r.ok());
}

TEST_CASE("missing data is a failed check, not an exception") {
  Options o;
  o.data_dir = "/nonexistent";
  auto r = run_suite("tables", o);
  CHECK(!r.ok());
  CHECK(r.checks.size() == 2);
  CHECK(r.checks[0].name == "setup");
}
