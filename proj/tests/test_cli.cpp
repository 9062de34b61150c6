#include <doctest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <json.hpp>
#include <string>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const char* bin = std::getenv("QSEP_CLI");
  REQUIRE(bin != nullptr);
  std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

}  // namespace

TEST_CASE("computation subcommands") {
  auto r = run("macdonald --weight 0,0,2");
  CHECK(r.code == 0);
  CHECK(r.out == "m[0,0,2] + ((-q*l+q-l+1)/(q-l))*m[0,1,1]\n");
  r = run("seppoly --weight 0,1,1");
  CHECK(r.code == 0);
  CHECK(r.out == "1 + (l^2+l)*y\n");
  r = run("c --weight 0,0,0");
  CHECK(r.code == 0);
  CHECK(r.out == "1\n");
  CHECK(run("seppoly --weight 0,0,1,1 --n 4").out == "1 + L^4*y\n");
  r = run("apply-m \"1\"");
  CHECK(r.code == 0);
  CHECK(r.out == "1\n");
}

TEST_CASE("structured output") {
  auto r = run("macdonald --weight 0,0,2 --json");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "macdonald");
  CHECK(j["status"] == "value");
  CHECK(j["inputs"]["weight"] == "0,0,2");
  CHECK(j["payload"]["basis"] == "m");
  CHECK(j["payload"]["coefficients"]["m[0,0,2]"] == "1");
  CHECK(j["payload"]["coefficients"]["m[0,1,1]"] == "(-q*l+q-l+1)/(q-l)");
  CHECK(j.contains("residuals"));

  r = run("verify appendix-b --json");
  REQUIRE(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["status"] == "pass");
  CHECK(j["payload"]["passed"] == j["payload"]["total"]);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("macdonald --weight 0,2,1").code == 2);
  CHECK(run("macdonald --weight 0,a").code == 2);
  CHECK(run("seppoly --weight 0,1,1 --n 4").code == 2);
  CHECK(run("verify nonsense").code == 2);
  CHECK(run("verify numeric --grid 100").code == 2);
  CHECK(run("verify factorization --min 2 --max 1").code == 2);
  CHECK(run("apply-m t1").code == 2);
  CHECK(run("apply-m \"a*t3\"").code == 2);
  CHECK(run("apply-m \"t1+\"").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
}

TEST_CASE("verify reports per-check lines and is deterministic") {
  auto a = run("verify numeric --q 0.5 --g 1 --grid 256");
  CHECK(a.code == 0);
  CHECK(a.out.find("PASS  askey-wilson/") != std::string::npos);
  CHECK(a.out.find("residual=") != std::string::npos);
  CHECK(a.out.find("numeric: 17/17 pass") != std::string::npos);
  CHECK(run("verify numeric --q 0.5 --g 1 --grid 256").out == a.out);
  auto t = run("verify tables");
  CHECK(t.code == 0);
  CHECK(t.out.find("FAIL") == std::string::npos);
}

TEST_CASE("failing suite exits with 1") {
  // A missing data directory makes the table checks fail rather than abort.
  auto r = run("verify tables --data-dir /nonexistent");
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL") != std::string::npos);
}
