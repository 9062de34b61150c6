#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <json.hpp>
#include <string>

#include "qsep/macdonald.hpp"
#include "qsep/parse.hpp"
#include "qsep/sov.hpp"
#include "qsep/suites.hpp"
#include "qsep/symbols.hpp"

using namespace qsep;
using json = nlohmann::ordered_json;
using macdonald::Weight;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Result {
  std::string command;
  json inputs = json::object();
  std::string status;  // pass, fail or value
  std::string text;    // plain-text payload
  json payload;
  json residuals = json::object();
};

void emit(const Result& r, bool as_json) {
  if (as_json) {
    json doc;
    doc["command"] = r.command;
    doc["inputs"] = r.inputs;
    doc["status"] = r.status;
    doc["payload"] = r.payload;
    doc["residuals"] = r.residuals;
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << r.text;
    if (!r.text.empty() && r.text.back() != '\n') std::cout << "\n";
  }
}

Weight weight_arg(const std::string& s) {
  try {
    return macdonald::parse_weight(s);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string fmt_residual(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Result cmd_macdonald(const Weight& w) {
  auto p = macdonald::MacdonaldSolver(w.n()).solve(w);
  Result r{"macdonald"};
  r.inputs["weight"] = w.str();
  r.status = "value";
  r.text = macdonald::render_m_expansion(p.expansion);
  json coeffs = json::object();
  for (auto it = p.expansion.rbegin(); it != p.expansion.rend(); ++it) coeffs["m[" + it->first.str() + "]"] = it->second.str();
  r.payload = {{"weight", w.str()}, {"basis", "m"}, {"coefficients", coeffs}, {"rendering", r.text}};
  return r;
}

Result cmd_seppoly(const Weight& w) {
  auto s = sov::sep_poly(w);
  Result r{"seppoly"};
  r.inputs["weight"] = w.str();
  r.inputs["n"] = w.n();
  r.status = "value";
  r.text = s.poly().str();
  json coeffs = json::object();
  for (auto& [k, c] : s.chi) coeffs["y^" + std::to_string(k)] = c.str();
  r.payload = {{"weight", w.str()}, {"basis", "y"}, {"coefficients", coeffs}, {"rendering", r.text}};
  return r;
}

Result cmd_c(const Weight& w) {
  Result r{"c"};
  r.inputs["weight"] = w.str();
  r.status = "value";
  r.text = sov::c_lambda(w).str();
  r.payload = {{"weight", w.str()}, {"value", r.text}};
  return r;
}

// Sums of t1^a*t2^b*t3^c with coefficients in q and l, symmetric in t1 <-> t2.
LaurentPoly parse_t_expression(const std::string& text) {
  LaurentPoly f;
  try {
    f = parse_laurent(text, sov::t_vars());
  } catch (const std::exception& e) {
    throw UsageError(std::string("malformed expression: ") + e.what());
  }
  for (auto& [e, c] : f.terms())
    for (int id = 0; id < symbol_count(); ++id)
      if (id != sym::q && id != sym::l && c.has_var(id))
        throw UsageError("coefficients may only involve q and l, found " + symbol_name(id));
  if (f.permuted({1, 0, 2}) != f) throw UsageError("expression is not symmetric in t1 <-> t2");
  return f;
}

Result cmd_apply_m(const std::string& expr) {
  LaurentPoly f = parse_t_expression(expr);
  Result r{"apply-m"};
  r.inputs["expression"] = expr;
  r.status = "value";
  r.text = sov::apply_M(f).str();
  r.payload = {{"variables", sov::y_vars()}, {"rendering", r.text}};
  return r;
}

Result cmd_verify(const std::string& suite, const suites::Options& opts) {
  bool known = false;
  for (auto& s : suites::suite_names()) known |= s == suite;
  if (!known) throw UsageError("unknown suite: " + suite);
  suites::SuiteResult res;
  try {
    res = suites::run_suite(suite, opts);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Result r{"verify"};
  r.inputs = {{"suite", suite}, {"min", opts.min}, {"max", opts.max}, {"q", opts.q}, {"g", opts.g}, {"grid", opts.grid}};
  r.status = res.ok() ? "pass" : "fail";
  json checks = json::array();
  std::string text;
  for (auto& c : res.checks) {
    std::string id = c.group + "/" + c.name;
    json jc = {{"group", c.group}, {"name", c.name}, {"pass", c.pass}};
    text += (c.pass ? "PASS  " : "FAIL  ") + id;
    if (c.residual) {
      jc["residual"] = *c.residual;
      r.residuals[id] = *c.residual;
      text += "  residual=" + fmt_residual(*c.residual);
    }
    if (!c.pass && !c.detail.empty()) {
      jc["detail"] = c.detail;
      text += "  (" + c.detail + ")";
    }
    text += "\n";
    checks.push_back(jc);
  }
  text += suite + ": " + std::to_string(res.passed()) + "/" + std::to_string(res.checks.size()) + " pass\n";
  r.text = text;
  r.payload = {{"checks", checks}, {"passed", res.passed()}, {"total", res.checks.size()}};
  return r;
}

std::string default_data_dir() {
  if (const char* e = std::getenv("QSEP_DATA_DIR")) return e;
#ifdef QSEP_DATA_DIR
  return QSEP_DATA_DIR;
#else
  return "tests";
#endif
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Macdonald polynomials, separated polynomials and their verification suites"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "structured output");

  std::string weight, expr, suite;
  int n = 0;
  suites::Options opts;
  opts.data_dir = default_data_dir();

  auto* mac = app.add_subcommand("macdonald", "P_lambda in the monomial basis");
  auto* sep = app.add_subcommand("seppoly", "separated polynomial S_lambda(y)");
  auto* cc = app.add_subcommand("c", "normalisation constant c_lambda");
  for (auto* sc : {mac, sep, cc}) {
    sc->add_option("--weight", weight, "dominant weight a,b,c")->required();
    sc->add_flag("--json", as_json, "structured output");
  }
  sep->add_option("--n", n, "number of variables (must match the weight)");

  auto* am = app.add_subcommand("apply-m", "apply M to a polynomial in t1,t2,t3");
  am->add_option("expression", expr, "sum of t1^a*t2^b*t3^c terms with coefficients in q, l")->required();
  am->add_flag("--json", as_json, "structured output");

  auto* ver = app.add_subcommand("verify", "run a verification suite");
  std::string suite_list;
  for (auto& s : suites::suite_names()) suite_list += (suite_list.empty() ? "" : ", ") + s;
  ver->add_option("suite", suite, "one of: " + suite_list)->required();
  ver->add_option("--min", opts.min, "smallest lambda_1 of the sweep");
  ver->add_option("--max", opts.max, "largest lambda_3 of the sweep");
  ver->add_option("--q", opts.q, "numeric base q");
  ver->add_option("--g", opts.g, "coupling, l = q^-g");
  ver->add_option("--grid", opts.grid, "quadrature nodes");
  ver->add_option("--data-dir", opts.data_dir, "directory with data/ and golden/");
  ver->add_flag("--json", as_json, "structured output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    Result r;
    if (*mac || *sep || *cc) {
      Weight w = weight_arg(weight);
      if (*sep && n != 0 && n != w.n()) throw UsageError("--n does not match the weight length");
      if (*cc && w.n() != 3) throw UsageError("c is defined for three variables");
      r = *mac ? cmd_macdonald(w) : *sep ? cmd_seppoly(w) : cmd_c(w);
    } else if (*am) {
      r = cmd_apply_m(expr);
    } else {
      r = cmd_verify(suite, opts);
    }
    emit(r, as_json);
    return r.status == "fail" ? kFail : kPass;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
}
