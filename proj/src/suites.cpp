#include "qsep/suites.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qsep/classical.hpp"
#include "qsep/numeric.hpp"
#include "qsep/parse.hpp"
#include "qsep/qkit.hpp"
#include "qsep/sov.hpp"
#include "qsep/symbols.hpp"

namespace qsep::suites {

using macdonald::Weight;

int SuiteResult::passed() const {
  int n = 0;
  for (auto& c : checks) n += c.pass;
  return n;
}

std::vector<Weight> sweep(int min, int max) {
  std::vector<Weight> out;
  for (int a = min; a <= max; ++a)
    for (int b = a; b <= max; ++b)
      for (int c = b; c <= max; ++c) out.push_back(Weight{a, b, c});
  return out;
}

std::vector<std::pair<std::string, std::string>> read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::pair<std::string, std::string>> out;
  auto strip = [](const std::string& s) {
    auto b = s.find_first_not_of(" \t"), e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto bar = line.find('|');
    if (bar == std::string::npos) continue;
    out.emplace_back(strip(line.substr(0, bar)), strip(line.substr(bar + 1)));
  }
  return out;
}

namespace {

class Runner {
 public:
  Runner(SuiteResult& r, std::string group) : r_(r), group_(std::move(group)) {}

  // Exact check: pass iff f returns true without throwing.
  void exact(const std::string& name, const std::function<bool()>& f) {
    Check c{group_, name, false, std::nullopt, {}};
    try {
      c.pass = f();
      if (!c.pass) c.detail = "identity does not hold";
    } catch (const std::exception& e) {
      c.detail = e.what();
    }
    r_.checks.push_back(std::move(c));
  }

  // Exact check with a report string, empty on success.
  void report(const std::string& name, const std::function<std::string()>& f) {
    Check c{group_, name, false, std::nullopt, {}};
    try {
      c.detail = f();
      c.pass = c.detail.empty();
    } catch (const std::exception& e) {
      c.detail = e.what();
    }
    r_.checks.push_back(std::move(c));
  }

  void numeric(const std::string& name, double tol, const std::function<double()>& f) {
    Check c{group_, name, false, std::nullopt, {}};
    try {
      double v = f();
      c.residual = v;
      c.pass = std::isfinite(v) && v < tol;
      std::ostringstream os;
      os << "tol " << tol;
      c.detail = os.str();
    } catch (const std::exception& e) {
      c.detail = e.what();
    }
    r_.checks.push_back(std::move(c));
  }

 private:
  SuiteResult& r_;
  std::string group_;
};

using Group = std::function<void(Runner&, const Options&)>;

std::string path(const Options& o, const std::string& rel) {
  return (o.data_dir.empty() ? std::string("tests") : o.data_dir) + "/" + rel;
}

std::map<std::string, std::string> as_map(const std::vector<std::pair<std::string, std::string>>& rows) {
  return {rows.begin(), rows.end()};
}

LaurentPoly in_y(const std::string& s) { return parse_laurent(s, {"y"}); }

RatFunc specialize_l(const RatFunc& c, int g) { return specialize(c, {{sym::l, RatFunc::q_pow(-g)}}); }

LaurentPoly product_side(const Weight& w) {
  using namespace sov;
  SepPoly s = sep_poly(w);
  return c_lambda(w) * LaurentPoly::monomial(y_vars(), {w.total(), 0, 0}) * s.poly_in("y1").aligned(y_vars()) *
         s.poly_in("y2").aligned(y_vars());
}

// ---- tables ----

void tables_macdonald(Runner& run, const Options& o) {
  auto rows = read_table(path(o, "data/macdonald_table.txt"));
  auto golden = as_map(read_table(path(o, "golden/macdonald.txt")));
  macdonald::MacdonaldSolver solver(3);
  for (auto& [k, v] : rows)
    run.report("P " + k, [&, k = k, v = v]() -> std::string {
      Weight w = macdonald::parse_weight(k);
      auto p = solver.solve(w);
      if (p.expansion != macdonald::parse_m_expansion(v, 3)) return "differs from the transcribed entry";
      auto it = golden.find(k);
      if (it == golden.end()) return "no golden entry";
      if (macdonald::render_m_expansion(p.expansion) != it->second) return "rendering differs from golden";
      return "";
    });
}

void tables_separation(Runner& run, const Options& o) {
  auto rows = read_table(path(o, "data/sep_table.txt"));
  auto golden = as_map(read_table(path(o, "golden/seppoly.txt")));
  for (auto& [k, v] : rows) {
    Weight w = macdonald::parse_weight(k);
    run.report("S " + k, [&, k = k, v = v]() -> std::string {
      LaurentPoly s = sov::sep_poly(w).poly();
      if (s != in_y(v)) return "differs from the transcribed entry";
      auto it = golden.find(k);
      if (it == golden.end()) return "no golden entry";
      if (s.str() != it->second) return "rendering differs from golden";
      return "";
    });
    run.exact("S " + k + " series route", [&] { return sov::sep_poly_via_series(w).chi == sov::sep_poly(w).chi; });
    run.exact("S " + k + " recursion route",
              [&] { return sov::reconstruct_sep_by_recursion(sov::eigenvalues(w), 3).sep.chi == sov::sep_poly(w).chi; });
    run.report("S " + k + " lauricella forms", [&] { return sov::lauricella_forms_check(w).report; });
  }
}

// ---- factorization and inverse ----

void factorization(Runner& run, const Options& o) {
  sov::MCache cache;
  for (auto& w : sweep(o.min, o.max))
    run.report("factorization " + w.str(), [&] { return sov::verify_factorization(w, &cache).report; });
}

void inverse(Runner& run, const Options& o) {
  using namespace sov;
  run.report("Minv M on the p basis", [] {
    std::string bad;
    for (int j = -2; j <= 2; ++j)
      for (int k = -2; k <= 2; ++k)
        for (int nu = 0; nu <= 3; ++nu) {
          LaurentPoly f = from_sym_coords(p_basis_poly({j, k, nu}));
          if (apply_Minv(apply_M(f)) != f) bad += "p" + to_string({j, k, nu}) + " ";
        }
    return bad;
  });
  MCache cache;
  for (auto& w : sweep(o.min, o.max)) {
    run.exact("Minv M P " + w.str(), [&] {
      auto p = macdonald::macdonald_poly(w);
      return apply_Minv(cache.apply(p.expansion)) == p.polynomial;
    });
    run.exact("Minv product " + w.str(),
              [&] { return apply_Minv(product_side(w)) == macdonald::macdonald_poly(w).polynomial; });
  }
  const char* samples[] = {"x*(y1+y2)", "1+y1*y2", "x^2*(y1^2+y2^2)-y1*y2*x", "(1-y1)*(1-y2)"};
  for (int g = 1; g <= 2; ++g)
    run.report("difference form g=" + std::to_string(g), [&] {
      auto op = minv_difference_operator(g);
      std::string bad;
      for (const char* phi : samples) {
        LaurentPoly f = parse_laurent(phi, y_vars());
        LaurentPoly ref = apply_Minv(f).map_coeffs([&](const RatFunc& c) { return specialize_l(c, g); });
        if (op.apply(f) != ref) bad += std::string(phi) + " ";
      }
      return bad;
    });
}

// ---- separated equation ----

void separated_eq(Runner& run, const Options& o) {
  using namespace sov;
  for (auto& w : sweep(o.min, o.max)) {
    run.exact("annihilation " + w.str(), [&] {
      auto h = eigenvalues(w);
      LaurentPoly s = sep_poly(w).poly();
      return apply_sep_operator(sep_operator(h, 3), s).is_zero() &&
             apply_sep_operator(sep_operator(h, 3, true), s).is_zero();
    });
  }
  for (auto w : {Weight{0, 0, 0, 1}, Weight{0, 0, 1, 1}, Weight{0, 1, 1, 2}}) {
    run.exact("annihilation n=4 " + w.str(), [&] {
      return apply_sep_operator(sep_operator(eigenvalues(w), 4), sep_poly_via_series(w).poly()).is_zero();
    });
  }
}

void recursion(Runner& run, const Options& o) {
  using namespace sov;
  for (auto& w : sweep(o.min, o.max))
    run.exact("recursion " + w.str(), [&] {
      auto rec = reconstruct_sep_by_recursion(eigenvalues(w), 3);
      return rec.k_lo == w[0] && rec.k_hi == w[2] && rec.sep.chi == sep_poly(w).chi;
    });
}

// ---- commutativity and quantum identities ----

void commutativity(Runner& run, const Options&) {
  std::vector<PreparedOperator> h;
  for (int k = 1; k <= 3; ++k) h.emplace_back(macdonald::hamiltonian(k, 3));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      run.exact("[H" + std::to_string(i + 1) + ",H" + std::to_string(j + 1) + "] on monomials", [&] {
        for (auto& w : sweep(-2, 2)) {
          if (w[2] - w[0] > 3) continue;
          LaurentPoly m = macdonald::monomial_sym(w);
          if (h[i].apply(h[j].apply(m)) != h[j].apply(h[i].apply(m))) return false;
        }
        return true;
      });
}

void quantum(Runner& run, const Options& o) {
  auto a = std::make_shared<sov::AlphaCheck>();
  run.exact("alpha identity (a)", [&] {
    *a = sov::verify_alpha_identities_quantum();
    return a->identity_a;
  });
  run.exact("alpha identity (b)", [&] { return a->identity_b; });
  run.exact("alpha12 consistency", [&] { return a->alpha12_consistent; });
  run.exact("T v = v' T commutation", [&] { return a->commutation; });
  run.report("c_lambda normalisation", [&] {
    std::string bad;
    for (auto& w : sweep(o.min, o.max)) {
      sov::SepPoly sp = sov::sep_poly(w);
      int d = w[2] - w[0];
      RatFunc lhs = sov::c_lambda(w) * sp.chi.at(w[0]) * sp.chi.at(w[2]);
      RatFunc rhs = RatFunc::var(sym::l, w[2] + 2 * w[0]) * qkit::qpoch(RatFunc::var(sym::l, -2), d) /
                    qkit::qpoch(RatFunc::var(sym::l, -3), d);
      if (lhs != rhs) bad += w.str() + " ";
    }
    return bad;
  });
}

// ---- classical ----

void classical_exact(Runner& run, const Options&) {
  using namespace classical;
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j)
      run.exact("{H" + std::to_string(i) + ",H" + std::to_string(j) + "} = 0",
                [=] { return poisson_bracket(hamiltonian(i), hamiltonian(j)).is_zero(); });
  run.exact("lax characteristic polynomial", [] { return lax_charpoly_identity_check(); });
  run.exact("classical alpha identities", [] { return verify_alpha_identities_classical(); });
  run.exact("Z1, Z2 decomposition", [] { return z_decomposition_check().ok(); });
}

void classical_numeric(Runner& run, const Options&) {
  using namespace classical;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ells(1.2, 6);
  for (int rep = 0; rep < 20; ++rep) {
    PhasePoint p = random_phase_point(rng, ells(rng));
    auto s = std::make_shared<Separation>();
    std::string tag = "point " + std::to_string(rep) + " ";
    run.numeric(tag + "constraint", 1e-9, [&] {
      *s = separate_numeric(p);
      return constraint_residual(p, *s);
    });
    run.numeric(tag + "separated equation", 1e-9, [&] {
      return std::max(separated_equation_residual(p, s->Y1, s->y1), separated_equation_residual(p, s->Y2, s->y2));
    });
    run.numeric(tag + "lax determinant", 1e-8,
                [&] { return std::max(lax_det_residual(p, s->Y1, s->y1), lax_det_residual(p, s->Y2, s->y2)); });
  }
}

void classical_genfunc(Runner& run, const Options&) {
  using namespace classical;
  std::mt19937_64 rng(7);
  for (double l : {4.0, 9.0})
    for (int rep = 0; rep < 5; ++rep) {
      PhasePoint p = random_real_slice_point(rng, l);
      std::string tag = "genfunc l=" + std::to_string(static_cast<int>(l)) + " #" + std::to_string(rep) + " ";
      run.numeric(tag + "partials", 1e-5, [&] { return genfunc_canonicity_check(p, 1e-5).max_dev; });
      // Halving h must cut the deviation by four.
      run.numeric(tag + "h^2 scaling", 0.8, [&] {
        double r = genfunc_canonicity_check(p, 1e-4).max_dev / genfunc_canonicity_check(p, 5e-5).max_dev;
        return std::abs(r - 4);
      });
    }
}

// ---- appendix A: q-series toolkit ----

void appendix_a(Runner& run, const Options& o) {
  using namespace qkit;
  auto P = [](const char* s) { return parse_ratfunc(s); };
  run.exact("Andrews reduction, two variables", [&] {
    auto s = andrews_sides(P("g"), {1, 1}, {P("x"), P("z")}, 4);
    return (s.lhs - s.rhs).is_zero();
  });
  run.exact("Andrews reduction, three variables", [&] {
    auto s = andrews_sides(P("g"), {1, 0, 1}, {P("x"), P("z"), P("u")}, 3);
    return (s.lhs - s.rhs).is_zero();
  });
  run.exact("PQ lemma", [&] {
    for (int N = 0; N <= 3; ++N)
      for (int nu = 0; nu <= N; ++nu) {
        auto s = pq_lemma_sides(P("a"), nu, N, N + 3);
        if (!(s.lhs - s.rhs).is_zero()) return false;
      }
    return true;
  });
  run.exact("q-difference equation of 1phi0 and 2phi1", [&] {
    return hg_diffeq_residual({P("a")}, {}, 5).is_zero() && hg_diffeq_residual({P("a"), P("b")}, {P("c")}, 4).is_zero();
  });
  run.exact("1phi0 against Euler products", [] {
    auto lhs = bhs_series({parse_ratfunc("a")}, {}, 6);
    auto rhs = qpoch_inf_series(parse_ratfunc("a"), 6) * qpoch_inf_inverse_series(RatFunc(1), 6);
    return (lhs - rhs).is_zero();
  });
  double q = o.q, g = o.g;
  run.numeric("q-Gamma recurrence", 1e-12, [=] {
    double z = 1.3;
    return std::abs(qgamma_num(z + 1, q) / qgamma_num(z, q) / ((1 - std::pow(q, z)) / (1 - q)) - 1);
  });
  run.numeric("q-Beta via q-Gamma", 1e-12, [=] {
    double v = qgamma_num(g, q) * qgamma_num(2 * g, q) / qgamma_num(3 * g, q);
    return std::abs(qbeta_num(g, 2 * g, q) / v - 1);
  });
  run.numeric("q-integral of t", 1e-14, [=] { return std::abs(qint_num([](double t) { return t; }, q) - 1 / (1 + q)); });
  run.numeric("dilog reflection", 1e-13, [] {
    constexpr double pi2 = std::numbers::pi * std::numbers::pi;
    double m = 0;
    for (double x : {0.3, 0.49, 0.51, 0.7, 0.95})
      m = std::max(m, std::abs(dilog_num(x) + dilog_num(1 - x) - (pi2 / 6 - std::log(x) * std::log(1 - x))));
    return m;
  });
  run.numeric("dilog asymptotics linear in hbar", 0.3, [] {
    return std::abs(asympt_dilog_deviation(0.3, 0.01) / asympt_dilog_deviation(0.3, 0.005) - 2);
  });
}

// ---- appendix B: two-parameter family ----

void appendix_b(Runner& run, const Options&) {
  auto r = std::make_shared<sov::MabReport>();
  run.exact("Kummer-Pfaff step", [&] {
    *r = sov::mab_identity_checks();
    return r->kp;
  });
  run.exact("action on p_nu, alpha in {-1,-2,-3}", [&] { return r->pm; });
  run.exact("xi_k finite-difference identity", [&] { return r->xik; });
  run.exact("inversion on the p_nu basis", [&] { return r->inversion; });
}

// ---- numeric ----

void numeric_aw(Runner& run, const Options& o) {
  using numeric::cplx;
  struct Set {
    cplx a, b, c, d;
    double q;
  };
  std::vector<Set> sets = {
      {0.3, -0.2, cplx(0, 0.4), 0.1, 0.4},
      {0.5, 0.5, 0.5, 0.5, 0.3},
      {cplx(0.2, 0.3), cplx(0.2, -0.3), -0.6, 0.7, 0.6},
      {0.8, -0.1, 0.05, cplx(-0.3, 0.3), 0.2},
      {0.1, 0.1, 0.1, 0.9, o.q},
      {std::polar(0.7, 1.0), std::polar(0.7, -1.0), std::polar(0.6, 2.0), std::polar(0.6, -2.0), 0.45},
  };
  for (size_t i = 0; i < sets.size(); ++i) {
    auto s = sets[i];
    run.numeric("askey-wilson set " + std::to_string(i + 1), 1e-10,
                [&, s] { return numeric::aw_integral_check(s.a, s.b, s.c, s.d, s.q, o.grid); });
  }
}

void numeric_kernel(Runner& run, const Options& o) {
  numeric::MabParams p{1.0, 2.0, o.q, std::polar(1.0, 0.7), std::polar(1.0, 0.3)};
  for (int nu = 0; nu <= 3; ++nu)
    run.numeric("kernel on p_" + std::to_string(nu), 1e-9, [&, nu] { return numeric::mab_numeric_check(p, nu, o.grid); });
  run.numeric("kernel on R_1010", 1e-9, [&] { return numeric::mab_R_check(p, 1, 0, 1, 0, o.grid); });
}

void numeric_orthogonality(Runner& run, const Options& o) {
  std::vector<std::pair<Weight, Weight>> pairs = {{{0, 0, 1}, {0, 1, 1}}, {{0, 0, 2}, {0, 1, 1}}, {{0, 1, 2}, {1, 1, 1}}};
  for (auto& pr : pairs)
    run.numeric("orthogonality " + pr.first.str() + " / " + pr.second.str(), 1e-8,
                [&] { return numeric::orthogonality_check(pr.first, pr.second, o.q, o.g); });
}

void numeric_qint(Runner& run, const Options& o) {
  for (auto w : {Weight{0, 0, 1}, Weight{0, 1, 2}, Weight{0, 2, 3}})
    run.numeric("q-integral S " + w.str(), 1e-8, [&, w] { return numeric::qint_sep_poly_check(w, o.q, o.g, {0.5, 1}); });
}

struct SuiteDef {
  std::string name;
  std::vector<std::pair<std::string, Group>> groups;
};

const std::vector<SuiteDef>& registry() {
  static const std::vector<SuiteDef> r = {
      {"tables", {{"macdonald", tables_macdonald}, {"separation", tables_separation}}},
      {"factorization", {{"factorization", factorization}, {"inverse", inverse}}},
      {"separated-eq", {{"annihilation", separated_eq}, {"recursion", recursion}}},
      {"commutativity", {{"hamiltonians", commutativity}, {"quantum", quantum}}},
      {"classical", {{"exact", classical_exact}, {"phase-points", classical_numeric}, {"genfunc", classical_genfunc}}},
      {"appendix-a", {{"qseries", appendix_a}}},
      {"appendix-b", {{"two-parameter", appendix_b}}},
      {"numeric",
       {{"askey-wilson", numeric_aw},
        {"kernel", numeric_kernel},
        {"orthogonality", numeric_orthogonality},
        {"q-integral", numeric_qint}}},
  };
  return r;
}

const SuiteDef& find_suite(const std::string& name) {
  for (auto& s : registry())
    if (s.name == name) return s;
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (auto& s : registry()) v.push_back(s.name);
    return v;
  }();
  return names;
}

const std::vector<std::string>& group_names(const std::string& suite) {
  static std::map<std::string, std::vector<std::string>> cache = [] {
    std::map<std::string, std::vector<std::string>> m;
    for (auto& s : registry())
      for (auto& g : s.groups) m[s.name].push_back(g.first);
    return m;
  }();
  find_suite(suite);
  return cache.at(suite);
}

SuiteResult run_suite(const std::string& suite, const Options& opts, const std::string& group) {
  const SuiteDef& def = find_suite(suite);
  if (opts.min > opts.max) throw std::invalid_argument("sweep bounds: min > max");
  if (!(opts.q > 0 && opts.q < 1)) throw std::invalid_argument("q must lie in (0,1)");
  if (!(opts.g > 0)) throw std::invalid_argument("g must be positive");
  if (opts.grid < 64 || (opts.grid & (opts.grid - 1))) throw std::invalid_argument("grid must be a power of two >= 64");
  bool found = group.empty();
  SuiteResult r;
  r.suite = suite;
  auto t0 = std::chrono::steady_clock::now();
  for (auto& [name, fn] : def.groups) {
    if (!group.empty() && name != group) continue;
    found = true;
    Runner run(r, name);
    try {
      fn(run, opts);
    } catch (const std::exception& e) {
      r.checks.push_back(Check{name, "setup", false, std::nullopt, e.what()});
    }
  }
  if (!found) throw std::invalid_argument("unknown group " + group + " of suite " + suite);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace qsep::suites
