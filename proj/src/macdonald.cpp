#include "qsep/macdonald.hpp"

#include "qsep/parse.hpp"

#include <algorithm>
#include <bit>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace qsep::macdonald {

int Weight::total() const {
  int s = 0;
  for (int p : parts) s += p;
  return s;
}

bool Weight::is_dominant() const {
  return parts.size() >= 2 && std::is_sorted(parts.begin(), parts.end());
}

std::string Weight::str() const {
  std::string s;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(parts[i]);
  }
  return s;
}

void check_weight(const Weight& w) {
  if (w.n() < 2) throw std::invalid_argument("weight needs at least two parts");
  if (!w.is_dominant()) throw std::invalid_argument("weight " + w.str() + " is not nondecreasing");
}

Weight parse_weight(const std::string& s) {
  Weight w;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(part, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed weight: " + s);
    }
    if (pos != part.size()) throw std::invalid_argument("malformed weight: " + s);
    w.parts.push_back(v);
  }
  check_weight(w);
  return w;
}

std::vector<std::string> tvars(int n) {
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back("t" + std::to_string(i));
  return v;
}

LaurentPoly monomial_sym(const Weight& w) {
  LaurentPoly m(tvars(w.n()));
  std::vector<int> e = w.parts;
  std::sort(e.begin(), e.end());
  do {
    m.add_term(e, 1);
  } while (std::next_permutation(e.begin(), e.end()));
  return m;
}

bool dominance_leq(const Weight& mu, const Weight& lambda) {
  if (mu.n() != lambda.n()) throw std::invalid_argument("dominance_leq: rank mismatch");
  if (mu.total() != lambda.total()) return false;
  int a = 0, b = 0;
  for (int k = mu.n() - 1; k >= 1; --k) {
    a += mu[k];
    b += lambda[k];
    if (a > b) return false;
  }
  return true;
}

namespace {

bool rev_lex_greater(const Weight& a, const Weight& b) {
  return std::lexicographical_compare(b.parts.rbegin(), b.parts.rend(), a.parts.rbegin(), a.parts.rend());
}

void gen(int pos, int lo, int hi, int left, std::vector<int>& cur, std::vector<Weight>& out) {
  int n = static_cast<int>(cur.size());
  if (pos == n) {
    if (left == 0) out.emplace_back(cur);
    return;
  }
  int rest = n - pos;
  for (int v = lo; v <= hi; ++v) {
    // remaining parts are >= v and <= hi
    if (static_cast<long>(v) * rest > left || static_cast<long>(hi) * rest < left) continue;
    cur[pos] = v;
    gen(pos + 1, v, hi, left - v, cur, out);
  }
}

}  // namespace

std::vector<Weight> enumerate_lower(const Weight& lambda) {
  check_weight(lambda);
  std::vector<int> cur(lambda.n());
  std::vector<Weight> all, out;
  gen(0, lambda.parts.front(), lambda.parts.back(), lambda.total(), cur, all);
  for (auto& w : all)
    if (dominance_leq(w, lambda)) out.push_back(w);
  std::sort(out.begin(), out.end(), rev_lex_greater);
  return out;
}

QShiftOperator hamiltonian(int i, int n) {
  if (n < 2 || i < 1 || i > n) throw std::invalid_argument("hamiltonian: need 1 <= i <= n, n >= 2");
  Ell ell = Ell::for_rank(n);
  auto vars = tvars(n);
  std::vector<RatFunc> t;
  for (auto& v : vars) t.push_back(RatFunc::var(symbol_id(v)));
  QShiftOperator h(vars);
  RatFunc pref = ell.half_pow(-i * (n - i));
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != i) continue;
    RatFunc c = pref;
    std::vector<int> shift(n, 0);
    for (int j = 0; j < n; ++j) {
      if (!(mask >> j & 1)) continue;
      shift[j] = 1;
      for (int k = 0; k < n; ++k)
        if (!(mask >> k & 1)) c *= (t[j] - ell.ell() * t[k]) / (t[j] - t[k]);
    }
    h.add(c, shift);
  }
  return h;
}

RatFunc eigenvalue(int k, const Weight& w) {
  int n = w.n();
  if (k < 0 || k > n) throw std::invalid_argument("eigenvalue: k out of range");
  Ell ell = Ell::for_rank(n);
  std::vector<RatFunc> mu;
  for (int j = 1; j <= n; ++j) mu.push_back(RatFunc::q_pow(w[j - 1]) * ell.half_pow(n + 1 - 2 * j));
  // e_k by the usual recurrence
  std::vector<RatFunc> e(n + 1);
  e[0] = 1;
  for (int j = 0; j < n; ++j)
    for (int m = j + 1; m >= 1; --m) e[m] += e[m - 1] * mu[j];
  return e[k];
}

QShiftOperator operator_adjoint(const QShiftOperator& op) { return op.adjoint(); }

MExpansion m_expansion(const LaurentPoly& f, int n) {
  auto vars = tvars(n);
  LaurentPoly g = f.aligned(vars);
  MExpansion out;
  for (auto& [e, c] : g.terms())
    if (std::is_sorted(e.begin(), e.end())) out.emplace(Weight(e), c);
  if (from_m_expansion(out, n) != g) throw std::domain_error("m_expansion: input is not symmetric");
  return out;
}

LaurentPoly from_m_expansion(const MExpansion& e, int n) {
  LaurentPoly r(tvars(n));
  for (auto& [w, c] : e) r += c * monomial_sym(w);
  return r;
}

std::string render_m_expansion(const MExpansion& e) {
  if (e.empty()) return "0";
  std::vector<Weight> ws;
  for (auto& [w, c] : e) ws.push_back(w);
  std::sort(ws.begin(), ws.end(), rev_lex_greater);
  std::string s;
  bool first = true;
  for (auto& w : ws) {
    const RatFunc& c = e.at(w);
    std::string m = "m[" + w.str() + "]";
    bool neg = false;
    std::string body;
    if (c.is_polynomial() && c.num().is_monomial()) {
      neg = c.num().sign() < 0;
      IntPoly a = neg ? -c.num() : c.num();
      body = a.is_one() ? m : a.str() + "*" + m;
    } else {
      body = "(" + c.str() + ")*" + m;
    }
    if (first) {
      s = neg ? "-" + body : body;
    } else {
      s += neg ? " - " : " + ";
      s += body;
    }
    first = false;
  }
  return s;
}

MExpansion parse_m_expansion(const std::string& text, int n) {
  std::map<std::string, Weight> names;
  auto symbol_for = [&](const std::vector<int>& parts) {
    std::string name = "m";
    for (int p : parts) name += "_" + (p < 0 ? "n" + std::to_string(-p) : std::to_string(p));
    names.emplace(name, Weight(parts));
    return name;
  };
  std::string out;
  std::regex re(R"(m\[([-0-9, ]*)\]|\bm([0-9]+)\b)");
  auto it = std::sregex_iterator(text.begin(), text.end(), re);
  size_t last = 0;
  for (; it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    out += text.substr(last, m.position() - last);
    std::vector<int> parts;
    if (m[1].matched) {
      parts = parse_weight(m[1].str()).parts;
    } else {
      for (char c : m[2].str()) parts.push_back(c - '0');
    }
    if (static_cast<int>(parts.size()) != n) throw std::invalid_argument("parse_m_expansion: rank mismatch");
    out += symbol_for(parts);
    last = m.position() + m.length();
  }
  out += text.substr(last);
  std::vector<std::string> vars;
  for (auto& [name, w] : names) vars.push_back(name);
  LaurentPoly lin = parse_laurent(out, vars);
  MExpansion e;
  for (auto& [ex, c] : lin.terms()) {
    int idx = -1;
    for (size_t i = 0; i < ex.size(); ++i) {
      if (ex[i] == 0) continue;
      if (ex[i] != 1 || idx >= 0) throw std::invalid_argument("parse_m_expansion: not linear in m");
      idx = static_cast<int>(i);
    }
    if (idx < 0) throw std::invalid_argument("parse_m_expansion: constant term");
    check_weight(names.at(vars[idx]));
    e.emplace(names.at(vars[idx]), c);
  }
  return e;
}

MacdonaldSolver::MacdonaldSolver(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("MacdonaldSolver: n >= 2");
  for (int k = 1; k <= n; ++k) ops_.push_back(std::make_unique<PreparedOperator>(hamiltonian(k, n)));
}

const MExpansion& MacdonaldSolver::h_action(int k, const Weight& mu) {
  if (mu.n() != n_) throw std::invalid_argument("h_action: rank mismatch");
  auto key = std::make_pair(k, mu);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;
  }
  auto val = std::make_shared<const MExpansion>(m_expansion(ops_.at(k - 1)->apply(monomial_sym(mu)), n_));
  std::lock_guard<std::mutex> lk(mu_);
  auto [it, fresh] = cache_.emplace(key, val);
  return *it->second;
}

MExpansion MacdonaldSolver::apply(int k, const MExpansion& f) {
  MExpansion out;
  for (auto& [w, c] : f)
    for (auto& [v, d] : h_action(k, w)) {
      auto [it, fresh] = out.try_emplace(v, c * d);
      if (!fresh) it->second += c * d;
    }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

MacdonaldPoly MacdonaldSolver::solve(const Weight& lambda) {
  check_weight(lambda);
  if (lambda.n() != n_) throw std::invalid_argument("solve: rank mismatch");
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = polys_.find(lambda);
    if (it != polys_.end()) return *it->second;
  }
  auto lower = enumerate_lower(lambda);
  RatFunc h1 = eigenvalue(1, lambda);
  MExpansion kappa;
  kappa.emplace(lambda, RatFunc(1));
  // rhs[mu] accumulates sum over processed nu of kappa_nu [H1 m_nu]_mu.
  MExpansion rhs;
  auto absorb = [&](const Weight& nu) {
    for (auto& [w, d] : h_action(1, nu)) {
      if (w == nu) continue;
      if (!dominance_leq(w, nu)) throw std::logic_error("H1 is not triangular at " + nu.str());
      auto [it, fresh] = rhs.try_emplace(w, kappa.at(nu) * d);
      if (!fresh) it->second += kappa.at(nu) * d;
    }
  };
  absorb(lambda);
  for (size_t i = 1; i < lower.size(); ++i) {
    const Weight& mu = lower[i];
    RatFunc gap = eigenvalue(1, mu) - h1;
    if (gap.is_zero()) throw std::logic_error("eigenvalue collision at " + mu.str());
    auto it = rhs.find(mu);
    if (it == rhs.end() || it->second.is_zero()) continue;
    kappa.emplace(mu, -it->second / gap);
    absorb(mu);
  }
  for (int k = 1; k <= n_; ++k) {
    MExpansion hk = apply(k, kappa);
    RatFunc ev = eigenvalue(k, lambda);
    MExpansion expect;
    for (auto& [w, c] : kappa) expect.emplace(w, ev * c);
    if (hk != expect)
      throw std::runtime_error("H" + std::to_string(k) + " eigen-relation fails for " + lambda.str());
  }
  auto result = std::make_shared<const MacdonaldPoly>(
      MacdonaldPoly{lambda, kappa, from_m_expansion(kappa, n_)});
  std::lock_guard<std::mutex> lk(mu_);
  polys_.emplace(lambda, result);
  return *result;
}

MacdonaldPoly macdonald_poly(const Weight& lambda) {
  MacdonaldSolver s(lambda.n());
  return s.solve(lambda);
}

}  // namespace qsep::macdonald
