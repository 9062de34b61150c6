#include "qsep/laurent.hpp"

#include <algorithm>
#include <stdexcept>

#include "qsep/symbols.hpp"

namespace qsep {

LaurentPoly::LaurentPoly(std::vector<std::string> vars, const RatFunc& c) : vars_(std::move(vars)) {
  if (!c.is_zero()) terms_.emplace(LExps(vars_.size(), 0), c);
}

LaurentPoly LaurentPoly::monomial(std::vector<std::string> vars, LExps e, const RatFunc& c) {
  if (e.size() != vars.size()) throw std::invalid_argument("LaurentPoly::monomial: arity");
  LaurentPoly p(std::move(vars));
  if (!c.is_zero()) p.terms_.emplace(std::move(e), c);
  return p;
}

LaurentPoly LaurentPoly::variable(std::vector<std::string> vars, const std::string& name, int power) {
  LaurentPoly p(std::move(vars));
  int i = p.var_index(name);
  if (i < 0) throw std::invalid_argument("LaurentPoly::variable: unknown variable " + name);
  LExps e(p.vars_.size(), 0);
  e[i] = power;
  p.terms_.emplace(std::move(e), RatFunc(1));
  return p;
}

int LaurentPoly::var_index(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
}

RatFunc LaurentPoly::coeff(const LExps& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? RatFunc() : it->second;
}

void LaurentPoly::add_term(const LExps& e, const RatFunc& c) {
  if (c.is_zero()) return;
  if (e.size() != vars_.size()) throw std::invalid_argument("LaurentPoly::add_term: arity");
  auto [it, fresh] = terms_.try_emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

LaurentPoly LaurentPoly::aligned(const std::vector<std::string>& vars) const {
  if (vars == vars_) return *this;
  std::vector<int> where(vars_.size());
  for (size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(vars.begin(), vars.end(), vars_[i]);
    where[i] = it == vars.end() ? -1 : static_cast<int>(it - vars.begin());
  }
  LaurentPoly r(vars);
  for (auto& [e, c] : terms_) {
    LExps n(vars.size(), 0);
    for (size_t i = 0; i < e.size(); ++i) {
      if (where[i] < 0) {
        if (e[i] != 0) throw std::invalid_argument("LaurentPoly::aligned: variable " + vars_[i] + " dropped");
        continue;
      }
      n[where[i]] = e[i];
    }
    r.terms_.emplace(std::move(n), c);
  }
  return r;
}

namespace {

std::vector<std::string> union_vars(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a == b) return a;
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::vector<std::string> u = a;
  for (auto& v : b)
    if (std::find(u.begin(), u.end(), v) == u.end()) u.push_back(v);
  return u;
}

}  // namespace

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  auto u = union_vars(vars_, o.vars_);
  if (u != vars_) *this = aligned(u);
  const LaurentPoly& b = o.vars_ == u ? o : o.aligned(u);
  for (auto& [e, c] : b.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  auto u = union_vars(a.vars_, b.vars_);
  const LaurentPoly& x = a.vars_ == u ? a : a.aligned(u);
  const LaurentPoly& y = b.vars_ == u ? b : b.aligned(u);
  LaurentPoly r(u);
  LExps e(u.size());
  for (auto& [ea, ca] : x.terms_)
    for (auto& [eb, cb] : y.terms_) {
      for (size_t i = 0; i < u.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

LaurentPoly operator*(const RatFunc& c, const LaurentPoly& a) {
  LaurentPoly r(a.vars_);
  if (c.is_zero()) return r;
  for (auto& [e, x] : a.terms_) r.terms_.emplace(e, c * x);
  return r;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
  auto u = union_vars(a.vars_, b.vars_);
  return a.aligned(u).terms_ == b.aligned(u).terms_;
}

LaurentPoly LaurentPoly::pow(unsigned k) const {
  LaurentPoly r(vars_, RatFunc(1)), base = *this;
  while (k) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

LaurentPoly LaurentPoly::map_coeffs(const std::function<RatFunc(const RatFunc&)>& f) const {
  LaurentPoly r(vars_);
  for (auto& [e, c] : terms_) {
    RatFunc v = f(c);
    if (!v.is_zero()) r.terms_.emplace(e, std::move(v));
  }
  return r;
}

LaurentPoly LaurentPoly::qshift(const std::vector<int>& m) const {
  if (m.size() != vars_.size()) throw std::invalid_argument("qshift: shift vector arity");
  LaurentPoly r(vars_);
  for (auto& [e, c] : terms_) {
    int k = 0;
    for (size_t i = 0; i < m.size(); ++i) k += m[i] * e[i];
    r.terms_.emplace(e, k == 0 ? c : c * RatFunc::q_pow(k));
  }
  return r;
}

LaurentPoly LaurentPoly::permuted(const std::vector<int>& perm) const {
  LaurentPoly r(vars_);
  for (auto& [e, c] : terms_) {
    LExps n(e.size());
    for (size_t i = 0; i < perm.size(); ++i) n[i] = e[perm[i]];
    r.terms_.emplace(std::move(n), c);
  }
  return r;
}

LaurentPoly LaurentPoly::renamed(std::vector<std::string> vars) const {
  if (vars.size() != vars_.size()) throw std::invalid_argument("renamed: arity");
  LaurentPoly r = *this;
  r.vars_ = std::move(vars);
  return r;
}

LExps LaurentPoly::min_exps() const {
  LExps m(vars_.size(), 0);
  bool first = true;
  for (auto& [e, c] : terms_) {
    for (size_t i = 0; i < e.size(); ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
    first = false;
  }
  return m;
}

LExps LaurentPoly::max_exps() const {
  LExps m(vars_.size(), 0);
  bool first = true;
  for (auto& [e, c] : terms_) {
    for (size_t i = 0; i < e.size(); ++i) m[i] = first ? e[i] : std::max(m[i], e[i]);
    first = false;
  }
  return m;
}

int LaurentPoly::degree(size_t i) const { return max_exps().at(i); }
int LaurentPoly::min_degree(size_t i) const { return min_exps().at(i); }

std::map<int, LaurentPoly> LaurentPoly::collect(size_t i) const {
  std::map<int, LaurentPoly> out;
  for (auto& [e, c] : terms_) {
    LExps n = e;
    n[i] = 0;
    auto [it, fresh] = out.try_emplace(e[i], vars_);
    it->second.terms_.emplace(std::move(n), c);
  }
  return out;
}

RatFunc LaurentPoly::to_ratfunc() const {
  std::vector<int> ids;
  for (auto& v : vars_) ids.push_back(symbol_id(v));
  // Put everything over the monomial t^{-min} and sum polynomial pieces.
  LExps mn = min_exps();
  RatFunc s;
  for (auto& [e, c] : terms_) {
    Exps ex;
    for (size_t i = 0; i < e.size(); ++i) {
      int k = e[i] - mn[i];
      if (!k) continue;
      if (static_cast<int>(ex.size()) <= ids[i]) ex.resize(ids[i] + 1, 0);
      ex[ids[i]] += k;
    }
    s += c * RatFunc(IntPoly::monomial(ex, 1));
  }
  Exps den;
  for (size_t i = 0; i < mn.size(); ++i) {
    if (static_cast<int>(den.size()) <= ids[i]) den.resize(ids[i] + 1, 0);
    den[ids[i]] -= mn[i];
  }
  // Negative entries mean positive powers in the numerator.
  Exps up, down;
  for (size_t i = 0; i < den.size(); ++i) {
    up.push_back(den[i] < 0 ? -den[i] : 0);
    down.push_back(den[i] > 0 ? den[i] : 0);
  }
  return s * RatFunc(IntPoly::monomial(up, 1), IntPoly::monomial(down, 1));
}

LaurentPoly LaurentPoly::from_ratfunc(const RatFunc& f, std::vector<std::string> vars) {
  std::vector<int> ids;
  for (auto& v : vars) ids.push_back(symbol_id(v));
  auto split = [&](const Exps& e, LExps& var_part, Exps& rest) {
    var_part.assign(ids.size(), 0);
    rest = e;
    for (size_t i = 0; i < ids.size(); ++i) {
      if (ids[i] < static_cast<int>(e.size())) {
        var_part[i] = e[ids[i]];
        rest[ids[i]] = 0;
      }
    }
    trim(rest);
  };
  // Denominator must be (polynomial free of vars) * (monomial in vars).
  LExps dmon;
  Exps rest;
  IntPoly dcoef;
  {
    std::vector<Term> dt;
    bool first = true;
    for (auto& t : f.den().terms()) {
      LExps vp;
      split(t.e, vp, rest);
      if (first) {
        dmon = vp;
        first = false;
      } else if (vp != dmon) {
        throw std::domain_error("from_ratfunc: denominator is not a monomial in the Laurent variables");
      }
      dt.push_back(Term{rest, t.c});
    }
    dcoef = IntPoly::from_terms(std::move(dt));
  }
  std::map<LExps, std::vector<Term>> groups;
  for (auto& t : f.num().terms()) {
    LExps vp;
    split(t.e, vp, rest);
    for (size_t i = 0; i < vp.size(); ++i) vp[i] -= dmon[i];
    groups[vp].push_back(Term{rest, t.c});
  }
  LaurentPoly r(std::move(vars));
  for (auto& [e, ts] : groups) r.add_term(e, RatFunc(IntPoly::from_terms(ts), dcoef));
  return r;
}

std::complex<double> LaurentPoly::eval(const Point& coeff_point,
                                       const std::vector<std::complex<double>>& at) const {
  if (at.size() != vars_.size()) throw std::invalid_argument("LaurentPoly::eval: arity");
  std::complex<double> s = 0;
  for (auto& [e, c] : terms_) {
    std::complex<double> m = eval_complex(c, coeff_point);
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i]) m *= std::pow(at[i], e[i]);
    s += m;
  }
  return s;
}

std::string render_laurent_monomial(const std::vector<std::string>& vars, const LExps& e) {
  std::string s;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += vars[i];
    if (e[i] < 0) {
      s += "^(" + std::to_string(e[i]) + ")";
    } else if (e[i] != 1) {
      s += "^" + std::to_string(e[i]);
    }
  }
  return s;
}

namespace {

bool signed_monomial(const RatFunc& c) { return c.is_polynomial() && c.num().is_monomial(); }

}  // namespace

std::string wrap_coeff(const RatFunc& c) {
  if (signed_monomial(c)) return c.str();
  return "(" + c.str() + ")";
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& [e, c] : terms_) {
    std::string mono = render_laurent_monomial(vars_, e);
    std::string body;
    bool neg = false;
    if (signed_monomial(c)) {
      neg = c.num().sign() < 0;
      IntPoly a = neg ? -c.num() : c.num();
      if (mono.empty()) {
        body = a.str();
      } else {
        body = a.is_one() ? mono : a.str() + "*" + mono;
      }
    } else {
      body = "(" + c.str() + ")";
      if (!mono.empty()) body += "*" + mono;
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

LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw std::domain_error("LaurentPoly exact_div: division by zero");
  auto u = a.vars();
  for (auto& v : b.vars())
    if (std::find(u.begin(), u.end(), v) == u.end()) u.push_back(v);
  LaurentPoly x = a.aligned(u), y = b.aligned(u);
  if (x.is_zero()) return x;
  LExps xm = x.min_exps(), ym = y.min_exps();
  size_t n = u.size();
  auto shift = [n](const LaurentPoly& p, const LExps& m) {
    LaurentPoly r(p.vars());
    for (auto& [e, c] : p.terms()) {
      LExps k(n);
      for (size_t i = 0; i < n; ++i) k[i] = e[i] - m[i];
      r.add_term(k, c);
    }
    return r;
  };
  LaurentPoly R = shift(x, xm), B = shift(y, ym);
  LaurentPoly Q(u);
  const auto& [lb_e, lb_c] = *B.terms().rbegin();
  RatFunc lb_inv = lb_c.inverse();
  while (!R.is_zero()) {
    const auto& [le, lc] = *R.terms().rbegin();
    LExps d(n);
    for (size_t i = 0; i < n; ++i) {
      d[i] = le[i] - lb_e[i];
      if (d[i] < 0) throw std::domain_error("LaurentPoly exact_div: divisor does not divide");
    }
    RatFunc c = lc * lb_inv;
    for (auto& [e, bc] : B.terms()) {
      LExps k(n);
      for (size_t i = 0; i < n; ++i) k[i] = e[i] + d[i];
      R.add_term(k, -(c * bc));
    }
    Q.add_term(d, c);
  }
  LExps off(n);
  for (size_t i = 0; i < n; ++i) off[i] = xm[i] - ym[i];
  for (auto& o : off) o = -o;
  return shift(Q, off);
}

}  // namespace qsep
