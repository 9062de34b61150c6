#include "qsep/int_poly.hpp"

#include <algorithm>
#include <stdexcept>

#include "qsep/symbols.hpp"

namespace qsep {

int lex_cmp(const Exps& a, const Exps& b) {
  size_t n = std::max(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    int32_t x = i < a.size() ? a[i] : 0;
    int32_t y = i < b.size() ? b[i] : 0;
    if (x != y) return x < y ? -1 : 1;
  }
  return 0;
}

void trim(Exps& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

namespace {

Exps add_exps(const Exps& a, const Exps& b) {
  Exps r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

bool desc(const Term& x, const Term& y) { return lex_cmp(x.e, y.e) > 0; }

// Merge two sorted term lists: a + sign*b.
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b,
                        bool subtract) {
  std::vector<Term> r;
  r.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = lex_cmp(a[i].e, b[j].e);
    if (c > 0) {
      r.push_back(a[i++]);
    } else if (c < 0) {
      r.push_back(b[j++]);
      if (subtract) r.back().c = -r.back().c;
    } else {
      mpz_class s = subtract ? mpz_class(a[i].c - b[j].c) : mpz_class(a[i].c + b[j].c);
      if (s != 0) r.push_back(Term{a[i].e, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) r.push_back(a[i]);
  for (; j < b.size(); ++j) {
    r.push_back(b[j]);
    if (subtract) r.back().c = -r.back().c;
  }
  return r;
}

}  // namespace

IntPoly::IntPoly(long c) {
  if (c != 0) terms_.push_back(Term{Exps{}, mpz_class(c)});
}

IntPoly::IntPoly(const mpz_class& c) {
  if (c != 0) terms_.push_back(Term{Exps{}, c});
}

IntPoly IntPoly::var(int id, int power) {
  if (power < 0) throw std::invalid_argument("IntPoly::var: negative power");
  Exps e(id + 1, 0);
  e[id] = power;
  trim(e);
  return monomial(std::move(e), 1);
}

IntPoly IntPoly::monomial(Exps e, mpz_class c) {
  IntPoly p;
  trim(e);
  if (c != 0) p.terms_.push_back(Term{std::move(e), std::move(c)});
  return p;
}

IntPoly IntPoly::from_terms(std::vector<Term> terms) {
  for (auto& t : terms) trim(t.e);
  std::sort(terms.begin(), terms.end(), desc);
  IntPoly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && lex_cmp(p.terms_.back().e, t.e) == 0) {
      p.terms_.back().c += t.c;
    } else {
      if (!p.terms_.empty() && p.terms_.back().c == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().c == 0) p.terms_.pop_back();
  return p;
}

bool IntPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].e.empty());
}

bool IntPoly::is_one() const {
  return terms_.size() == 1 && terms_[0].e.empty() && terms_[0].c == 1;
}

mpz_class IntPoly::constant_term() const {
  if (!terms_.empty() && terms_.back().e.empty()) return terms_.back().c;
  return 0;
}

int IntPoly::nslots() const {
  size_t n = 0;
  for (auto& t : terms_) n = std::max(n, t.e.size());
  return static_cast<int>(n);
}

int IntPoly::degree(int v) const {
  int d = 0;
  for (auto& t : terms_)
    if (v < static_cast<int>(t.e.size())) d = std::max(d, static_cast<int>(t.e[v]));
  return d;
}

int IntPoly::min_degree(int v) const {
  if (terms_.empty()) return 0;
  int d = INT32_MAX;
  for (auto& t : terms_)
    d = std::min(d, v < static_cast<int>(t.e.size()) ? static_cast<int>(t.e[v]) : 0);
  return d;
}

std::vector<int> IntPoly::vars() const {
  std::vector<int> out;
  int n = nslots();
  for (int v = 0; v < n; ++v)
    if (degree(v) > 0) out.push_back(v);
  return out;
}

Exps IntPoly::min_exps() const {
  if (terms_.empty()) return {};
  Exps m = terms_[0].e;
  for (auto& t : terms_) {
    if (t.e.size() < m.size()) m.resize(t.e.size());
    for (size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], t.e[i]);
  }
  trim(m);
  return m;
}

mpz_class IntPoly::content() const {
  mpz_class g = 0;
  for (auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

mpz_class IntPoly::max_norm() const {
  mpz_class m = 0;
  for (auto& t : terms_)
    if (mpz_cmpabs(t.c.get_mpz_t(), m.get_mpz_t()) > 0) m = abs(t.c);
  return m;
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& t : r.terms_) t.c = -t.c;
  return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

IntPoly& IntPoly::operator*=(const IntPoly& o) { return *this = *this * o; }

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].e, a.terms_[0].c);
  if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].e, b.terms_[0].c);
  const IntPoly& big = a.size() >= b.size() ? a : b;
  const IntPoly& small = a.size() >= b.size() ? b : a;
  std::vector<Term> all;
  all.reserve(a.size() * b.size());
  for (auto& s : small.terms_)
    for (auto& t : big.terms_) all.push_back(Term{add_exps(s.e, t.e), s.c * t.c});
  return IntPoly::from_terms(std::move(all));
}

bool operator==(const IntPoly& a, const IntPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].c != b.terms_[i].c) return false;
    if (lex_cmp(a.terms_[i].e, b.terms_[i].e) != 0) return false;
  }
  return true;
}

IntPoly IntPoly::pow(unsigned k) const {
  IntPoly r(1), base = *this;
  while (k) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

IntPoly IntPoly::mul_term(const Exps& e, const mpz_class& c) const {
  IntPoly r;
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (auto& t : terms_) r.terms_.push_back(Term{add_exps(t.e, e), t.c * c});
  return r;
}

IntPoly IntPoly::div_exps(const Exps& e) const {
  IntPoly r = *this;
  for (auto& t : r.terms_) {
    if (t.e.size() < e.size()) t.e.resize(e.size(), 0);
    for (size_t i = 0; i < e.size(); ++i) {
      t.e[i] -= e[i];
      if (t.e[i] < 0) throw std::logic_error("div_exps: not divisible");
    }
    trim(t.e);
  }
  return r;
}

IntPoly IntPoly::div_int(const mpz_class& c) const {
  IntPoly r = *this;
  for (auto& t : r.terms_) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), c.get_mpz_t());
  return r;
}

IntPoly IntPoly::derivative(int v) const {
  std::vector<Term> out;
  for (auto& t : terms_) {
    if (v >= static_cast<int>(t.e.size()) || t.e[v] == 0) continue;
    Term n{t.e, t.c * t.e[v]};
    n.e[v] -= 1;
    out.push_back(std::move(n));
  }
  return from_terms(std::move(out));
}

std::vector<IntPoly> IntPoly::coeffs_in(int v) const {
  std::vector<std::vector<Term>> buckets(degree(v) + 1);
  for (auto& t : terms_) {
    int d = v < static_cast<int>(t.e.size()) ? t.e[v] : 0;
    Term n = t;
    if (d) {
      n.e[v] = 0;
      trim(n.e);
    }
    buckets[d].push_back(std::move(n));
  }
  std::vector<IntPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
  return out;
}

IntPoly IntPoly::eval_int(int v, const mpz_class& x) const {
  int d = degree(v);
  if (d == 0) return *this;
  std::vector<mpz_class> pw(d + 1);
  pw[0] = 1;
  for (int i = 1; i <= d; ++i) pw[i] = pw[i - 1] * x;
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    int k = v < static_cast<int>(t.e.size()) ? t.e[v] : 0;
    Term n{t.e, t.c * pw[k]};
    if (k) {
      n.e[v] = 0;
      trim(n.e);
    }
    out.push_back(std::move(n));
  }
  return from_terms(std::move(out));
}

IntPoly IntPoly::subs(int v, const IntPoly& p) const {
  auto cs = coeffs_in(v);
  IntPoly r;
  for (size_t i = cs.size(); i-- > 0;) r = r * p + cs[i];  // Horner
  return r;
}

IntPoly IntPoly::normalized_sign() const {
  return sign() < 0 ? -*this : *this;
}

std::string render_monomial(const Exps& e) {
  std::string s;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += symbol_name(static_cast<int>(i));
    if (e[i] != 1) s += '^' + std::to_string(e[i]);
  }
  return s;
}

std::string IntPoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& t : terms_) {
    mpz_class a = abs(t.c);
    if (t.c < 0) {
      s += '-';
    } else if (!first) {
      s += '+';
    }
    std::string m = render_monomial(t.e);
    if (m.empty()) {
      s += a.get_str();
    } else {
      if (a != 1) s += a.get_str() + "*";
      s += m;
    }
    first = false;
  }
  return s;
}

std::optional<IntPoly> exact_div(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("exact_div: division by zero polynomial");
  if (a.is_zero()) return IntPoly{};
  if (b.is_one()) return a;
  if (b.is_monomial()) {
    const Term& bt = b.terms_[0];
    IntPoly q;
    q.terms_.reserve(a.size());
    for (auto& t : a.terms_) {
      if (!mpz_divisible_p(t.c.get_mpz_t(), bt.c.get_mpz_t())) return std::nullopt;
      Term n{t.e, 0};
      if (n.e.size() < bt.e.size()) n.e.resize(bt.e.size(), 0);
      for (size_t i = 0; i < bt.e.size(); ++i) {
        n.e[i] -= bt.e[i];
        if (n.e[i] < 0) return std::nullopt;
      }
      trim(n.e);
      mpz_divexact(n.c.get_mpz_t(), t.c.get_mpz_t(), bt.c.get_mpz_t());
      q.terms_.push_back(std::move(n));
    }
    return q;
  }
  // Cheap degree rejection.
  int ns = std::max(a.nslots(), b.nslots());
  for (int v = 0; v < ns; ++v)
    if (b.degree(v) > a.degree(v)) return std::nullopt;

  const Term& lb = b.terms_[0];
  std::vector<Term> qt;
  IntPoly r = a;
  while (!r.is_zero()) {
    const Term& lr = r.terms_[0];
    if (!mpz_divisible_p(lr.c.get_mpz_t(), lb.c.get_mpz_t())) return std::nullopt;
    Exps e = lr.e;
    if (e.size() < lb.e.size()) e.resize(lb.e.size(), 0);
    for (size_t i = 0; i < lb.e.size(); ++i) {
      e[i] -= lb.e[i];
      if (e[i] < 0) return std::nullopt;
    }
    trim(e);
    mpz_class c;
    mpz_divexact(c.get_mpz_t(), lr.c.get_mpz_t(), lb.c.get_mpz_t());
    IntPoly sub = b.mul_term(e, c);
    qt.push_back(Term{std::move(e), std::move(c)});
    r -= sub;
  }
  IntPoly q;
  q.terms_ = std::move(qt);  // generated in descending order
  return q;
}

IntPoly lcm(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  IntPoly g = gcd(a, b);
  return (*exact_div(a, g) * b).normalized_sign();
}

}  // namespace qsep
