#include "qsep/rat_func.hpp"

#include <stdexcept>

#include "qsep/symbols.hpp"

namespace qsep {

RatFunc::RatFunc(IntPoly num, IntPoly den) : num_(std::move(num)), den_(std::move(den)) {
  reduce();
}

void RatFunc::reduce() {
  if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
  if (num_.is_zero()) {
    den_ = IntPoly(1);
    return;
  }
  if (!den_.is_one()) {
    IntPoly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = *exact_div(num_, g);
      den_ = *exact_div(den_, g);
    }
  }
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

RatFunc RatFunc::var(int id, int power) {
  if (power >= 0) return RatFunc(IntPoly::var(id, power));
  return RatFunc(IntPoly(1), IntPoly::var(id, -power), NoReduce{});
}

RatFunc RatFunc::var(const char* name, int power) { return var(symbol_id(name), power); }

RatFunc RatFunc::q_pow(int k) { return var(sym::q, k); }

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, NoReduce{}); }

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_.is_one() && o.den_.is_one()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
    reduce();
    return *this;
  }
  // Henrici: only gcd(num, g) can cancel.
  IntPoly g = gcd(den_, o.den_);
  IntPoly d1 = *exact_div(den_, g), d2 = *exact_div(o.den_, g);
  IntPoly n = num_ * d2 + o.num_ * d1;
  IntPoly d = den_ * d2;
  if (n.is_zero()) return *this = RatFunc();
  if (!g.is_one()) {
    IntPoly h = gcd(n, g);
    if (!h.is_one()) {
      n = *exact_div(n, h);
      d = *exact_div(d, h);
    }
  }
  num_ = std::move(n);
  den_ = std::move(d);
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero() || o.is_zero()) return *this = RatFunc();
  if (den_.is_one() && o.den_.is_one()) {
    num_ = num_ * o.num_;
    return *this;
  }
  IntPoly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
  IntPoly a = g1.is_one() ? num_ : *exact_div(num_, g1);
  IntPoly d2 = g1.is_one() ? o.den_ : *exact_div(o.den_, g1);
  IntPoly b = g2.is_one() ? o.num_ : *exact_div(o.num_, g2);
  IntPoly d1 = g2.is_one() ? den_ : *exact_div(den_, g2);
  num_ = a * b;
  den_ = d1 * d2;
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  return *this;
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw std::domain_error("RatFunc: division by zero");
  RatFunc r(den_, num_, NoReduce{});
  if (r.den_.sign() < 0) {
    r.num_ = -r.num_;
    r.den_ = -r.den_;
  }
  return r;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

RatFunc RatFunc::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  return RatFunc(num_.pow(k), den_.pow(k), NoReduce{});
}

RatFunc RatFunc::derivative(int v) const {
  return RatFunc(num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
}

namespace {

std::string wrap(const IntPoly& p) {
  std::string s = p.str();
  if (p.size() <= 1) return s;
  return "(" + s + ")";
}

}  // namespace

std::string RatFunc::str() const {
  if (den_.is_one()) return num_.str();
  return wrap(num_) + "/" + wrap(den_);
}

// Substitution into a polynomial, returning numerator and a denominator
// common to all terms so the result needs a single reduction.
namespace {

struct SubsResult {
  IntPoly num, den;
};

SubsResult subs_poly(const IntPoly& p, const Bindings& b, const std::map<int, int>& maxdeg) {
  // value = sum_t c_t * prod_v (n_v/d_v)^{e_v} * rest
  //       = [sum_t c_t prod_v n_v^{e_v} d_v^{D_v-e_v} rest] / prod_v d_v^{D_v}
  std::map<int, std::vector<IntPoly>> npw, dpw;
  for (auto& [v, r] : b) {
    int D = maxdeg.at(v);
    auto& np = npw[v];
    auto& dp = dpw[v];
    np.push_back(IntPoly(1));
    dp.push_back(IntPoly(1));
    for (int i = 1; i <= D; ++i) {
      np.push_back(np.back() * r.num());
      dp.push_back(dp.back() * r.den());
    }
  }
  IntPoly num;
  std::vector<Term> plain;
  for (auto& t : p.terms()) {
    Term rest{t.e, t.c};
    IntPoly factor(1);
    bool touched = false;
    for (auto& [v, r] : b) {
      int e = v < static_cast<int>(t.e.size()) ? t.e[v] : 0;
      int D = maxdeg.at(v);
      if (D == 0) continue;
      if (e) {
        rest.e[v] = 0;
        touched = true;
      }
      if (e || !dpw[v][D].is_one()) {
        factor = factor * npw[v][e] * dpw[v][D - e];
        touched = true;
      }
    }
    trim(rest.e);
    if (!touched) {
      plain.push_back(std::move(rest));
    } else {
      num += factor.mul_term(rest.e, rest.c);
    }
  }
  num += IntPoly::from_terms(std::move(plain));
  IntPoly den(1);
  for (auto& [v, r] : b) den = den * dpw[v][maxdeg.at(v)];
  return {num, den};
}

}  // namespace

RatFunc specialize(const RatFunc& f, const Bindings& b) {
  std::map<int, int> maxdeg;
  for (auto& [v, r] : b) maxdeg[v] = std::max(f.num().degree(v), f.den().degree(v));
  SubsResult n = subs_poly(f.num(), b, maxdeg);
  SubsResult d = subs_poly(f.den(), b, maxdeg);
  if (d.num.is_zero()) {
    // Locate the vanishing factor: for a single binding v := r/s it is the
    // gcd of the denominator with s*v - r.
    std::string which = f.den().str();
    if (b.size() == 1) {
      auto& [v, r] = *b.begin();
      IntPoly lin = r.den() * IntPoly::var(v) - r.num();
      IntPoly g = gcd(f.den(), lin);
      if (!g.is_constant()) which = g.str();
    }
    throw std::domain_error("specialize: denominator factor " + which + " vanishes");
  }
  // n.den == d.den by construction.
  return RatFunc(n.num, d.num);
}

std::complex<double> eval_complex(const IntPoly& p, const Point& pt) {
  std::complex<double> s = 0;
  for (auto& t : p.terms()) {
    std::complex<double> m = t.c.get_d();
    for (size_t i = 0; i < t.e.size(); ++i) {
      if (t.e[i] == 0) continue;
      auto it = pt.find(static_cast<int>(i));
      if (it == pt.end())
        throw std::invalid_argument("eval_complex: no value for symbol " +
                                    symbol_name(static_cast<int>(i)));
      m *= std::pow(it->second, t.e[i]);
    }
    s += m;
  }
  return s;
}

std::complex<double> eval_complex(const RatFunc& f, const Point& pt) {
  std::complex<double> d = eval_complex(f.den(), pt);
  if (std::abs(d) < 1e-300) throw std::domain_error("eval_complex: denominator vanishes");
  return eval_complex(f.num(), pt) / d;
}

}  // namespace qsep
