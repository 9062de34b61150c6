#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qsep/rat_func.hpp"

namespace qsep {

using LExps = std::vector<int>;

// Laurent polynomial in named variables with RatFunc coefficients.
// Terms are keyed by exponent vectors of length |vars|, stored ascending lex.
class LaurentPoly {
 public:
  using Map = std::map<LExps, RatFunc>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}
  LaurentPoly(std::vector<std::string> vars, const RatFunc& c);
  static LaurentPoly monomial(std::vector<std::string> vars, LExps e, const RatFunc& c = 1);
  static LaurentPoly variable(std::vector<std::string> vars, const std::string& name, int power = 1);

  const std::vector<std::string>& vars() const { return vars_; }
  size_t nvars() const { return vars_.size(); }
  int var_index(const std::string& name) const;  // -1 if absent
  const Map& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  RatFunc coeff(const LExps& e) const;
  RatFunc constant_term() const { return coeff(LExps(vars_.size(), 0)); }

  void add_term(const LExps& e, const RatFunc& c);

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(const RatFunc& c, const LaurentPoly& a);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }
  LaurentPoly pow(unsigned k) const;

  // Coefficient-wise transform (terms mapping to zero are dropped).
  LaurentPoly map_coeffs(const std::function<RatFunc(const RatFunc&)>& f) const;

  // T^m: each monomial t^e picks up q^{<m,e>}.
  LaurentPoly qshift(const std::vector<int>& m) const;
  // Variable permutation: exponent of var i in the result is that of var perm[i].
  LaurentPoly permuted(const std::vector<int>& perm) const;
  LaurentPoly renamed(std::vector<std::string> vars) const;
  // Re-express over a superset (or reordering) of the variables by name.
  LaurentPoly aligned(const std::vector<std::string>& vars) const;

  LExps min_exps() const;
  LExps max_exps() const;
  int degree(size_t i) const;
  int min_degree(size_t i) const;

  // Collect by powers of variable i: map exponent -> Laurent poly in the
  // remaining variables (same varset, slot i zeroed).
  std::map<int, LaurentPoly> collect(size_t i) const;

  RatFunc to_ratfunc() const;
  static LaurentPoly from_ratfunc(const RatFunc& f, std::vector<std::string> vars);

  std::complex<double> eval(const Point& coeff_point, const std::vector<std::complex<double>>& at) const;

  std::string str() const;

 private:
  std::vector<std::string> vars_;
  Map terms_;
};

// Exact quotient a/b in the Laurent ring; throws std::domain_error when b
// does not divide a.
LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b);

std::string render_laurent_monomial(const std::vector<std::string>& vars, const LExps& e);
std::string wrap_coeff(const RatFunc& c);  // "(…)" unless a signed monomial

}  // namespace qsep
