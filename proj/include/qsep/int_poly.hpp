#pragma once

#include <gmpxx.h>

#include <boost/container/small_vector.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qsep {

// Exponent vector indexed by symbol id. Trailing zeros are always trimmed so
// two equal monomials have identical storage.
using Exps = boost::container::small_vector<int32_t, 6>;

int lex_cmp(const Exps& a, const Exps& b);  // <0, 0, >0
void trim(Exps& e);

struct Term {
  Exps e;
  mpz_class c;
};

// Sparse multivariate polynomial over Z. Terms are kept in strictly
// descending lex order with nonzero coefficients.
class IntPoly {
 public:
  IntPoly() = default;
  IntPoly(long c);  // NOLINT(google-explicit-constructor)
  IntPoly(const mpz_class& c);  // NOLINT
  static IntPoly var(int id, int power = 1);
  static IntPoly monomial(Exps e, mpz_class c);
  static IntPoly from_terms(std::vector<Term> terms);  // sorts and combines

  const std::vector<Term>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  bool is_monomial() const { return terms_.size() == 1; }
  const Term& lead() const { return terms_.front(); }
  mpz_class constant_term() const;

  int nslots() const;  // 1 + highest symbol id present
  int degree(int v) const;
  int min_degree(int v) const;
  bool has_var(int v) const { return degree(v) > 0; }
  std::vector<int> vars() const;
  Exps min_exps() const;  // monomial content
  mpz_class content() const;  // positive gcd of coefficients
  mpz_class max_norm() const;

  IntPoly operator-() const;
  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const IntPoly& o);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend bool operator==(const IntPoly& a, const IntPoly& b);
  friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }

  IntPoly pow(unsigned k) const;
  IntPoly mul_term(const Exps& e, const mpz_class& c) const;
  IntPoly div_exps(const Exps& e) const;  // caller guarantees divisibility
  IntPoly div_int(const mpz_class& c) const;  // caller guarantees divisibility
  IntPoly derivative(int v) const;

  // Coefficients with respect to v: result[i] is the coefficient of v^i.
  std::vector<IntPoly> coeffs_in(int v) const;
  IntPoly eval_int(int v, const mpz_class& x) const;
  IntPoly subs(int v, const IntPoly& p) const;

  // Sign normalization: leading coefficient positive.
  IntPoly normalized_sign() const;
  int sign() const { return terms_.empty() ? 0 : sgn(terms_.front().c); }

  std::string str() const;

 private:
  std::vector<Term> terms_;
  friend std::optional<IntPoly> exact_div(const IntPoly& a, const IntPoly& b);
};

std::optional<IntPoly> exact_div(const IntPoly& a, const IntPoly& b);
IntPoly gcd(const IntPoly& a, const IntPoly& b);
IntPoly lcm(const IntPoly& a, const IntPoly& b);

std::string render_monomial(const Exps& e);

}  // namespace qsep
