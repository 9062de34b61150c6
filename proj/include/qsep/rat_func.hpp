#pragma once

#include <complex>
#include <map>
#include <string>

#include "qsep/int_poly.hpp"

namespace qsep {

// Reduced fraction num/den over Z[symbols]. Invariants: den != 0,
// gcd(num, den) = 1 (including integer content), lc(den) > 0, and 0 is
// stored as 0/1.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(long c) : num_(c), den_(1) {}  // NOLINT
  RatFunc(const mpz_class& c) : num_(c), den_(1) {}  // NOLINT
  RatFunc(IntPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT
  RatFunc(IntPoly num, IntPoly den);  // reduces

  static RatFunc var(int id, int power = 1);  // negative power allowed
  static RatFunc var(const char* name, int power = 1);
  static RatFunc q_pow(int k);

  const IntPoly& num() const { return num_; }
  const IntPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool has_var(int v) const { return num_.has_var(v) || den_.has_var(v); }

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  RatFunc pow(int k) const;
  RatFunc inverse() const;
  RatFunc derivative(int v) const;

  std::string str() const;  // "num" or "(num)/(den)", parentheses dropped around monomials

 private:
  struct NoReduce {};
  RatFunc(IntPoly num, IntPoly den, NoReduce) : num_(std::move(num)), den_(std::move(den)) {}
  void reduce();
  IntPoly num_, den_;
};

using Bindings = std::map<int, RatFunc>;

// Exact substitution of symbols. Throws std::domain_error naming the
// denominator factor that vanishes.
RatFunc specialize(const RatFunc& f, const Bindings& b);

using Point = std::map<int, std::complex<double>>;
std::complex<double> eval_complex(const IntPoly& p, const Point& pt);
std::complex<double> eval_complex(const RatFunc& f, const Point& pt);

}  // namespace qsep
