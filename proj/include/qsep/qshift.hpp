#pragma once

#include <string>
#include <vector>

#include "qsep/laurent.hpp"

namespace qsep {

struct ShiftTerm {
  RatFunc coeff;           // rational in the operator variables (by symbol name) and parameters
  std::vector<int> shift;  // exponent vector m of T^m
};

// Finite sum of a(t) T^m with T_j t_j = q t_j T_j and coefficients to the
// left of the shifts.
class QShiftOperator {
 public:
  QShiftOperator() = default;
  explicit QShiftOperator(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  void add(const RatFunc& coeff, const std::vector<int>& shift);
  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<ShiftTerm>& terms() const { return terms_; }
  RatFunc coeff(const std::vector<int>& shift) const;

  // a T^m  ->  T^{-m} a  =  a(q^{-m} t) T^{-m}
  QShiftOperator adjoint() const;
  // (this ∘ o)
  QShiftOperator compose(const QShiftOperator& o) const;
  QShiftOperator operator+(const QShiftOperator& o) const;
  QShiftOperator scaled(const RatFunc& c) const;
  friend bool operator==(const QShiftOperator& a, const QShiftOperator& b);

  LaurentPoly apply(const LaurentPoly& f) const;

 private:
  std::vector<std::string> vars_;
  std::vector<ShiftTerm> terms_;  // sorted by shift, no zero coefficients
};

// Coefficients brought over one common denominator once, for repeated use.
class PreparedOperator {
 public:
  explicit PreparedOperator(const QShiftOperator& op);
  LaurentPoly apply(const LaurentPoly& f) const;

 private:
  std::vector<std::string> vars_;
  std::vector<std::pair<LaurentPoly, std::vector<int>>> numer_;
  LaurentPoly denom_;
};

// Applies op to f in the fraction field and divides the common denominator
// back out; throws std::domain_error if the result is not a Laurent polynomial.
LaurentPoly rational_apply_and_clear(const QShiftOperator& op, const LaurentPoly& f);

// Rational function f of the variables named in vars, with t_j -> q^{m_j} t_j.
RatFunc qshift_rational(const RatFunc& f, const std::vector<std::string>& vars, const std::vector<int>& m);

}  // namespace qsep
