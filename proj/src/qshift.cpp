#include "qsep/qshift.hpp"

#include <algorithm>
#include <stdexcept>

#include "qsep/symbols.hpp"

namespace qsep {

void QShiftOperator::add(const RatFunc& coeff, const std::vector<int>& shift) {
  if (shift.size() != vars_.size()) throw std::invalid_argument("QShiftOperator::add: arity");
  if (coeff.is_zero()) return;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), shift,
                             [](const ShiftTerm& t, const std::vector<int>& s) { return t.shift < s; });
  if (it != terms_.end() && it->shift == shift) {
    it->coeff += coeff;
    if (it->coeff.is_zero()) terms_.erase(it);
    return;
  }
  terms_.insert(it, ShiftTerm{coeff, shift});
}

RatFunc QShiftOperator::coeff(const std::vector<int>& shift) const {
  for (auto& t : terms_)
    if (t.shift == shift) return t.coeff;
  return RatFunc();
}

RatFunc qshift_rational(const RatFunc& f, const std::vector<std::string>& vars, const std::vector<int>& m) {
  Bindings b;
  for (size_t i = 0; i < vars.size(); ++i)
    if (m[i] != 0) {
      int id = symbol_id(vars[i]);
      b.emplace(id, RatFunc::q_pow(m[i]) * RatFunc::var(id));
    }
  return b.empty() ? f : specialize(f, b);
}

QShiftOperator QShiftOperator::adjoint() const {
  QShiftOperator r(vars_);
  for (auto& t : terms_) {
    std::vector<int> neg(t.shift.size());
    for (size_t i = 0; i < neg.size(); ++i) neg[i] = -t.shift[i];
    r.add(qshift_rational(t.coeff, vars_, neg), neg);
  }
  return r;
}

QShiftOperator QShiftOperator::compose(const QShiftOperator& o) const {
  if (o.vars_ != vars_) throw std::invalid_argument("compose: variable sets differ");
  QShiftOperator r(vars_);
  for (auto& a : terms_)
    for (auto& b : o.terms_) {
      std::vector<int> s(a.shift.size());
      for (size_t i = 0; i < s.size(); ++i) s[i] = a.shift[i] + b.shift[i];
      r.add(a.coeff * qshift_rational(b.coeff, vars_, a.shift), s);
    }
  return r;
}

QShiftOperator QShiftOperator::operator+(const QShiftOperator& o) const {
  QShiftOperator r = *this;
  for (auto& t : o.terms_) r.add(t.coeff, t.shift);
  return r;
}

QShiftOperator QShiftOperator::scaled(const RatFunc& c) const {
  QShiftOperator r(vars_);
  for (auto& t : terms_) r.add(c * t.coeff, t.shift);
  return r;
}

bool operator==(const QShiftOperator& a, const QShiftOperator& b) {
  if (a.vars_ != b.vars_ || a.terms_.size() != b.terms_.size()) return false;
  for (size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].shift != b.terms_[i].shift || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

PreparedOperator::PreparedOperator(const QShiftOperator& op) : vars_(op.vars()), denom_(op.vars()) {
  IntPoly common(1);
  for (auto& t : op.terms()) common = lcm(common, t.coeff.den());
  denom_ = LaurentPoly::from_ratfunc(RatFunc(common), vars_);
  for (auto& t : op.terms()) {
    IntPoly factor = t.coeff.num() * *exact_div(common, t.coeff.den());
    numer_.emplace_back(LaurentPoly::from_ratfunc(RatFunc(factor), vars_), t.shift);
  }
}

LaurentPoly PreparedOperator::apply(const LaurentPoly& f) const {
  LaurentPoly g = f.aligned(vars_);
  LaurentPoly acc(vars_);
  for (auto& [a, m] : numer_) acc += a * g.qshift(m);
  try {
    return exact_div(acc, denom_);
  } catch (const std::domain_error&) {
    throw std::domain_error("rational_apply_and_clear: denominator does not clear");
  }
}

LaurentPoly QShiftOperator::apply(const LaurentPoly& f) const { return PreparedOperator(*this).apply(f); }

LaurentPoly rational_apply_and_clear(const QShiftOperator& op, const LaurentPoly& f) { return op.apply(f); }

}  // namespace qsep
