#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "qsep/ell.hpp"
#include "qsep/qshift.hpp"

namespace qsep::macdonald {

// Dominant weight lambda_1 <= ... <= lambda_n, n >= 2.
struct Weight {
  std::vector<int> parts;

  Weight() = default;
  Weight(std::initializer_list<int> p) : parts(p) {}
  explicit Weight(std::vector<int> p) : parts(std::move(p)) {}

  int n() const { return static_cast<int>(parts.size()); }
  int operator[](int i) const { return parts.at(i); }
  int total() const;
  bool is_dominant() const;
  std::string str() const;  // "0,1,2"
  friend auto operator<=>(const Weight&, const Weight&) = default;
};

void check_weight(const Weight& w);  // throws std::invalid_argument
Weight parse_weight(const std::string& s);

std::vector<std::string> tvars(int n);
LaurentPoly monomial_sym(const Weight& w);

bool dominance_leq(const Weight& mu, const Weight& lambda);
// All dominant mu <= lambda, listed so that mu comes after every nu with
// mu < nu (lambda first).
std::vector<Weight> enumerate_lower(const Weight& lambda);

QShiftOperator hamiltonian(int i, int n);
RatFunc eigenvalue(int k, const Weight& w);
QShiftOperator operator_adjoint(const QShiftOperator& op);

using MExpansion = std::map<Weight, RatFunc>;

// Coefficients in the m-basis of a symmetric Laurent polynomial.
MExpansion m_expansion(const LaurentPoly& f, int n);
LaurentPoly from_m_expansion(const MExpansion& e, int n);
// "m[0,0,2] + (...)*m[0,1,1]", highest weight first.
std::string render_m_expansion(const MExpansion& e);
// Reads both "m[0,0,2]" and the compact "m002" notation; terms must be
// linear in the m's.
MExpansion parse_m_expansion(const std::string& text, int n);

struct MacdonaldPoly {
  Weight weight;
  MExpansion expansion;
  LaurentPoly polynomial;
};

// Caches H_k m_mu in the m-basis; safe to share between threads.
class MacdonaldSolver {
 public:
  explicit MacdonaldSolver(int n);
  int n() const { return n_; }
  const MExpansion& h_action(int k, const Weight& mu);
  MacdonaldPoly solve(const Weight& lambda);
  // Apply H_k to an m-basis expansion.
  MExpansion apply(int k, const MExpansion& f);

 private:
  int n_;
  std::vector<std::unique_ptr<PreparedOperator>> ops_;
  std::mutex mu_;
  std::map<std::pair<int, Weight>, std::shared_ptr<const MExpansion>> cache_;
  std::map<Weight, std::shared_ptr<const MacdonaldPoly>> polys_;
};

MacdonaldPoly macdonald_poly(const Weight& lambda);

}  // namespace qsep::macdonald
