#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "qsep/rat_func.hpp"

namespace qsep::qkit {

// ---- exact, base q = the symbol q ----

RatFunc qpoch(const RatFunc& a, int k);                 // (a;q)_k, k >= 0
RatFunc qpoch(const std::vector<RatFunc>& as, int k);   // (a_1,...,a_n;q)_k
RatFunc qbinom(int n, int k);

// sum_{k=0}^{num_terms} (tops;q)_k / ((q;q)_k (bottoms;q)_k) * arg^k.
// Termination is the caller's business.
RatFunc bhs_terminating(const std::vector<RatFunc>& tops, const std::vector<RatFunc>& bottoms,
                        const RatFunc& arg, int num_terms);

// q-Lauricella phi_D summed over 0 <= k_j <= bounds[j].
RatFunc qlauricella_terminating(const RatFunc& a, const std::vector<RatFunc>& bs, const RatFunc& c,
                                const std::vector<RatFunc>& xs, const std::vector<int>& bounds);

// Truncated power series sum_{i<=order} c_i z^i over RatFunc.
class Series {
 public:
  explicit Series(int order) : c_(order + 1) {}
  Series(int order, const RatFunc& constant) : c_(order + 1) { c_[0] = constant; }
  static Series from_coeffs(std::vector<RatFunc> c) {
    Series s(static_cast<int>(c.size()) - 1);
    s.c_ = std::move(c);
    return s;
  }
  int order() const { return static_cast<int>(c_.size()) - 1; }
  RatFunc& operator[](int i) { return c_.at(i); }
  const RatFunc& operator[](int i) const { return c_.at(i); }
  bool is_zero() const;

  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series operator*(const Series& o) const;
  Series scaled(const RatFunc& k) const;       // multiply by constant
  Series shifted_up(int m) const;              // multiply by z^m
  Series argument_scaled(const RatFunc& k) const;  // f(k z)
  Series inverse() const;                      // requires invertible c_0

 private:
  std::vector<RatFunc> c_;
};

// Series of (x z;q)_infinity and 1/(x z;q)_infinity from the Euler expansions.
Series qpoch_inf_series(const RatFunc& x, int order);
Series qpoch_inf_inverse_series(const RatFunc& x, int order);

// Truncation of the 1phi0 / nphi(n-1) series as a power series in z.
Series bhs_series(const std::vector<RatFunc>& tops, const std::vector<RatFunc>& bottoms, int order);

// Residual of {z prod(1 - a_k Y) - prod(1 - q^{-1} b_k Y)} f, b_n = q, on the
// truncated series f; returned through order N-1.
Series hg_diffeq_residual(const std::vector<RatFunc>& tops, const std::vector<RatFunc>& bottoms, int N);

// Both sides of Andrews' reduction of phi_D with b'_j = q^{-nu_j} and
// c = gamma * a', as power series in a' through `order`.
struct SeriesPair {
  Series lhs, rhs;
};
SeriesPair andrews_sides(const RatFunc& gamma, const std::vector<int>& nus,
                         const std::vector<RatFunc>& xs, int order);

// Lemma check: sum_k (a;q)_k/(q;q)_k z^k P(q^k) with P(q^k) = (q^{k-nu+1};q)_nu
// against Q_N(z) (a q^N z;q)_inf/(z;q)_inf.
SeriesPair pq_lemma_sides(const RatFunc& a, int nu, int N, int order);

// ---- numeric ----

std::complex<double> qpoch_inf_num(std::complex<double> a, double q);
double qgamma_num(double z, double q);
double qbeta_num(double a, double b, double q);
double qint_num(const std::function<double(double)>& f, double q, double tol = 1e-17);
double dilog_num(double z);
double asympt_dilog_deviation(double x, double hbar);

}  // namespace qsep::qkit
