#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "qsep/macdonald.hpp"

namespace qsep::numeric {

using cplx = std::complex<double>;
using macdonald::Weight;

// Periodic trapezoid rule on |t| = 1: (1/2 pi i) \oint f(t) dt/t ~ (1/N) sum f(w^k).
class QuadratureGrid {
 public:
  // Requires N >= 64 and a power of two; std::invalid_argument otherwise.
  explicit QuadratureGrid(int N);
  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<cplx>& nodes() const { return nodes_; }
  cplx integrate(const std::function<cplx(cplx)>& f) const;

 private:
  std::vector<cplx> nodes_;
};

// Compensated (Neumaier) complex sum; the result does not depend on how the
// terms were produced, only on their order.
class Accumulator {
 public:
  void add(cplx x);
  cplx value() const { return sum_ + comp_; }

 private:
  cplx sum_{0}, comp_{0};
};

// (a;q)_inf truncated once |a| q^k < 1e-16.
cplx qpoch_inf(cplx a, double q);

// w(a,b,c,d;t) and the closed form of its integral over the unit circle.
cplx aw_weight(cplx a, cplx b, cplx c, cplx d, double q, cplx t);
cplx aw_closed_form(cplx a, cplx b, cplx c, cplx d, double q);
// Relative error of the quadrature; std::domain_error unless all |a..d| < 1
// and 0 < q < 1.
double aw_integral_check(cplx a, cplx b, cplx c, cplx d, double q, int N);

struct MabParams {
  double alpha = 1, beta = 2, q = 0.5;
  cplx r = 1, s = 1;
};
// Kernel of the normalised two-parameter operator at t.
cplx mab_kernel(const MabParams& p, cplx t);
// The polynomial R_{j1 j2 k1 k2}(t) and the exact image of M on it.
cplx mab_R(const MabParams& p, int j1, int j2, int k1, int k2, cplx t);
cplx mab_R_image(const MabParams& p, int j1, int j2, int k1, int k2);
// M applied to R by quadrature.
cplx mab_apply_numeric(const MabParams& p, int j1, int j2, int k1, int k2, int N);
// p_nu^beta(t) -> (q^beta;q)_nu/(q^{alpha+beta};q)_nu p_nu^{alpha+beta}(s);
// returns the relative error. std::domain_error outside the unit-circle
// regime (alpha, beta > 0, |r| = |s| = 1) or for nu outside 0..3.
double mab_numeric_check(const MabParams& p, int nu, int N);
double mab_R_check(const MabParams& p, int j1, int j2, int k1, int k2, int N);

// Inner product (1/(2 pi i)^3) \oint P_lambda(1/t) P_mu(t) Delta(t) dt/t on
// the 3-torus with N nodes per axis, at l = q^{-g}.
cplx macdonald_inner_product(const Weight& lambda, const Weight& mu, double q, double g, int N = 48);
// |<lambda,mu>| / sqrt(<lambda,lambda><mu,mu>) for lambda != mu.
double orthogonality_check(const Weight& lambda, const Weight& mu, double q, double g, int N = 48);

// Right side of the q-integral representation of S_lambda at y = q^x and
// l = q^{-g}. For n g not an integer the q-integral is summed directly; for
// n g an integer the integrand has poles at small t = q^k and the normalised
// terminating form is used. std::domain_error for g <= 0, x <= 0 or a pole.
double sep_poly_qint(const Weight& lambda, double q, double g, double x);
double sep_poly_exact(const Weight& lambda, double q, double g, double x);
double qint_sep_poly_check(const Weight& lambda, double q, double g, const std::vector<double>& xs);

}  // namespace qsep::numeric
