#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "qsep/macdonald.hpp"

namespace qsep::sov {

using macdonald::Weight;

// ---- coordinates on Sym(t1,t2;t3) and Sym(y1,y2;x) ----

// Variable names of the two sides. Symmetric coordinates are (e1, e2, t3)
// with e1 = t1+t2, e2 = t1 t2, and (E1, E2, x) with E1 = y1+y2, E2 = y1 y2.
const std::vector<std::string>& t_vars();     // t1 t2 t3
const std::vector<std::string>& y_vars();     // x y1 y2
const std::vector<std::string>& t_coords();   // e1 e2 t3
const std::vector<std::string>& y_coords();   // E1 E2 x

// f(a,b,c) symmetric under a<->b -> polynomial in (a+b) with Laurent
// coefficients in (ab, c). Throws std::domain_error on non-symmetric input.
LaurentPoly to_sym_coords(const LaurentPoly& f, bool y_side = false);
LaurentPoly from_sym_coords(const LaurentPoly& g, bool y_side = false);

struct PIndex {
  int j = 0, k = 0, nu = 0;
  friend auto operator<=>(const PIndex&, const PIndex&) = default;
};
std::string to_string(const PIndex& i);

using PExpansion = std::map<PIndex, RatFunc>;

// p_{jk nu} and its y-side counterpart, in symmetric coordinates.
LaurentPoly p_basis_poly(const PIndex& i);
LaurentPoly ptilde_basis_poly(const PIndex& i);

// Finite expansion of a coordinate polynomial in the p (or ptilde) basis.
PExpansion expand_in_p_basis(const LaurentPoly& coords, bool y_side = false);
LaurentPoly assemble_p(const PExpansion& e, bool y_side = false);

// Eigenvalues of M on the two bases.
RatFunc m_factor(const PIndex& i);     // l^{3k} (l^-2;q)_nu / (l^-3;q)_nu
RatFunc minv_factor(const PIndex& i);  // its inverse

// f in (t1,t2,t3) symmetric in t1<->t2  ->  Mf in (x,y1,y2).
LaurentPoly apply_M(const LaurentPoly& f);
LaurentPoly apply_Minv(const LaurentPoly& g);

// M applied to an m-basis expansion, with the images of m_mu cached.
class MCache {
 public:
  const LaurentPoly& image(const Weight& mu);
  LaurentPoly apply(const macdonald::MExpansion& e);

 private:
  std::map<Weight, LaurentPoly> images_;
};

// ---- separated polynomials ----

RatFunc c_lambda(const Weight& lambda);

struct SepPoly {
  Weight weight;
  std::map<int, RatFunc> chi;  // k -> chi_{lambda,k}, zero entries omitted
  LaurentPoly poly() const;    // in the variable y
  LaurentPoly poly_in(const std::string& var) const;
};

SepPoly sep_poly(const Weight& lambda);
// Product of the (y;q)_{1-ng} series with the nphi(n-1) series, truncated;
// throws std::logic_error if it fails to terminate or disagrees with sep_poly.
SepPoly sep_poly_via_series(const Weight& lambda);
// Coefficient of y^{N+1}, N = lambda_n - lambda_1, in the truncated product
// (normalised so that lambda_1 = 0); zero by termination.
RatFunc series_tail_coefficient(const Weight& lambda, int extra = 1);

RatFunc chi_endpoint(const Weight& lambda);            // chi_{lambda, lambda_n}
RatFunc sep_value_at_ell_minus_n(const Weight& lambda);  // S_lambda(l^{-n})
RatFunc evaluate(const SepPoly& s, const RatFunc& y);

// Lauricella-type representations, each as a Laurent polynomial in y.
LaurentPoly sep_poly_lauricella(const Weight& lambda);      // Andrews parameters
LaurentPoly sep_poly_double_sum(const Weight& lambda);      // expanded phi_D sum
// Second representation, only defined after l := q^m (m >= 1); throws
// std::domain_error when the specialisation hits a pole.
LaurentPoly sep_poly_lauricella2(const Weight& lambda, int m);

struct CheckResult {
  bool ok = true;
  std::string report;
  void fail(const std::string& msg) {
    ok = false;
    report += msg;
    report += '\n';
  }
};

// All representations against sep_poly. Form 2 is compared at l = q^m for
// the m in `ms` where both sides are defined; at least one must be. By
// default the first two admissible m in 1..N+2, N = lambda_n - lambda_1.
CheckResult lauricella_forms_check(const Weight& lambda, const std::vector<int>& ms = {});

// ---- separated q-difference equation ----

struct SepOperator {
  int n = 0;
  std::vector<RatFunc> h;             // h_0 = 1, h_1..h_n
  std::vector<LaurentPoly> coeffs;    // coefficient of f(q^k y), k = 0..n, in y
  bool simplified = false;
};

SepOperator sep_operator(const std::vector<RatFunc>& h, int n, bool simplified = false);
std::vector<RatFunc> eigenvalues(const Weight& lambda);  // h_0..h_n
LaurentPoly apply_sep_operator(const SepOperator& d, const LaurentPoly& f);

// Boundary coefficients A_{k,0} and A_{k,n+1} of the recurrence, as
// polynomials in the symbol z = q^k.
std::pair<RatFunc, RatFunc> boundary_coefficients(const SepOperator& d);
RatFunc recurrence_coefficient(const SepOperator& d, int k, int j);  // A_{k,j}

struct Reconstruction {
  int k_lo = 0, k_hi = 0;
  SepPoly sep;
};
// Support from the integer roots of the boundary coefficients, then the
// upward recurrence from f_{k_lo} = 1; throws std::domain_error on an
// ambiguous support or an inconsistent overdetermined equation.
Reconstruction reconstruct_sep_by_recursion(const std::vector<RatFunc>& h, int n);

// ---- main theorem and quantum identities ----

CheckResult verify_factorization(const Weight& lambda, MCache* cache = nullptr);

struct AlphaCheck {
  bool identity_a = false, identity_b = false, alpha12_consistent = false, commutation = false;
  bool ok() const { return identity_a && identity_b && alpha12_consistent && commutation; }
};
AlphaCheck verify_alpha_identities_quantum();

// Finite q-difference form of M^{-1} for integer g >= 1.
struct MinvDifferenceOperator {
  int g = 0;
  std::vector<RatFunc> xi;  // xi_k in t1,t2,t3 for k = 0..g
  LaurentPoly apply(const LaurentPoly& phi) const;  // (x,y1,y2) -> (t1,t2,t3)
};
// Throws std::domain_error if some xi_k does not reduce to integer powers of
// the t's.
MinvDifferenceOperator minv_difference_operator(int g);

struct MabReport {
  bool kp = false, pm = false, xik = false, inversion = false;
  std::string detail;
  bool ok() const { return kp && pm && xik && inversion; }
};
MabReport mab_identity_checks(int max_nu = 3);

}  // namespace qsep::sov
