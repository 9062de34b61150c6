#pragma once

#include <array>
#include <complex>
#include <random>
#include <string>

#include "qsep/rat_func.hpp"

namespace qsep::classical {

// Exact side. Variables t1,t2,t3, T1,T2,T3, spectral parameter u, eigenvalue
// z, separated coordinate y. l is written as L^2 so that l^{1/2} is a symbol.

RatFunc ell(int k = 1);        // l^k = L^{2k}
RatFunc v(int j, int k);       // (l^{-1/2} t_j - l^{1/2} t_k) / (t_j - t_k)
RatFunc hamiltonian(int i, int n = 3);  // H_i, with H_0 = 1

// {F,G} = -i * coeff. Only the coefficient is stored; the factor -i is
// implicit.
struct Bracket {
  RatFunc coeff;
  bool times_minus_i = true;
  bool is_zero() const { return coeff.is_zero(); }
};
Bracket poisson_bracket(const RatFunc& F, const RatFunc& G, int n = 3);

using Matrix3 = std::array<std::array<RatFunc, 3>, 3>;
Matrix3 lax_matrix(const RatFunc& u);  // L(u) = D(u) E(u)

// Coefficients c_0..c_3 of z^k in l^3 (1-u)^2 det(z - L(u)), computed from
// the matrix, and the same from the Hamiltonians.
std::array<RatFunc, 4> lax_charpoly_coeffs();
std::array<RatFunc, 4> charpoly_from_hamiltonians();
// Throws std::logic_error on mismatch.
bool lax_charpoly_identity_check();

RatFunc alpha(int k, const RatFunc& u);  // k = 1, 2

struct ClassicalAlphaCheck {
  RatFunc identity_a, identity_b;   // residuals
  RatFunc ratio_invariance;         // under u -> t1 t2 / (t3^2 l^3 u)
  RatFunc ratio_invariance_half;    // under u -> t1 t2 / (t3^2 l^{3/2} u)
};
ClassicalAlphaCheck alpha_residuals_classical();
// Identities (a), (b) and the l^{-3} ratio invariance; throws on mismatch.
bool verify_alpha_identities_classical();

// Left side of the separated equation at (Y, y) as a polynomial in Y, and the
// split T3 Z1 + Y Z2.
RatFunc separated_lhs(const RatFunc& Y, const RatFunc& y);
RatFunc z1(const RatFunc& Y, const RatFunc& y);
RatFunc z2(const RatFunc& Y, const RatFunc& y);
struct ZCheck {
  RatFunc split_residual;  // lhs - (T3 Z1 + Y Z2), symbolic Y
  RatFunc z1_substituted;  // Z1 / (T1 T2) after Y -> T_k alpha_k(y)
  RatFunc z2_substituted;
  bool ok() const { return split_residual.is_zero() && z1_substituted.is_zero() && z2_substituted.is_zero(); }
};
ZCheck z_decomposition_check();

// ---- numeric side ----

using cplx = std::complex<double>;

struct PhasePoint {
  std::array<cplx, 3> t;
  std::array<double, 3> T;
  double ell = 2;
};
// |t_j| = 1, T_j in [T_lo, T_hi].
PhasePoint random_phase_point(std::mt19937_64& rng, double ell, double T_lo = 0.5, double T_hi = 2);
void check_phase_point(const PhasePoint& p);  // throws std::invalid_argument

struct Separation {
  cplx y1, y2, Y1, Y2;
  double alpha_mismatch = 0;  // max relative |T1 a1(y_j) - T2 a2(y_j)|
};
// Throws std::domain_error on a degenerate discriminant or when the two
// expressions for Y_j disagree beyond 1e-9 relative.
Separation separate_numeric(const PhasePoint& p);

std::array<cplx, 4> hamiltonians_num(const PhasePoint& p);  // H_0..H_3
double separated_equation_residual(const PhasePoint& p, cplx Y, cplx y);  // relative
double lax_det_residual(const PhasePoint& p, cplx Y, cplx y);            // relative
double constraint_residual(const PhasePoint& p, const Separation& s);     // y1 y2 vs t1 t2/(t3^2 l^3)

// Real slice: t_j > 0, T_j > 0. The two t-only dilogarithms are combined
// through the inversion formula and the real part is kept.
struct GenfuncReport {
  double max_dev = 0;
  double dev_Tminus = 0, dev_Tplus = 0, dev_Yminus = 0, dev_yplus = 0;
  double yplus_dev = 0;  // |y+ - t+ l^{-3/2}|
  double max_dilog_arg = 0;
};
// Throws std::domain_error off the real slice or for a dilog argument
// outside (-1, 1), std::invalid_argument for h_fd outside [1e-6, 1e-4].
GenfuncReport genfunc_canonicity_check(const PhasePoint& p, double h_fd);
// Point on the real slice (ln t_j in [-1,1], ln T_j in [-2.5,2.5]) where the
// check is defined and every dilog argument has modulus <= max_arg.
PhasePoint random_real_slice_point(std::mt19937_64& rng, double ell, double max_arg = 0.9);
double generating_function(double Yplus, double yminus, double tplus, double tminus, double ell);

}  // namespace qsep::classical
