#include "qsep/classical.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qsep/qkit.hpp"
#include "qsep/symbols.hpp"

namespace qsep::classical {

namespace {

RatFunc tv(int j) { return RatFunc::var(("t" + std::to_string(j)).c_str()); }
RatFunc Tv(int j) { return RatFunc::var(("T" + std::to_string(j)).c_str()); }
RatFunc Lv(int k) { return RatFunc::var(sym::L, k); }

void require_zero(const RatFunc& r, const char* what) {
  if (!r.is_zero()) throw std::logic_error(std::string(what) + ": nonzero residual " + r.str());
}

}  // namespace

RatFunc ell(int k) { return Lv(2 * k); }

RatFunc v(int j, int k) { return (Lv(-1) * tv(j) - Lv(1) * tv(k)) / (tv(j) - tv(k)); }

RatFunc hamiltonian(int i, int n) {
  if (i < 0 || i > n) throw std::invalid_argument("hamiltonian: index out of range");
  RatFunc h;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != i) continue;
    RatFunc term(1);
    for (int j = 0; j < n; ++j) {
      if (!(mask >> j & 1)) continue;
      term *= Tv(j + 1);
      for (int k = 0; k < n; ++k)
        if (!(mask >> k & 1)) term *= v(j + 1, k + 1);
    }
    h += term;
  }
  return h;
}

Bracket poisson_bracket(const RatFunc& F, const RatFunc& G, int n) {
  Bracket b;
  for (int j = 1; j <= n; ++j) {
    int it = symbol_id("t" + std::to_string(j)), iT = symbol_id("T" + std::to_string(j));
    RatFunc d = F.derivative(iT) * G.derivative(it) - F.derivative(it) * G.derivative(iT);
    if (!d.is_zero()) b.coeff += Tv(j) * tv(j) * d;
  }
  return b;
}

Matrix3 lax_matrix(const RatFunc& u) {
  RatFunc l = ell(), l3 = ell(3);
  RatFunc kappa = (l - 1) * (1 - l3 * u) / (2 * ell(2) * (1 - u));
  RatFunc e0 = (1 + l3 * u) / (1 - l3 * u);
  Matrix3 m;
  for (int j = 1; j <= 3; ++j) {
    RatFunc d = kappa * Tv(j);
    for (int i = 1; i <= 3; ++i)
      if (i != j) d *= v(j, i);
    for (int k = 1; k <= 3; ++k) m[j - 1][k - 1] = d * (e0 - (tv(j) + l * tv(k)) / (tv(j) - l * tv(k)));
  }
  return m;
}

std::array<RatFunc, 4> lax_charpoly_coeffs() {
  RatFunc u = RatFunc::var("u");
  Matrix3 m = lax_matrix(u);
  RatFunc tr = m[0][0] + m[1][1] + m[2][2];
  RatFunc minors;
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) minors += m[a][a] * m[b][b] - m[a][b] * m[b][a];
  RatFunc det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  RatFunc pre = ell(3) * (1 - u) * (1 - u);
  return {-pre * det, pre * minors, -pre * tr, pre};
}

std::array<RatFunc, 4> charpoly_from_hamiltonians() {
  RatFunc u = RatFunc::var("u"), l = ell();
  return {-(1 - ell(3) * u).pow(2) * hamiltonian(3), l * (1 - l * u) * (1 - ell(3) * u) * hamiltonian(2),
          -ell(2) * (1 - u) * (1 - ell(2) * u) * hamiltonian(1), ell(3) * (1 - u) * (1 - u)};
}

bool lax_charpoly_identity_check() {
  auto a = lax_charpoly_coeffs();
  auto b = charpoly_from_hamiltonians();
  for (int k = 0; k < 4; ++k) require_zero(a[k] - b[k], ("charpoly coefficient of z^" + std::to_string(k)).c_str());
  return true;
}

RatFunc alpha(int k, const RatFunc& u) {
  if (k != 1 && k != 2) throw std::invalid_argument("alpha: k must be 1 or 2");
  RatFunc l = ell(), t3 = tv(3), tk = tv(k), to = tv(3 - k);
  return (1 - ell(3) * u) * (l * t3 * u - to) * (tk - l * t3) / (l * (1 - u) * (ell(2) * t3 * u - to) * (l * tk - t3));
}

ClassicalAlphaCheck alpha_residuals_classical() {
  RatFunc y = RatFunc::var("y"), l = ell();
  RatFunc a1 = alpha(1, y), a2 = alpha(2, y);
  ClassicalAlphaCheck r;
  r.identity_a = -(1 - y) * (1 - ell(2) * y) * ell(2) * v(3, 1) * v(3, 2) * a1 * a2 +
                 (1 - l * y) * (1 - ell(3) * y) * l * (v(1, 2) * v(3, 2) * a2 + v(2, 1) * v(3, 1) * a1) -
                 (1 - ell(3) * y).pow(2);
  r.identity_b = (1 - y).pow(2) * ell(3) * a1 * a2 -
                 (1 - y) * (1 - ell(2) * y) * ell(2) * (v(1, 2) * v(1, 3) * a2 + v(2, 1) * v(2, 3) * a1) +
                 (1 - l * y) * (1 - ell(3) * y) * l * v(1, 3) * v(2, 3);
  int iy = symbol_id("y");
  auto ratio_residual = [&](const RatFunc& c) {
    RatFunc img = c / y;
    RatFunc ratio = a1 / a2;
    return specialize(ratio, {{iy, img}}) - ratio;
  };
  RatFunc c0 = tv(1) * tv(2) / tv(3).pow(2);
  r.ratio_invariance = ratio_residual(c0 / ell(3));
  r.ratio_invariance_half = ratio_residual(c0 * Lv(-3));
  return r;
}

bool verify_alpha_identities_classical() {
  auto r = alpha_residuals_classical();
  require_zero(r.identity_a, "classical alpha identity (a)");
  require_zero(r.identity_b, "classical alpha identity (b)");
  require_zero(r.ratio_invariance, "alpha1/alpha2 invariance");
  return true;
}

RatFunc separated_lhs(const RatFunc& Y, const RatFunc& y) {
  RatFunc l = ell();
  return Y.pow(3) * ell(3) * (1 - y).pow(2) - Y.pow(2) * ell(2) * (1 - y) * (1 - ell(2) * y) * hamiltonian(1) +
         Y * l * (1 - l * y) * (1 - ell(3) * y) * hamiltonian(2) - (1 - ell(3) * y).pow(2) * hamiltonian(3);
}

RatFunc z1(const RatFunc& Y, const RatFunc& y) {
  RatFunc l = ell();
  return -(1 - y) * (1 - ell(2) * y) * ell(2) * v(3, 1) * v(3, 2) * Y * Y +
         (1 - l * y) * (1 - ell(3) * y) * l * (v(1, 2) * v(3, 2) * Tv(1) * Y + v(2, 1) * v(3, 1) * Tv(2) * Y) -
         (1 - ell(3) * y).pow(2) * Tv(1) * Tv(2);
}

RatFunc z2(const RatFunc& Y, const RatFunc& y) {
  RatFunc l = ell();
  return (1 - y).pow(2) * ell(3) * Y * Y -
         (1 - y) * (1 - ell(2) * y) * ell(2) * (v(1, 2) * v(1, 3) * Tv(1) * Y + v(2, 1) * v(2, 3) * Tv(2) * Y) +
         (1 - l * y) * (1 - ell(3) * y) * l * v(1, 3) * v(2, 3) * Tv(1) * Tv(2);
}

ZCheck z_decomposition_check() {
  RatFunc Y = RatFunc::var("Y"), y = RatFunc::var("y");
  ZCheck r;
  r.split_residual = separated_lhs(Y, y) - (Tv(3) * z1(Y, y) + Y * z2(Y, y));
  // Y^2 -> T1 a1 T2 a2, T1 Y -> T1 T2 a2, T2 Y -> T2 T1 a1; then divide by T1 T2.
  RatFunc a1 = alpha(1, y), a2 = alpha(2, y), l = ell();
  r.z1_substituted = -(1 - y) * (1 - ell(2) * y) * ell(2) * v(3, 1) * v(3, 2) * a1 * a2 +
                     (1 - l * y) * (1 - ell(3) * y) * l * (v(1, 2) * v(3, 2) * a2 + v(2, 1) * v(3, 1) * a1) -
                     (1 - ell(3) * y).pow(2);
  r.z2_substituted = (1 - y).pow(2) * ell(3) * a1 * a2 -
                     (1 - y) * (1 - ell(2) * y) * ell(2) * (v(1, 2) * v(1, 3) * a2 + v(2, 1) * v(2, 3) * a1) +
                     (1 - l * y) * (1 - ell(3) * y) * l * v(1, 3) * v(2, 3);
  return r;
}

// ---- numeric ----

namespace {

cplx vn(const PhasePoint& p, int j, int k) {
  double s = std::sqrt(p.ell);
  return (p.t[j] / s - s * p.t[k]) / (p.t[j] - p.t[k]);
}

cplx alpha_n(const PhasePoint& p, int k, cplx u) {
  double l = p.ell, l3 = l * l * l;
  cplx t3 = p.t[2], tk = p.t[k - 1], to = p.t[2 - k];
  return (1. - l3 * u) * (l * t3 * u - to) * (tk - l * t3) / (l * (1. - u) * (l * l * t3 * u - to) * (l * tk - t3));
}

using CMat = std::array<std::array<cplx, 3>, 3>;

CMat lax_n(const PhasePoint& p, cplx u) {
  double l = p.ell, l3 = l * l * l;
  cplx kappa = (l - 1) * (1. - l3 * u) / (2 * l * l * (1. - u));
  cplx e0 = (1. + l3 * u) / (1. - l3 * u);
  CMat m;
  for (int j = 0; j < 3; ++j) {
    cplx d = kappa * p.T[j];
    for (int i = 0; i < 3; ++i)
      if (i != j) d *= vn(p, j, i);
    for (int k = 0; k < 3; ++k) m[j][k] = d * (e0 - (p.t[j] + l * p.t[k]) / (p.t[j] - l * p.t[k]));
  }
  return m;
}

cplx det3(const CMat& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Coefficients (ascending) of prod (c_i + d_i u).
std::array<cplx, 5> poly_mul(const std::array<cplx, 5>& a, cplx c, cplx d) {
  std::array<cplx, 5> r{};
  for (int i = 0; i < 5; ++i) {
    r[i] += a[i] * c;
    if (i + 1 < 5) r[i + 1] += a[i] * d;
  }
  return r;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

}  // namespace

PhasePoint random_phase_point(std::mt19937_64& rng, double ell, double T_lo, double T_hi) {
  std::uniform_real_distribution<double> ang(0, 2 * std::numbers::pi), mom(T_lo, T_hi);
  PhasePoint p;
  p.ell = ell;
  for (auto& t : p.t) t = std::polar(1.0, ang(rng));
  for (auto& T : p.T) T = mom(rng);
  return p;
}

void check_phase_point(const PhasePoint& p) {
  if (!(p.ell > 1)) throw std::invalid_argument("phase point: need l > 1");
  for (auto& t : p.t)
    if (std::abs(std::abs(t) - 1) > 1e-12) throw std::invalid_argument("phase point: |t_j| must be 1");
  for (double T : p.T)
    if (!(T > 0)) throw std::invalid_argument("phase point: T_j must be positive");
}

Separation separate_numeric(const PhasePoint& p) {
  double l = p.ell, l3 = l * l * l;
  cplx t1 = p.t[0], t2 = p.t[1], t3 = p.t[2];
  // Numerator of A1 - A2 over the common denominator, times l (1-u).
  std::array<cplx, 5> one{1, 0, 0, 0, 0};
  auto f1 = poly_mul(poly_mul(poly_mul(one, 1, -l3), -t2, l * t3), -t1, l * l * t3);
  auto f2 = poly_mul(poly_mul(poly_mul(one, 1, -l3), -t1, l * t3), -t2, l * l * t3);
  cplx k1 = p.T[0] * (t1 - l * t3) * (l * t2 - t3), k2 = p.T[1] * (t2 - l * t3) * (l * t1 - t3);
  std::array<cplx, 4> cubic;
  for (int i = 0; i < 4; ++i) cubic[i] = k1 * f1[i] - k2 * f2[i];
  // Synthetic division by (u - l^{-3}).
  double r = 1 / l3;
  cplx b2 = cubic[3], b1 = cubic[2] + r * b2, b0 = cubic[1] + r * b1, rem = cubic[0] + r * b0;
  double scale = std::abs(cubic[0]) + std::abs(cubic[1]) * r + std::abs(cubic[2]) * r * r + std::abs(cubic[3]) * r * r * r;
  if (std::abs(rem) > 1e-10 * scale) throw std::logic_error("separate_numeric: u = l^-3 is not a root");
  if (std::abs(b2) == 0) throw std::domain_error("separate_numeric: degenerate quadratic");
  cplx B = b1 / b2, C = b0 / b2;
  cplx disc = B * B - 4. * C;
  if (std::abs(disc) < 1e-10) throw std::domain_error("separate_numeric: degenerate discriminant");
  cplx sq = std::sqrt(disc);
  cplx big = std::real(std::conj(B) * sq) >= 0 ? -(B + sq) / 2. : -(B - sq) / 2.;
  Separation s;
  s.y1 = big;
  s.y2 = C / big;
  if (s.y1.real() < s.y2.real() || (s.y1.real() == s.y2.real() && s.y1.imag() < s.y2.imag())) std::swap(s.y1, s.y2);
  cplx Ya[2], Yb[2];
  cplx ys[2] = {s.y1, s.y2};
  for (int j = 0; j < 2; ++j) {
    Ya[j] = p.T[0] * alpha_n(p, 1, ys[j]);
    Yb[j] = p.T[1] * alpha_n(p, 2, ys[j]);
    s.alpha_mismatch = std::max(s.alpha_mismatch, rel(Ya[j], Yb[j]));
  }
  if (s.alpha_mismatch > 1e-9) throw std::domain_error("separate_numeric: T1 a1(y) and T2 a2(y) disagree");
  s.Y1 = Ya[0];
  s.Y2 = Ya[1];
  return s;
}

std::array<cplx, 4> hamiltonians_num(const PhasePoint& p) {
  std::array<cplx, 4> h{1, 0, 0, 0};
  for (unsigned mask = 1; mask < 8; ++mask) {
    cplx term = 1;
    for (int j = 0; j < 3; ++j) {
      if (!(mask >> j & 1)) continue;
      term *= p.T[j];
      for (int k = 0; k < 3; ++k)
        if (!(mask >> k & 1)) term *= vn(p, j, k);
    }
    h[std::popcount(mask)] += term;
  }
  return h;
}

double separated_equation_residual(const PhasePoint& p, cplx Y, cplx y) {
  auto h = hamiltonians_num(p);
  double l = p.ell, l3 = l * l * l;
  cplx terms[4] = {Y * Y * Y * l3 * (1. - y) * (1. - y), -Y * Y * l * l * (1. - y) * (1. - l * l * y) * h[1],
                   Y * l * (1. - l * y) * (1. - l3 * y) * h[2], -(1. - l3 * y) * (1. - l3 * y) * h[3]};
  cplx sum = 0;
  double scale = 0;
  for (auto& t : terms) {
    sum += t;
    scale += std::abs(t);
  }
  return std::abs(sum) / scale;
}

double lax_det_residual(const PhasePoint& p, cplx Y, cplx y) {
  CMat m = lax_n(p, y);
  double norm = 0;
  for (auto& row : m)
    for (auto& e : row) {
      norm += std::norm(e);
      e = -e;
    }
  for (int i = 0; i < 3; ++i) m[i][i] += Y;
  double s = std::abs(Y) + std::sqrt(norm);
  return std::abs(det3(m)) / (s * s * s);
}

double constraint_residual(const PhasePoint& p, const Separation& s) {
  double l = p.ell;
  return rel(s.y1 * s.y2, p.t[0] * p.t[1] / (p.t[2] * p.t[2] * l * l * l));
}

namespace {

thread_local double max_arg = 0;

double li2_checked(double z) {
  max_arg = std::max(max_arg, std::abs(z));
  if (!(z > -1 && z < 1)) throw std::domain_error("dilog argument outside (-1, 1): " + std::to_string(z));
  return qkit::dilog_num(z);
}

double LL(double nu, double x, double y) {
  return li2_checked(nu * x * y) + li2_checked(nu * x / y) + li2_checked(nu * y / x) + li2_checked(nu / (x * y));
}

double positive_real(cplx z, const char* what) {
  if (std::abs(z.imag()) > 1e-12 * std::abs(z) || !(z.real() > 0))
    throw std::domain_error(std::string("genfunc check: ") + what + " is not positive real");
  return z.real();
}

// Real pair of equal sign; only the product and ratio enter.
std::pair<double, double> same_sign_pair(cplx a, cplx b, const char* what) {
  auto real = [&](cplx z) {
    if (std::abs(z.imag()) > 1e-12 * std::abs(z)) throw std::domain_error(std::string("genfunc check: ") + what + " not real");
    return z.real();
  };
  double x = real(a), y = real(b);
  if (!(x * y > 0)) throw std::domain_error(std::string("genfunc check: ") + what + " of opposite signs");
  return {x, y};
}

}  // namespace

double generating_function(double Yplus, double yminus, double tplus, double tminus, double ell) {
  double lt = std::log(tminus);
  // -Li2(x) - Li2(1/x) at x = t-^2, real part.
  double tt = 2 * lt * lt - std::numbers::pi * std::numbers::pi / 3;
  return std::log(Yplus) * std::log(std::pow(ell, -1.5) * tplus) + LL(std::pow(ell, -0.5), yminus, tminus) +
         LL(1 / ell, tplus, tminus) - LL(std::pow(ell, -1.5), tplus, yminus) + tt;
}

GenfuncReport genfunc_canonicity_check(const PhasePoint& p, double h) {
  if (!(h >= 1e-6 && h <= 1e-4)) throw std::invalid_argument("genfunc check: step outside [1e-6, 1e-4]");
  if (!(p.ell > 1)) throw std::invalid_argument("genfunc check: need l > 1");
  double t[3];
  for (int j = 0; j < 3; ++j) t[j] = positive_real(p.t[j], "t_j");
  for (double T : p.T)
    if (!(T > 0)) throw std::domain_error("genfunc check: T_j must be positive");
  Separation s = separate_numeric(p);
  double y1 = positive_real(s.y1, "y1"), y2 = positive_real(s.y2, "y2");
  auto [Y1, Y2] = same_sign_pair(s.Y1, s.Y2, "Y1, Y2");
  double tp = std::sqrt(t[0] * t[1]) / t[2], tm = std::sqrt(t[0] / t[1]);
  double Tp = p.T[0] * p.T[1], Tm = p.T[0] / p.T[1];
  double yp = std::sqrt(y1 * y2), ym = std::sqrt(y1 / y2);
  double Yp = Y1 * Y2, Ym = Y1 / Y2;
  double l = p.ell;
  // x d/dx by central differences in ln x.
  auto dlog = [&](int which) {
    double a[4] = {Yp, ym, tp, tm}, b[4] = {Yp, ym, tp, tm};
    a[which] *= std::exp(h);
    b[which] *= std::exp(-h);
    return (generating_function(a[0], a[1], a[2], a[3], l) - generating_function(b[0], b[1], b[2], b[3], l)) / (2 * h);
  };
  GenfuncReport r;
  max_arg = 0;
  r.dev_yplus = std::abs(dlog(0) - std::log(yp));
  r.dev_Yminus = std::abs(-dlog(1) - std::log(Ym));
  r.dev_Tplus = std::abs(dlog(2) - std::log(Tp));
  r.dev_Tminus = std::abs(dlog(3) - std::log(Tm));
  r.yplus_dev = std::abs(yp - tp * std::pow(l, -1.5));
  r.max_dilog_arg = max_arg;
  r.max_dev = std::max({r.dev_yplus, r.dev_Yminus, r.dev_Tplus, r.dev_Tminus});
  return r;
}

PhasePoint random_real_slice_point(std::mt19937_64& rng, double ell, double max_arg) {
  std::uniform_real_distribution<double> lt(-1, 1), lT(-2.5, 2.5);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    PhasePoint p;
    p.ell = ell;
    for (auto& t : p.t) t = std::exp(lt(rng));
    for (auto& T : p.T) T = std::exp(lT(rng));
    try {
      if (genfunc_canonicity_check(p, 1e-4).max_dilog_arg <= max_arg) return p;
    } catch (const std::domain_error&) {
    }
  }
  throw std::runtime_error("random_real_slice_point: no admissible point found");
}

}  // namespace qsep::classical
