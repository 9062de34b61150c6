#include "qsep/numeric.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qsep/qkit.hpp"
#include "qsep/sov.hpp"
#include "qsep/symbols.hpp"

namespace qsep::numeric {

namespace {

void require_q(double q) {
  if (!(q > 0 && q < 1)) throw std::domain_error("need 0 < q < 1");
}

cplx qpoch(cplx a, double q, int k) {
  cplx p = 1;
  for (int i = 0; i < k; ++i, a *= q) p *= 1. - a;
  return p;
}

// (a;q)_m for any integer m, with (a;q)_{-m} = 1/(a q^{-m};q)_m.
cplx qpoch_int(cplx a, double q, int m) {
  if (m >= 0) return qpoch(a, q, m);
  return 1. / qpoch(a * std::pow(q, m), q, -m);
}

// (nu x y, nu x/y, nu y/x, nu/(x y); q)_inf
cplx lq(cplx nu, cplx x, cplx y, double q) {
  return qpoch_inf(nu * x * y, q) * qpoch_inf(nu * x / y, q) * qpoch_inf(nu * y / x, q) * qpoch_inf(nu / (x * y), q);
}

double rel_err(cplx got, cplx want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

QuadratureGrid::QuadratureGrid(int N) {
  if (N < 64 || (N & (N - 1)) != 0) throw std::invalid_argument("quadrature grid: N must be a power of two >= 64");
  nodes_.resize(N);
  for (int k = 0; k < N; ++k) nodes_[k] = std::polar(1.0, 2 * std::numbers::pi * k / N);
}

cplx QuadratureGrid::integrate(const std::function<cplx(cplx)>& f) const {
  Accumulator acc;
  for (cplx t : nodes_) acc.add(f(t));
  return acc.value() / static_cast<double>(nodes_.size());
}

void Accumulator::add(cplx x) {
  auto part = [](double& s, double& c, double v) {
    double t = s + v;
    c += std::abs(s) >= std::abs(v) ? (s - t) + v : (v - t) + s;
    s = t;
  };
  double sr = sum_.real(), si = sum_.imag(), cr = comp_.real(), ci = comp_.imag();
  part(sr, cr, x.real());
  part(si, ci, x.imag());
  sum_ = {sr, si};
  comp_ = {cr, ci};
}

cplx qpoch_inf(cplx a, double q) {
  require_q(q);
  return qkit::qpoch_inf_num(a, q);
}

cplx aw_weight(cplx a, cplx b, cplx c, cplx d, double q, cplx t) {
  cplx num = qpoch_inf(t * t, q) * qpoch_inf(1. / (t * t), q);
  cplx den = 1;
  for (cplx x : {a, b, c, d}) den *= qpoch_inf(x * t, q) * qpoch_inf(x / t, q);
  return num / den;
}

cplx aw_closed_form(cplx a, cplx b, cplx c, cplx d, double q) {
  cplx den = qpoch_inf(q, q);
  for (cplx x : {a * b, a * c, a * d, b * c, b * d, c * d}) den *= qpoch_inf(x, q);
  return 2. * qpoch_inf(a * b * c * d, q) / den;
}

double aw_integral_check(cplx a, cplx b, cplx c, cplx d, double q, int N) {
  require_q(q);
  for (cplx x : {a, b, c, d})
    if (!(std::abs(x) < 1)) throw std::domain_error("aw_integral_check: parameters must lie inside the unit disk");
  QuadratureGrid grid(N);
  cplx got = grid.integrate([&](cplx t) { return aw_weight(a, b, c, d, q, t); });
  return rel_err(got, aw_closed_form(a, b, c, d, q));
}

// ---- two-parameter operator ----

namespace {

void require_mab(const MabParams& p) {
  require_q(p.q);
  if (!(p.alpha > 0 && p.beta > 0)) throw std::domain_error("mab: need alpha, beta > 0");
  if (std::abs(std::abs(p.r) - 1) > 1e-12 || std::abs(std::abs(p.s) - 1) > 1e-12)
    throw std::domain_error("mab: need |r| = |s| = 1");
}

double qb(const MabParams& p, double e) { return std::pow(p.q, e); }

}  // namespace

cplx mab_kernel(const MabParams& p, cplx t) {
  double q = p.q;
  double bq = qkit::qbeta_num(p.alpha, p.beta, q);
  cplx qq = qpoch_inf(q, q);
  cplx num = (1 - q) * qq * qq * qpoch_inf(t * t, q) * qpoch_inf(1. / (t * t), q) *
             lq(qb(p, (p.alpha + p.beta) / 2), p.r, p.s, q);
  cplx den = 2 * bq * lq(qb(p, p.alpha / 2), p.s, t, q) * lq(qb(p, p.beta / 2), p.r, t, q);
  return num / den;
}

cplx mab_R(const MabParams& p, int j1, int j2, int k1, int k2, cplx t) {
  double q = p.q, a = qb(p, p.alpha / 2), b = qb(p, p.beta / 2);
  cplx r = p.r, s = p.s;
  return qpoch(a * s * t, q, j1) * qpoch(a * s / t, q, j1) * qpoch(a * t / s, q, j2) * qpoch(a / (s * t), q, j2) *
         qpoch(b * r * t, q, k1) * qpoch(b * r / t, q, k1) * qpoch(b * t / r, q, k2) * qpoch(b / (r * t), q, k2);
}

cplx mab_R_image(const MabParams& p, int j1, int j2, int k1, int k2) {
  double q = p.q, ab = qb(p, (p.alpha + p.beta) / 2);
  cplx r = p.r, s = p.s;
  cplx pre = qpoch(qb(p, p.alpha), q, j1 + j2) * qpoch(qb(p, p.beta), q, k1 + k2) /
             qpoch(qb(p, p.alpha + p.beta), q, j1 + j2 + k1 + k2);
  return pre * qpoch(ab * r * s, q, j1 + k1) * qpoch(ab * r / s, q, j2 + k1) * qpoch(ab * s / r, q, j1 + k2) *
         qpoch(ab / (r * s), q, j2 + k2);
}

cplx mab_apply_numeric(const MabParams& p, int j1, int j2, int k1, int k2, int N) {
  require_mab(p);
  if (j1 < 0 || j2 < 0 || k1 < 0 || k2 < 0) throw std::invalid_argument("mab: negative index");
  QuadratureGrid grid(N);
  return grid.integrate([&](cplx t) { return mab_kernel(p, t) * mab_R(p, j1, j2, k1, k2, t); });
}

double mab_numeric_check(const MabParams& p, int nu, int N) {
  if (nu < 0 || nu > 3) throw std::domain_error("mab_numeric_check: nu must be in 0..3");
  return mab_R_check(p, 0, 0, nu, 0, N);
}

double mab_R_check(const MabParams& p, int j1, int j2, int k1, int k2, int N) {
  return rel_err(mab_apply_numeric(p, j1, j2, k1, k2, N), mab_R_image(p, j1, j2, k1, k2));
}

// ---- Macdonald orthogonality ----

namespace {

struct NumPoly {
  std::vector<std::array<int, 3>> exps;
  std::vector<double> coeffs;
};

NumPoly numeric_macdonald(const Weight& w, double q, double ell) {
  if (w.n() != 3) throw std::invalid_argument("orthogonality: only n = 3 is supported");
  auto P = macdonald::macdonald_poly(w);
  Point pt{{sym::q, q}, {sym::l, ell}, {sym::L, std::sqrt(ell)}};
  NumPoly out;
  for (auto& [e, c] : P.polynomial.terms()) {
    out.exps.push_back({e[0], e[1], e[2]});
    out.coeffs.push_back(eval_complex(c, pt).real());
  }
  return out;
}

}  // namespace

cplx macdonald_inner_product(const Weight& lambda, const Weight& mu, double q, double g, int N) {
  require_q(q);
  if (!(g > 0)) throw std::domain_error("orthogonality: need g > 0");
  if (N < 4) throw std::invalid_argument("orthogonality: N too small");
  double ell = std::pow(q, -g);
  NumPoly a = numeric_macdonald(lambda, q, ell), b = numeric_macdonald(mu, q, ell);
  std::vector<cplx> root(N), ratio(N);
  for (int k = 0; k < N; ++k) {
    root[k] = std::polar(1.0, 2 * std::numbers::pi * k / N);
    ratio[k] = qpoch_inf(root[k], q) / qpoch_inf(root[k] / ell, q);
  }
  auto mod = [N](long v) { return static_cast<int>(((v % N) + N) % N); };
  Accumulator acc;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) {
        int idx[3] = {i, j, k};
        cplx delta = 1;
        for (int x = 0; x < 3; ++x)
          for (int y = 0; y < 3; ++y)
            if (x != y) delta *= ratio[mod(idx[x] - idx[y])];
        cplx pa = 0, pb = 0;
        for (size_t m = 0; m < a.exps.size(); ++m) {
          long e = -(static_cast<long>(a.exps[m][0]) * i + static_cast<long>(a.exps[m][1]) * j +
                     static_cast<long>(a.exps[m][2]) * k);
          pa += a.coeffs[m] * root[mod(e)];
        }
        for (size_t m = 0; m < b.exps.size(); ++m) {
          long e = static_cast<long>(b.exps[m][0]) * i + static_cast<long>(b.exps[m][1]) * j +
                   static_cast<long>(b.exps[m][2]) * k;
          pb += b.coeffs[m] * root[mod(e)];
        }
        acc.add(pa * pb * delta);
      }
  return acc.value() / (static_cast<double>(N) * N * N);
}

double orthogonality_check(const Weight& lambda, const Weight& mu, double q, double g, int N) {
  if (lambda == mu) throw std::invalid_argument("orthogonality_check: weights must differ");
  cplx ab = macdonald_inner_product(lambda, mu, q, g, N);
  cplx aa = macdonald_inner_product(lambda, lambda, q, g, N);
  cplx bb = macdonald_inner_product(mu, mu, q, g, N);
  return std::abs(ab) / std::sqrt(std::abs(aa) * std::abs(bb));
}

// ---- q-integral representation ----

namespace {

struct QintData {
  int n, lam1, N;           // N = lambda_n - lambda_1
  double ell;
  std::vector<double> xs;   // x_j
  std::vector<int> betas;   // beta_j <= 0
  double pre_const;         // prod_j (q^{lam1 - lam_{n-j+1} + 1} l^{n-j};q)_{lam_{n-j+1}-lam_{n-j}}
};

QintData qint_data(const Weight& w, double q, double g) {
  macdonald::check_weight(w);
  QintData d;
  d.n = w.n();
  d.lam1 = w[0];
  d.N = w[d.n - 1] - w[0];
  d.ell = std::pow(q, -g);
  d.pre_const = 1;
  for (int j = 1; j < d.n; ++j) {
    int hi = w[d.n - j], lo = w[d.n - j - 1];  // lambda_{n-j+1}, lambda_{n-j}
    d.xs.push_back(q * std::pow(d.ell, d.n - j) * std::pow(q, d.lam1 - lo));
    d.betas.push_back(lo - hi);
    d.pre_const *= qpoch(std::pow(q, d.lam1 - hi + 1) * std::pow(d.ell, d.n - j), q, hi - lo).real();
  }
  return d;
}

// prod_j 1/(t x_j;q)_{beta_j}
double inv_denominators(const QintData& d, double q, double t) {
  double v = 1;
  for (size_t j = 0; j < d.xs.size(); ++j) v /= qpoch_int(t * d.xs[j], q, d.betas[j]).real();
  return v;
}

// Polynomial helpers, ascending coefficients.
using Poly = std::vector<double>;

Poly pmul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// (c y;q)_k as a polynomial in y.
Poly qpoch_poly(double c, double q, int k) {
  Poly p{1.0};
  for (int i = 0; i < k; ++i, c *= q) p = pmul(p, {1.0, -c});
  return p;
}

double peval(const Poly& p, double y) {
  double v = 0;
  for (size_t i = p.size(); i-- > 0;) v = v * y + p[i];
  return v;
}

}  // namespace

double sep_poly_qint(const Weight& w, double q, double g, double x) {
  require_q(q);
  if (!(g > 0)) throw std::domain_error("sep_poly_qint: need g > 0");
  if (!(x > 0)) throw std::domain_error("sep_poly_qint: need x > 0");
  QintData d = qint_data(w, q, g);
  double y = std::pow(q, x);
  double ng = d.n * g;
  double lead = std::pow(y, d.lam1) / d.pre_const;
  double top = q * std::pow(d.ell, d.n) * std::pow(q, -d.N);  // q l^n q^{lambda_1n}
  if (std::abs(ng - std::round(ng)) > 1e-12) {
    double b = -d.N + 1 - ng;
    double beta = qkit::qbeta_num(x, b, q);
    if (beta == 0 || !std::isfinite(beta)) throw std::domain_error("sep_poly_qint: q-Beta pole");
    double integral = qkit::qint_num(
        [&](double t) {
          return std::pow(t, x - 1) * (qpoch_inf(t * q, q) / qpoch_inf(t * std::pow(q, b), q)).real() *
                 inv_denominators(d, q, t);
        },
        q);
    return lead * qpoch(top * y, q, d.N).real() * integral / beta;
  }
  // b = -m: S = lead (top y;q)_N P(y) / (y q^{-m};q)_m with the terminating
  // P(y) = sum_k (q^{-m};q)_k/(q;q)_k y^k prod_j 1/(q^k x_j;q)_{beta_j}.
  int m = d.N - 1 + static_cast<int>(std::lround(ng));
  Poly P(m + 1, 0.0);
  double qm = std::pow(q, -m);
  for (int k = 0; k <= m; ++k)
    P[k] = (qpoch(qm, q, k) / qpoch(q, q, k)).real() * inv_denominators(d, q, std::pow(q, k));
  Poly num = pmul(qpoch_poly(top, q, d.N), P);
  Poly den = qpoch_poly(qm, q, m);
  // Exact division num / den.
  Poly quo(num.size() >= den.size() ? num.size() - den.size() + 1 : 1, 0.0);
  Poly rem = num;
  double scale = 0;
  for (double c : num) scale = std::max(scale, std::abs(c));
  for (size_t i = num.size(); i-- >= den.size();) {
    double c = rem[i] / den.back();
    quo[i - (den.size() - 1)] = c;
    for (size_t j = 0; j < den.size(); ++j) rem[i - (den.size() - 1) + j] -= c * den[j];
    if (i == den.size() - 1) break;
  }
  for (size_t i = 0; i + 1 < den.size(); ++i)
    if (std::abs(rem[i]) > 1e-9 * scale) throw std::domain_error("sep_poly_qint: non-polynomial quotient");
  return lead * peval(quo, y);
}

double sep_poly_exact(const Weight& w, double q, double g, double x) {
  double ell = std::pow(q, -g);
  auto s = sov::sep_poly(w);
  Point pt{{sym::q, q}, {sym::l, ell}, {sym::L, std::sqrt(ell)}};
  return s.poly().eval(pt, {std::pow(q, x)}).real();
}

double qint_sep_poly_check(const Weight& w, double q, double g, const std::vector<double>& xs) {
  double worst = 0;
  for (double x : xs) {
    double want = sep_poly_exact(w, q, g, x), got = sep_poly_qint(w, q, g, x);
    worst = std::max(worst, std::abs(got - want) / std::abs(want));
  }
  return worst;
}

}  // namespace qsep::numeric
