#include "qsep/qkit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qsep/symbols.hpp"

namespace qsep::qkit {

namespace {
const RatFunc& Q() {
  static const RatFunc q = RatFunc::var(sym::q);
  return q;
}
}  // namespace

RatFunc qpoch(const RatFunc& a, int k) {
  if (k < 0) throw std::invalid_argument("qpoch: negative length");
  RatFunc r(1), x = a;
  for (int i = 0; i < k; ++i) {
    r *= RatFunc(1) - x;
    x *= Q();
  }
  return r;
}

RatFunc qpoch(const std::vector<RatFunc>& as, int k) {
  RatFunc r(1);
  for (auto& a : as) r *= qpoch(a, k);
  return r;
}

RatFunc qbinom(int n, int k) {
  if (k < 0 || k > n) return RatFunc();
  RatFunc q(Q());
  return qpoch(q, n) / (qpoch(q, k) * qpoch(q, n - k));
}

RatFunc bhs_terminating(const std::vector<RatFunc>& tops, const std::vector<RatFunc>& bottoms,
                        const RatFunc& arg, int num_terms) {
  // Accumulate term ratios so each step costs one product of factors.
  RatFunc sum(1), term(1);
  std::vector<RatFunc> t = tops, b = bottoms;
  RatFunc qk(1);  // q^k
  for (int k = 0; k < num_terms; ++k) {
    RatFunc num(1), den(RatFunc(1) - qk * Q());
    for (auto& x : t) num *= RatFunc(1) - x;
    for (auto& x : b) {
      RatFunc f = RatFunc(1) - x;
      if (f.is_zero()) throw std::domain_error("bhs_terminating: bottom Pochhammer vanishes at k=" + std::to_string(k + 1));
      den *= f;
    }
    if (num.is_zero()) break;
    term *= num / den * arg;
    sum += term;
    for (auto& x : t) x *= Q();
    for (auto& x : b) x *= Q();
    qk *= Q();
  }
  return sum;
}

RatFunc qlauricella_terminating(const RatFunc& a, const std::vector<RatFunc>& bs, const RatFunc& c,
                                const std::vector<RatFunc>& xs, const std::vector<int>& bounds) {
  size_t m = bs.size();
  if (xs.size() != m || bounds.size() != m) throw std::invalid_argument("qlauricella: arity");
  std::vector<std::vector<RatFunc>> single(m);
  int total = 0;
  for (size_t j = 0; j < m; ++j) {
    total += bounds[j];
    RatFunc t(1);
    single[j].push_back(t);
    for (int k = 1; k <= bounds[j]; ++k) {
      t *= (RatFunc(1) - bs[j] * Q().pow(k - 1)) / (RatFunc(1) - Q().pow(k)) * xs[j];
      single[j].push_back(t);
    }
  }
  std::vector<RatFunc> ratio(total + 1);
  ratio[0] = 1;
  for (int K = 1; K <= total; ++K) {
    RatFunc cf = RatFunc(1) - c * Q().pow(K - 1);
    if (cf.is_zero()) throw std::domain_error("qlauricella: (c;q) Pochhammer vanishes");
    ratio[K] = ratio[K - 1] * (RatFunc(1) - a * Q().pow(K - 1)) / cf;
  }
  RatFunc sum;
  std::vector<int> k(m, 0);
  for (;;) {
    int K = 0;
    RatFunc t(1);
    for (size_t j = 0; j < m; ++j) {
      K += k[j];
      t *= single[j][k[j]];
    }
    sum += ratio[K] * t;
    size_t j = 0;
    while (j < m && ++k[j] > bounds[j]) k[j++] = 0;
    if (j == m) break;
  }
  return sum;
}

// ---- Series ----

bool Series::is_zero() const {
  for (auto& x : c_)
    if (!x.is_zero()) return false;
  return true;
}

Series Series::operator+(const Series& o) const {
  Series r(std::min(order(), o.order()));
  for (int i = 0; i <= r.order(); ++i) r.c_[i] = c_[i] + o.c_[i];
  return r;
}

Series Series::operator-(const Series& o) const {
  Series r(std::min(order(), o.order()));
  for (int i = 0; i <= r.order(); ++i) r.c_[i] = c_[i] - o.c_[i];
  return r;
}

Series Series::operator*(const Series& o) const {
  Series r(std::min(order(), o.order()));
  for (int i = 0; i <= r.order(); ++i) {
    if (c_[i].is_zero()) continue;
    for (int j = 0; i + j <= r.order(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
  }
  return r;
}

Series Series::scaled(const RatFunc& k) const {
  Series r = *this;
  for (auto& x : r.c_) x *= k;
  return r;
}

Series Series::shifted_up(int m) const {
  Series r(order());
  for (int i = 0; i + m <= order(); ++i) r.c_[i + m] = c_[i];
  return r;
}

Series Series::argument_scaled(const RatFunc& k) const {
  Series r = *this;
  RatFunc p(1);
  for (auto& x : r.c_) {
    x *= p;
    p *= k;
  }
  return r;
}

Series Series::inverse() const {
  if (c_[0].is_zero()) throw std::domain_error("Series::inverse: zero constant term");
  Series r(order());
  RatFunc inv0 = c_[0].inverse();
  r.c_[0] = inv0;
  for (int n = 1; n <= order(); ++n) {
    RatFunc s;
    for (int i = 1; i <= n; ++i) s += c_[i] * r.c_[n - i];
    r.c_[n] = -(s * inv0);
  }
  return r;
}

Series qpoch_inf_series(const RatFunc& x, int order) {
  // (xz;q)_inf = sum_k (-1)^k q^{k(k-1)/2} (xz)^k / (q;q)_k
  Series s(order);
  for (int k = 0; k <= order; ++k) {
    RatFunc c = Q().pow(k * (k - 1) / 2) * x.pow(k) / qpoch(Q(), k);
    s[k] = k % 2 ? -c : c;
  }
  return s;
}

Series qpoch_inf_inverse_series(const RatFunc& x, int order) {
  return qpoch_inf_series(x, order).inverse();
}

Series bhs_series(const std::vector<RatFunc>& tops, const std::vector<RatFunc>& bottoms, int order) {
  Series s(order);
  for (int k = 0; k <= order; ++k) s[k] = qpoch(tops, k) / (qpoch(Q(), k) * qpoch(bottoms, k));
  return s;
}

namespace {

// Coefficients of prod_k (1 - c_k Y) as a polynomial in Y.
std::vector<RatFunc> expand_linear_factors(const std::vector<RatFunc>& cs) {
  std::vector<RatFunc> p{RatFunc(1)};
  for (auto& c : cs) {
    std::vector<RatFunc> n(p.size() + 1);
    for (size_t i = 0; i < p.size(); ++i) {
      n[i] += p[i];
      n[i + 1] -= c * p[i];
    }
    p = std::move(n);
  }
  return p;
}

Series apply_Y_poly(const std::vector<RatFunc>& poly, const Series& f) {
  Series r(f.order());
  for (size_t j = 0; j < poly.size(); ++j)
    if (!poly[j].is_zero()) r = r + f.argument_scaled(Q().pow(static_cast<int>(j))).scaled(poly[j]);
  return r;
}

}  // namespace

Series hg_diffeq_residual(const std::vector<RatFunc>& tops, const std::vector<RatFunc>& bottoms, int N) {
  Series f = bhs_series(tops, bottoms, N);
  std::vector<RatFunc> bq;
  for (auto& b : bottoms) bq.push_back(b / Q());
  bq.push_back(RatFunc(1));  // b_n = q
  Series res = apply_Y_poly(expand_linear_factors(tops), f).shifted_up(1) -
               apply_Y_poly(expand_linear_factors(bq), f);
  Series out(std::max(N - 1, 0));
  for (int i = 0; i <= out.order() && i <= res.order(); ++i) out[i] = res[i];
  return out;
}

SeriesPair andrews_sides(const RatFunc& gamma, const std::vector<int>& nus, const std::vector<RatFunc>& xs,
                         int order) {
  size_t m = nus.size();
  // LHS: finite sum over k_j, each term a rational function of a'.
  Series lhs(order);
  int total = 0;
  for (int v : nus) total += v;
  std::vector<Series> ratio;  // (a';q)_K / (gamma a';q)_K as series in a'
  for (int K = 0; K <= total; ++K) {
    Series num(order, RatFunc(1)), den(order, RatFunc(1));
    for (int i = 0; i < K; ++i) {
      Series f(order, RatFunc(1)), g(order, RatFunc(1));
      f[1] = -Q().pow(i);
      g[1] = -gamma * Q().pow(i);
      num = num * f;
      den = den * g;
    }
    ratio.push_back(num * den.inverse());
  }
  std::vector<int> k(m, 0);
  for (;;) {
    int K = 0;
    RatFunc t(1);
    for (size_t j = 0; j < m; ++j) {
      K += k[j];
      t *= qpoch(Q().pow(-nus[j]), k[j]) * xs[j].pow(k[j]) / qpoch(Q(), k[j]);
    }
    lhs = lhs + ratio[K].scaled(t);
    size_t j = 0;
    while (j < m && ++k[j] > nus[j]) k[j++] = 0;
    if (j == m) break;
  }
  // RHS: (a';q)_inf/(gamma a';q)_inf * prod (q^{-nu}x;q)_nu * nphi(n-1)[gamma, x; q^{-nu}x; q, a'].
  Series pref = qpoch_inf_series(RatFunc(1), order) * qpoch_inf_inverse_series(gamma, order);
  RatFunc fin(1);
  std::vector<RatFunc> tops{gamma}, bottoms;
  for (size_t j = 0; j < m; ++j) {
    RatFunc bx = Q().pow(-nus[j]) * xs[j];
    fin *= qpoch(bx, nus[j]);
    tops.push_back(xs[j]);
    bottoms.push_back(bx);
  }
  Series rhs = (pref * bhs_series(tops, bottoms, order)).scaled(fin);
  return {lhs, rhs};
}

SeriesPair pq_lemma_sides(const RatFunc& a, int nu, int N, int order) {
  Series lhs(order);
  for (int k = 0; k <= order; ++k) {
    RatFunc p = qpoch(Q().pow(k - nu + 1), nu);
    lhs[k] = qpoch(a, k) / qpoch(Q(), k) * p;
  }
  // Q_N(z) = (a;q)_nu z^nu (a q^nu z;q)_{N-nu}
  Series qn(order, RatFunc(1));
  for (int i = 0; i < N - nu; ++i) {
    Series f(order, RatFunc(1));
    f[1] = -a * Q().pow(nu + i);
    qn = qn * f;
  }
  qn = qn.shifted_up(nu).scaled(qpoch(a, nu));
  Series rhs = qn * qpoch_inf_series(a * Q().pow(N), order) * qpoch_inf_inverse_series(RatFunc(1), order);
  return {lhs, rhs};
}

// ---- numeric ----

std::complex<double> qpoch_inf_num(std::complex<double> a, double q) {
  if (!(q > 0 && q < 1)) throw std::domain_error("qpoch_inf_num: need 0<q<1");
  std::complex<double> p = 1;
  double mag = std::abs(a);
  for (int k = 0; k < 100000; ++k) {
    if (mag < 1e-17) return p;
    p *= 1.0 - a;
    a *= q;
    mag *= q;
  }
  throw std::domain_error("qpoch_inf_num: no convergence");
}

double qgamma_num(double z, double q) {
  double num = qpoch_inf_num(q, q).real();
  double den = qpoch_inf_num(std::pow(q, z), q).real();
  if (den == 0) throw std::domain_error("qgamma_num: pole");
  return num / den * std::pow(1 - q, 1 - z);
}

double qbeta_num(double a, double b, double q) {
  double num = (qpoch_inf_num(q, q) * qpoch_inf_num(std::pow(q, a + b), q)).real();
  double den = (qpoch_inf_num(std::pow(q, a), q) * qpoch_inf_num(std::pow(q, b), q)).real();
  if (den == 0) throw std::domain_error("qbeta_num: pole");
  return (1 - q) * num / den;
}

double qint_num(const std::function<double(double)>& f, double q, double tol) {
  if (!(q > 0 && q < 1)) throw std::domain_error("qint_num: need 0<q<1");
  double sum = 0, qk = 1;
  int small = 0;
  for (int k = 0; k < 200000; ++k) {
    double t = f(qk) * qk;
    sum += t;
    small = std::abs(t) < tol ? small + 1 : 0;
    if (small >= 3) return (1 - q) * sum;
    qk *= q;
  }
  throw std::domain_error("qint_num: no convergence");
}

namespace {

double li2_series(double z) {
  double s = 0, p = z;
  for (int k = 1; k < 200; ++k) {
    double t = p / (static_cast<double>(k) * k);
    s += t;
    if (std::abs(t) < 1e-18) break;
    p *= z;
  }
  return s;
}

}  // namespace

double dilog_num(double z) {
  constexpr double pi2_6 = std::numbers::pi * std::numbers::pi / 6;
  if (z > 1) throw std::domain_error("dilog_num: z > 1");
  if (z == 1) return pi2_6;
  if (std::abs(z) <= 0.5) return li2_series(z);
  if (z > 0.5) return pi2_6 - std::log(z) * std::log1p(-z) - li2_series(1 - z);
  if (z >= -1) {
    // Landen: maps [-1,-0.5) into (1/3, 1/2].
    double w = z / (z - 1);
    return -li2_series(w) - 0.5 * std::pow(std::log1p(-z), 2);
  }
  // Inversion for z < -1.
  double l = std::log(-z);
  return -pi2_6 - 0.5 * l * l - dilog_num(1 / z);
}

double asympt_dilog_deviation(double x, double hbar) {
  if (!(x > 0 && x < 1) || !(hbar > 0)) throw std::domain_error("asympt_dilog_deviation: need x in (0,1), hbar > 0");
  double q = std::exp(-hbar);
  double s = 0, a = x;
  while (a > 1e-18) {
    s += std::log1p(-a);
    a *= q;
  }
  return std::abs(s + dilog_num(x) / hbar - 0.5 * std::log1p(-x));
}

}  // namespace qsep::qkit
