#include "qsep/sov.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include "qsep/qkit.hpp"

namespace qsep::sov {

namespace {

using qkit::qpoch;

RatFunc qv() { return RatFunc::var(sym::q); }
RatFunc qp(int k) { return RatFunc::q_pow(k); }
RatFunc lv(int k = 1) { return RatFunc::var(sym::l, k); }
RatFunc sv(const char* name, int k = 1) { return RatFunc::var(name, k); }

mpz_class binom(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Slots of (pair a, pair b, other) in the plain variables of each side.
struct Side {
  const std::vector<std::string>& plain;
  const std::vector<std::string>& coords;
  int a, b, c;
};
Side side(bool y) {
  if (y) return {y_vars(), y_coords(), 1, 2, 0};
  return {t_vars(), t_coords(), 0, 1, 2};
}

void require_weight3(const Weight& w, const char* what) {
  macdonald::check_weight(w);
  if (w.n() != 3) throw std::invalid_argument(std::string(what) + ": only n = 3 is supported");
}

// 1 - a*y as a Laurent polynomial in y.
LaurentPoly one_minus(const RatFunc& a) {
  LaurentPoly p({"y"}, RatFunc(1));
  p.add_term({1}, -a);
  return p;
}

// (a y; q)_k as a Laurent polynomial in y.
LaurentPoly qpoch_y(const RatFunc& a, int k) {
  LaurentPoly p({"y"}, RatFunc(1));
  for (int i = 0; i < k; ++i) p = p * one_minus(a * qp(i));
  return p;
}

}  // namespace

const std::vector<std::string>& t_vars() {
  static const std::vector<std::string> v{"t1", "t2", "t3"};
  return v;
}
const std::vector<std::string>& y_vars() {
  static const std::vector<std::string> v{"x", "y1", "y2"};
  return v;
}
const std::vector<std::string>& t_coords() {
  static const std::vector<std::string> v{"e1", "e2", "t3"};
  return v;
}
const std::vector<std::string>& y_coords() {
  static const std::vector<std::string> v{"E1", "E2", "x"};
  return v;
}

LaurentPoly to_sym_coords(const LaurentPoly& f, bool y_side) {
  Side sd = side(y_side);
  LaurentPoly g = f.aligned(sd.plain);
  std::vector<int> swap{0, 1, 2};
  std::swap(swap[sd.a], swap[sd.b]);
  if (g.permuted(swap) != g) throw std::domain_error("to_sym_coords: input is not symmetric in the paired variables");

  std::map<LExps, RatFunc> rest(g.terms().begin(), g.terms().end());
  LaurentPoly out(sd.coords);
  while (!rest.empty()) {
    // Peel the term with the largest exponent gap a - b.
    auto best = rest.begin();
    for (auto it = rest.begin(); it != rest.end(); ++it) {
      int d = it->first[sd.a] - it->first[sd.b];
      if (d > best->first[sd.a] - best->first[sd.b]) best = it;
    }
    LExps e = best->first;
    RatFunc c = best->second;
    int d = e[sd.a] - e[sd.b], k = e[sd.b], m = e[sd.c];
    out.add_term({d, k, m}, c);
    for (int i = 0; i <= d; ++i) {
      LExps x(3, 0);
      x[sd.a] = i + k;
      x[sd.b] = d - i + k;
      x[sd.c] = m;
      RatFunc v = c * RatFunc(binom(d, i));
      auto [it, fresh] = rest.try_emplace(x, -v);
      if (!fresh) {
        it->second -= v;
        if (it->second.is_zero()) rest.erase(it);
      }
    }
  }
  return out;
}

LaurentPoly from_sym_coords(const LaurentPoly& g, bool y_side) {
  Side sd = side(y_side);
  LaurentPoly h = g.aligned(sd.coords);
  LaurentPoly out(sd.plain);
  for (auto& [e, c] : h.terms()) {
    int d = e[0], k = e[1], m = e[2];
    if (d < 0) throw std::domain_error("from_sym_coords: negative power of the first elementary symmetric function");
    for (int i = 0; i <= d; ++i) {
      LExps x(3, 0);
      x[sd.a] = i + k;
      x[sd.b] = d - i + k;
      x[sd.c] = m;
      out.add_term(x, c * RatFunc(binom(d, i)));
    }
  }
  return out;
}

std::string to_string(const PIndex& i) {
  return "(" + std::to_string(i.j) + "," + std::to_string(i.k) + "," + std::to_string(i.nu) + ")";
}

LaurentPoly p_basis_poly(const PIndex& i) {
  if (i.nu < 0) throw std::invalid_argument("p_basis_poly: negative nu");
  LaurentPoly p = LaurentPoly::monomial(t_coords(), {0, i.k, i.j - 2 * i.k});
  for (int r = 0; r < i.nu; ++r) {
    LaurentPoly f(t_coords(), RatFunc(1));
    f.add_term({1, 0, -1}, -lv(-1) * qp(r));
    f.add_term({0, 1, -2}, lv(-2) * qp(2 * r));
    p = p * f;
  }
  return p;
}

LaurentPoly ptilde_basis_poly(const PIndex& i) {
  if (i.nu < 0) throw std::invalid_argument("ptilde_basis_poly: negative nu");
  LaurentPoly p = LaurentPoly::monomial(y_coords(), {0, i.k, i.j});
  for (int r = 0; r < i.nu; ++r) {
    LaurentPoly f(y_coords(), RatFunc(1));
    f.add_term({1, 0, 0}, -qp(r));
    f.add_term({0, 1, 0}, qp(2 * r));
    p = p * f;
  }
  return p;
}

PExpansion expand_in_p_basis(const LaurentPoly& coords, bool y_side) {
  Side sd = side(y_side);
  LaurentPoly f = coords.aligned(sd.coords);
  if (!f.is_zero() && f.min_degree(0) < 0)
    throw std::domain_error("expand_in_p_basis: negative power of the first elementary symmetric function");
  PExpansion out;
  while (!f.is_zero()) {
    int nu = f.degree(0);
    RatFunc lead = (nu % 2 ? RatFunc(-1) : RatFunc(1)) * qp(nu * (nu - 1) / 2);
    if (!y_side) lead *= lv(-nu);
    LaurentPoly sub(sd.coords);
    for (auto& [e, a] : f.terms()) {
      if (e[0] != nu) continue;
      int k = e[1], m = e[2];
      PIndex idx{y_side ? m : m + 2 * k + nu, k, nu};
      RatFunc c = a / lead;
      out.emplace(idx, c);
      sub += c * (y_side ? ptilde_basis_poly(idx) : p_basis_poly(idx));
    }
    f -= sub;
    if (!f.is_zero() && f.degree(0) >= nu) throw std::logic_error("expand_in_p_basis: degree did not drop");
  }
  return out;
}

LaurentPoly assemble_p(const PExpansion& e, bool y_side) {
  LaurentPoly out(side(y_side).coords);
  for (auto& [i, c] : e) out += c * (y_side ? ptilde_basis_poly(i) : p_basis_poly(i));
  return out;
}

RatFunc m_factor(const PIndex& i) { return lv(3 * i.k) * qpoch(lv(-2), i.nu) / qpoch(lv(-3), i.nu); }
RatFunc minv_factor(const PIndex& i) { return m_factor(i).inverse(); }

LaurentPoly apply_M(const LaurentPoly& f) {
  PExpansion e = expand_in_p_basis(to_sym_coords(f, false), false);
  for (auto& [i, c] : e) c *= m_factor(i);
  return from_sym_coords(assemble_p(e, true), true);
}

LaurentPoly apply_Minv(const LaurentPoly& g) {
  PExpansion e = expand_in_p_basis(to_sym_coords(g, true), true);
  for (auto& [i, c] : e) c *= minv_factor(i);
  return from_sym_coords(assemble_p(e, false), false);
}

const LaurentPoly& MCache::image(const Weight& mu) {
  auto it = images_.find(mu);
  if (it == images_.end()) it = images_.emplace(mu, apply_M(macdonald::monomial_sym(mu))).first;
  return it->second;
}

LaurentPoly MCache::apply(const macdonald::MExpansion& e) {
  LaurentPoly out(y_vars());
  for (auto& [mu, c] : e) out += c * image(mu);
  return out;
}

// ---- separated polynomials ----

RatFunc c_lambda(const Weight& lambda) {
  require_weight3(lambda, "c_lambda");
  int l31 = lambda[2] - lambda[0], l32 = lambda[2] - lambda[1], l21 = lambda[1] - lambda[0];
  return lv(4 * lambda[0] - lambda[1]) * qpoch(lv(-2), l31) * qpoch(lv(-2), l32) * qpoch(lv(-1), l21) /
         (qpoch(lv(-3), l31) * qpoch(lv(-1), l32) * qpoch(lv(-2), l21));
}

LaurentPoly SepPoly::poly_in(const std::string& var) const {
  LaurentPoly p({var});
  for (auto& [k, c] : chi) p.add_term({k}, c);
  return p;
}
LaurentPoly SepPoly::poly() const { return poly_in("y"); }

namespace {

// a_j, j = 1..n, and b_j, j = 1..n-1.
struct HgParams {
  std::vector<RatFunc> a, b;
};
HgParams hg_params(const Weight& w) {
  int n = w.n();
  Ell e = Ell::for_rank(n);
  HgParams p;
  for (int j = 1; j <= n; ++j) p.a.push_back(e.ell(n - j + 1) * qp(w[0] - w[n - j] + 1));
  for (int j = 1; j < n; ++j) p.b.push_back(p.a[j - 1] / e.ell(1));
  return p;
}

qkit::Series series_product(const Weight& w, int order) {
  int n = w.n();
  Ell e = Ell::for_rank(n);
  HgParams p = hg_params(w);
  qkit::Series prefactor =
      qkit::qpoch_inf_series(RatFunc(1), order) * qkit::qpoch_inf_inverse_series(qv() * e.ell(n), order);
  return prefactor * qkit::bhs_series(p.a, p.b, order);
}

}  // namespace

SepPoly sep_poly(const Weight& lambda) {
  macdonald::check_weight(lambda);
  int n = lambda.n();
  Ell e = Ell::for_rank(n);
  HgParams p = hg_params(lambda);
  int N = lambda[n - 1] - lambda[0];
  SepPoly s{lambda, {}};
  for (int K = 0; K <= N; ++K) {
    std::vector<RatFunc> tops{qp(-K)}, bottoms{qp(2 - K) * e.ell(n)};
    tops.insert(tops.end(), p.a.begin(), p.a.end());
    bottoms.insert(bottoms.end(), p.b.begin(), p.b.end());
    RatFunc chi = (qv() * e.ell(n)).pow(K) * qpoch(qp(-1) * e.ell(-n), K) / qpoch(qv(), K) *
                  qkit::bhs_terminating(tops, bottoms, qv(), K);
    if (!chi.is_zero()) s.chi.emplace(lambda[0] + K, chi);
  }
  return s;
}

RatFunc series_tail_coefficient(const Weight& lambda, int extra) {
  macdonald::check_weight(lambda);
  int N = lambda[lambda.n() - 1] - lambda[0];
  return series_product(lambda, N + extra)[N + extra];
}

SepPoly sep_poly_via_series(const Weight& lambda) {
  macdonald::check_weight(lambda);
  int N = lambda[lambda.n() - 1] - lambda[0];
  qkit::Series s = series_product(lambda, N + 2);
  for (int i = N + 1; i <= N + 2; ++i)
    if (!s[i].is_zero()) throw std::logic_error("sep_poly_via_series: series does not terminate at order " + std::to_string(N));
  SepPoly out{lambda, {}};
  for (int i = 0; i <= N; ++i)
    if (!s[i].is_zero()) out.chi.emplace(lambda[0] + i, s[i]);
  if (out.chi != sep_poly(lambda).chi) throw std::logic_error("sep_poly_via_series: disagrees with the closed form for " + lambda.str());
  return out;
}

RatFunc chi_endpoint(const Weight& lambda) {
  macdonald::check_weight(lambda);
  int n = lambda.n();
  Ell e = Ell::for_rank(n);
  auto lam = [&](int j) { return lambda[j - 1]; };
  RatFunc r = e.ell(lambda.total() - n * lam(1));
  for (int j = 1; j < n; ++j) {
    RatFunc a = e.ell(-j);
    r *= qpoch(a, lam(j) - lam(1)) * qpoch(a, lam(n) - lam(n - j)) /
         (qpoch(a, lam(j + 1) - lam(1)) * qpoch(a, lam(n) - lam(n - j + 1)));
  }
  return r;
}

RatFunc sep_value_at_ell_minus_n(const Weight& lambda) {
  macdonald::check_weight(lambda);
  int n = lambda.n();
  Ell e = Ell::for_rank(n);
  auto lam = [&](int j) { return lambda[j - 1]; };
  RatFunc r = e.ell(-n * lam(1)) * qpoch(e.ell(-n), lam(n) - lam(1));
  for (int j = 1; j < n; ++j) r *= qpoch(e.ell(-j), lam(j) - lam(1)) / qpoch(e.ell(-j), lam(j + 1) - lam(1));
  return r;
}

RatFunc evaluate(const SepPoly& s, const RatFunc& y) {
  RatFunc r;
  for (auto& [k, c] : s.chi) r += c * y.pow(k);
  return r;
}

namespace {

// prod_{j=1}^{n-1} (q^{l1 - l_{n-j+1} + 1} l^{n-j}; q)_{l_{n-j+1} - l_{n-j}}
RatFunc lauricella_normaliser(const Weight& w) {
  int n = w.n();
  Ell e = Ell::for_rank(n);
  auto lam = [&](int j) { return w[j - 1]; };
  RatFunc d = 1;
  for (int j = 1; j < n; ++j) d *= qpoch(qp(lam(1) - lam(n - j + 1) + 1) * e.ell(n - j), lam(n - j + 1) - lam(n - j));
  return d;
}

LaurentPoly as_laurent_y(const RatFunc& f) { return LaurentPoly::from_ratfunc(f, {"y"}); }

}  // namespace

LaurentPoly sep_poly_lauricella(const Weight& lambda) {
  macdonald::check_weight(lambda);
  int n = lambda.n();
  Ell e = Ell::for_rank(n);
  auto lam = [&](int j) { return lambda[j - 1]; };
  RatFunc y = sv("y");
  RatFunc c = qv() * e.ell(n) * qp(lam(1) - lam(n)) * y;
  std::vector<RatFunc> bs, xs;
  std::vector<int> bounds;
  for (int j = 1; j < n; ++j) {
    bs.push_back(qp(lam(n - j) - lam(n - j + 1)));
    xs.push_back(qv() * e.ell(n - j) * qp(lam(1) - lam(n - j)));
    bounds.push_back(lam(n - j + 1) - lam(n - j));
  }
  RatFunc phi = qkit::qlauricella_terminating(y, bs, c, xs, bounds);
  return as_laurent_y(y.pow(lam(1)) * qpoch(c, lam(n) - lam(1)) / lauricella_normaliser(lambda) * phi);
}

LaurentPoly sep_poly_double_sum(const Weight& lambda) {
  macdonald::check_weight(lambda);
  int n = lambda.n();
  Ell e = Ell::for_rank(n);
  auto lam = [&](int j) { return lambda[j - 1]; };
  RatFunc y = sv("y");
  int N = lam(n) - lam(1);
  std::vector<int> bound(n - 1), k(n - 1, 0);
  for (int j = 1; j < n; ++j) bound[j - 1] = lam(n - j + 1) - lam(n - j);
  RatFunc sum;
  while (true) {
    int K = 0;
    RatFunc t = 1;
    for (int j = 1; j < n; ++j) {
      int kj = k[j - 1];
      K += kj;
      t *= qpoch(qp(lam(n - j) - lam(n - j + 1)), kj) * (qv() * e.ell(n - j) * qp(lam(1) - lam(n - j))).pow(kj) /
           qpoch(qv(), kj);
    }
    t *= qpoch(qv() * e.ell(n) * qp(lam(1) - lam(n) + K) * y, N - K) * qpoch(y, K);
    sum += t;
    size_t i = 0;
    while (i < k.size() && k[i] == bound[i]) k[i++] = 0;
    if (i == k.size()) break;
    ++k[i];
  }
  return as_laurent_y(y.pow(lam(1)) / lauricella_normaliser(lambda) * sum);
}

LaurentPoly sep_poly_lauricella2(const Weight& lambda, int m) {
  macdonald::check_weight(lambda);
  if (m < 1) throw std::invalid_argument("sep_poly_lauricella2: m must be positive");
  int n = lambda.n();
  if (n % 2 == 0 && m % 2) throw std::domain_error("sep_poly_lauricella2: even rank needs even m");
  // l = q^m, g = -m.
  Bindings at;
  if (n % 2 == 0)
    at[sym::L] = qp(m / 2);
  else
    at[sym::l] = qp(m);
  HgParams p = hg_params(lambda);
  RatFunc y = sv("y");
  RatFunc pref = y.pow(lambda[0]) * qpoch(qp(1 + m) * y, (n - 1) * m);
  std::vector<RatFunc> xs;
  for (int i = 0; i < n - 1; ++i) {
    RatFunc a = specialize(p.a[i], at);
    // a = q^e; e <= 0 makes (a;q)_inf vanish and the representation singular.
    if (a.den().is_one() ? a.num().degree(sym::q) < 1 : true)
      throw std::domain_error("sep_poly_lauricella2: (a_j;q)_inf vanishes at this specialisation");
    RatFunc d = qpoch(a * qp(-m), m);  // (a;q)_{-m} = 1 / (a q^{-m};q)_m
    if (d.is_zero()) throw std::domain_error("sep_poly_lauricella2: (a;q)_{-m} has a pole");
    pref /= d;
    xs.push_back(a);
  }
  std::vector<RatFunc> bs(n - 1, qp(-m));
  std::vector<int> bounds(n - 1, m);
  RatFunc phi = qkit::qlauricella_terminating(y, bs, qp(1 + m) * y, xs, bounds);
  return as_laurent_y(pref * phi);
}

CheckResult lauricella_forms_check(const Weight& lambda, const std::vector<int>& ms) {
  CheckResult r;
  LaurentPoly s = sep_poly(lambda).poly();
  if (sep_poly_lauricella(lambda) != s) r.fail("Andrews-parameter form differs for " + lambda.str());
  if (sep_poly_double_sum(lambda) != s) r.fail("double-sum form differs for " + lambda.str());
  std::vector<int> range = ms;
  if (range.empty())
    for (int m = 1; m <= lambda[lambda.n() - 1] - lambda[0] + 2; ++m) range.push_back(m);
  int used = 0;
  for (int m : range) {
    if (ms.empty() && used == 2) break;
    Bindings at;
    if (lambda.n() % 2 == 0) {
      if (m % 2) continue;
      at[sym::L] = qp(m / 2);
    } else {
      at[sym::l] = qp(m);
    }
    LaurentPoly lhs, rhs;
    try {
      rhs = s.map_coeffs([&](const RatFunc& c) { return specialize(c, at); });
      lhs = sep_poly_lauricella2(lambda, m);
    } catch (const std::domain_error&) {
      continue;
    }
    ++used;
    if (lhs != rhs) r.fail("second Lauricella form differs for " + lambda.str() + " at l = q^" + std::to_string(m));
  }
  if (!used) r.fail("second Lauricella form: no admissible specialisation for " + lambda.str());
  return r;
}

// ---- separated equation ----

std::vector<RatFunc> eigenvalues(const Weight& lambda) {
  macdonald::check_weight(lambda);
  std::vector<RatFunc> h;
  for (int k = 0; k <= lambda.n(); ++k) h.push_back(macdonald::eigenvalue(k, lambda));
  return h;
}

SepOperator sep_operator(const std::vector<RatFunc>& h, int n, bool simplified) {
  if (n < 2 || static_cast<int>(h.size()) != n + 1) throw std::invalid_argument("sep_operator: need h_0..h_n");
  if (!h[0].is_one()) throw std::invalid_argument("sep_operator: h_0 must be 1");
  Ell e = Ell::for_rank(n);
  SepOperator d{n, h, {}, simplified};
  for (int k = 0; k <= n; ++k) {
    RatFunc c = (k % 2 ? RatFunc(-1) : RatFunc(1)) * e.half_pow((n - 1) * k) * h[n - k];
    LaurentPoly p = qpoch_y(RatFunc(1), k);
    if (!simplified) {
      p = p * one_minus(qp(k) * e.ell(k)) * qpoch_y(qp(k + 1) * e.ell(n), n - k);
    } else if (k < n) {
      p = p * one_minus(qp(k) * e.ell(k)) * qpoch_y(qp(k + 1) * e.ell(n), n - k - 1);
    }
    d.coeffs.push_back(c * p);
  }
  return d;
}

LaurentPoly apply_sep_operator(const SepOperator& d, const LaurentPoly& f) {
  LaurentPoly g = f.aligned({"y"});
  LaurentPoly out({"y"});
  for (int k = 0; k <= d.n; ++k) out += d.coeffs[k] * g.qshift({k});
  return out;
}

RatFunc recurrence_coefficient(const SepOperator& d, int k, int j) {
  RatFunc a;
  for (int i = 0; i <= d.n; ++i) a += d.coeffs[i].coeff({j}) * qp(i * (k - j));
  return a;
}

std::pair<RatFunc, RatFunc> boundary_coefficients(const SepOperator& d) {
  if (d.simplified) throw std::invalid_argument("boundary_coefficients: needs the unsimplified operator");
  RatFunc z = sv("z"), a0, a1;
  int top = d.n + 1;
  for (int i = 0; i <= d.n; ++i) {
    a0 += d.coeffs[i].coeff({0}) * z.pow(i);
    a1 += d.coeffs[i].coeff({top}) * qp(-i * top) * z.pow(i);
  }
  return {a0, a1};
}

namespace {

std::pair<int, int> q_exponent_range(const RatFunc& f) {
  int lo = f.num().min_degree(sym::q) - f.den().degree(sym::q);
  int hi = f.num().degree(sym::q) - f.den().min_degree(sym::q);
  return {lo, hi};
}

std::vector<int> integer_roots(const RatFunc& a, int lo, int hi) {
  int z = symbol_id("z");
  std::vector<int> roots;
  for (int p = lo; p <= hi; ++p)
    if (specialize(a, {{z, qp(p)}}).is_zero()) roots.push_back(p);
  return roots;
}

}  // namespace

Reconstruction reconstruct_sep_by_recursion(const std::vector<RatFunc>& h, int n) {
  SepOperator d = sep_operator(h, n, false);
  auto [a0, a1] = boundary_coefficients(d);
  auto [qlo, qhi] = q_exponent_range(h[1]);
  int lo = qlo - 2 * (n + 1), hi = qhi + 2 * (n + 1);
  auto r0 = integer_roots(a0, lo, hi);
  auto r1 = integer_roots(a1, lo, hi);
  if (r0.size() != 1 || r1.size() != 1)
    throw std::domain_error("reconstruct_sep_by_recursion: boundary coefficients do not single out the support");
  Reconstruction rec;
  rec.k_lo = r0[0];
  rec.k_hi = r1[0] - (n + 1);
  if (rec.k_hi < rec.k_lo) throw std::domain_error("reconstruct_sep_by_recursion: empty support");
  std::map<int, RatFunc> f;
  auto fk = [&](int k) {
    auto it = f.find(k);
    return it == f.end() ? RatFunc() : it->second;
  };
  f[rec.k_lo] = 1;
  for (int p = rec.k_lo + 1; p <= rec.k_hi; ++p) {
    RatFunc s;
    for (int j = 1; j <= n + 1; ++j) s += recurrence_coefficient(d, p, j) * fk(p - j);
    RatFunc v = -s / recurrence_coefficient(d, p, 0);
    if (!v.is_zero()) f[p] = v;
  }
  for (int p = rec.k_hi + 1; p <= rec.k_hi + n + 1; ++p) {
    RatFunc s;
    for (int j = 0; j <= n + 1; ++j) s += recurrence_coefficient(d, p, j) * fk(p - j);
    if (!s.is_zero()) throw std::domain_error("reconstruct_sep_by_recursion: recurrence inconsistent at y^" + std::to_string(p));
  }
  Weight w;
  rec.sep = SepPoly{w, std::move(f)};
  return rec;
}

// ---- main theorem ----

CheckResult verify_factorization(const Weight& lambda, MCache* cache) {
  require_weight3(lambda, "verify_factorization");
  static macdonald::MacdonaldSolver solver(3);
  int s = lambda[0];
  Weight base({0, lambda[1] - s, lambda[2] - s});
  macdonald::MExpansion e;
  for (auto& [mu, c] : solver.solve(base).expansion) e.emplace(Weight({mu[0] + s, mu[1] + s, mu[2] + s}), c);
  MCache local;
  MCache& mc = cache ? *cache : local;
  LaurentPoly lhs = mc.apply(e);
  SepPoly sp = sep_poly(lambda);
  LaurentPoly rhs = c_lambda(lambda) * LaurentPoly::monomial(y_vars(), {lambda.total(), 0, 0}) *
                    sp.poly_in("y1").aligned(y_vars()) * sp.poly_in("y2").aligned(y_vars());
  CheckResult r;
  if (lhs != rhs) {
    std::string diff = (lhs - rhs).str();
    if (diff.size() > 400) diff = diff.substr(0, 400) + "...";
    r.fail("M P_" + lambda.str() + " - c x^|l| S(y1) S(y2) = " + diff);
  }
  return r;
}

namespace {

RatFunc tq(int i) { return RatFunc::var(("t" + std::to_string(i)).c_str()); }

// v_{jk} = l^{-1/2} w(j,k), checked v_{jk} = l^{-1/2} wc(j,k)
RatFunc w_(int j, int k) { return (tq(j) - lv() * tq(k)) / (tq(j) - tq(k)); }
RatFunc wc(int j, int k) { return (tq(j) - qv() * lv() * tq(k)) / (tq(j) - qv() * tq(k)); }

RatFunc alpha_q(int k, const RatFunc& y) {
  RatFunc tk = tq(k), to = tq(3 - k), t3 = tq(3), q = qv(), l = lv();
  return (1 - q * l.pow(3) * y) * (tk - l * t3) * (l * t3 * y - to) * (q * tk - to) /
         (l * (1 - y) * (q * l * tk - t3) * (q * l * l * t3 * y - to) * (tk - to));
}

QShiftOperator mult(const RatFunc& c) {
  QShiftOperator o(t_vars());
  o.add(c, {0, 0, 0});
  return o;
}
QShiftOperator shift(int k) {
  QShiftOperator o(t_vars());
  std::vector<int> m(3, 0);
  m[k - 1] = 1;
  o.add(1, m);
  return o;
}

}  // namespace

AlphaCheck verify_alpha_identities_quantum() {
  AlphaCheck r;
  RatFunc y = sv("y"), q = qv(), l = lv();
  int iy = symbol_id("y"), i1 = symbol_id("t1"), i2 = symbol_id("t2");
  RatFunc a1 = alpha_q(1, y), a2 = alpha_q(2, y);
  RatFunc a12 = specialize(a1, {{iy, q * y}, {i2, q * tq(2)}}) * a2;
  RatFunc a12b = specialize(a2, {{iy, q * y}, {i1, q * tq(1)}}) * a1;
  r.alpha12_consistent = a12 == a12b;
  // Each product of two v's carries l^{-1}.
  RatFunc ia = -(1 - q * y) * (1 - q * q * l * l * y) * l * wc(3, 1) * wc(3, 2) * a12 -
               (1 - q * l.pow(3) * y) * (1 - q * q * l.pow(3) * y) +
               (1 - q * l * y) * (1 - q * q * l.pow(3) * y) * (wc(1, 2) * wc(3, 2) * a2 + wc(2, 1) * wc(3, 1) * a1);
  RatFunc ib = (1 - y) * (1 - q * y) * l.pow(3) * a12 + (1 - l * y) * (1 - q * l.pow(3) * y) * w_(1, 3) * w_(2, 3) -
               (1 - y) * (1 - q * l * l * y) * l * (wc(1, 2) * w_(1, 3) * a2 + wc(2, 1) * w_(2, 3) * a1);
  r.identity_a = ia.is_zero();
  r.identity_b = ib.is_zero();
  bool comm = true;
  for (int j = 1; j <= 3; ++j)
    for (int k = 1; k <= 3; ++k) {
      if (j == k) continue;
      comm = comm && shift(k).compose(mult(w_(j, k))) == mult(wc(j, k)).compose(shift(k));
      comm = comm && mult(w_(j, k)).compose(shift(j)) == shift(j).compose(mult(wc(j, k)));
    }
  r.commutation = comm;
  return r;
}

// ---- q-difference form of M^{-1} ----

namespace {

// xi_k(r, s) of the finite-difference degeneration, with q^{(alpha+beta)/2}
// written as `ab` and order m = -alpha.
RatFunc xi_rs(int m, int k, const RatFunc& ab) {
  RatFunc r = sv("r"), s = sv("s"), q = qv();
  RatFunc s2i = s.pow(-2);
  return (k % 2 ? RatFunc(-1) : RatFunc(1)) * qp(-k * (k - 1) / 2) * qkit::qbinom(m, k) * s2i.pow(k) *
         (1 - qp(m - 2 * k) * s2i) * qpoch({ab * r * s, ab * s / r}, k) * qpoch({ab * r / s, ab / (r * s)}, m - k) /
         (qpoch(ab * ab, m) * qpoch(qp(-k) * s2i, 1 + m));
}

// Parity of a + b over the monomials r^a s^b of p; -1 if mixed.
int rs_parity(const IntPoly& p) {
  int ir = symbol_id("r"), is = symbol_id("s"), par = -2;
  for (auto& t : p.terms()) {
    int a = ir < static_cast<int>(t.e.size()) ? t.e[ir] : 0;
    int b = is < static_cast<int>(t.e.size()) ? t.e[is] : 0;
    int here = ((a + b) % 2 + 2) % 2;
    if (par == -2) par = here;
    if (par != here) return -1;
  }
  return par < 0 ? 0 : par;
}

// r^a s^b -> (t1/t3)^{(a+b)/2} (t2/t3)^{(a-b)/2}, after multiplying by r^shift.
RatFunc reassemble(const IntPoly& p, int shift) {
  int ir = symbol_id("r"), is = symbol_id("s");
  RatFunc out;
  for (auto& t : p.terms()) {
    int a = (ir < static_cast<int>(t.e.size()) ? t.e[ir] : 0) + shift;
    int b = is < static_cast<int>(t.e.size()) ? t.e[is] : 0;
    Exps e = t.e;
    if (ir < static_cast<int>(e.size())) e[ir] = 0;
    if (is < static_cast<int>(e.size())) e[is] = 0;
    trim(e);
    out += RatFunc(IntPoly::monomial(e, t.c)) * tq(1).pow((a + b) / 2) * tq(2).pow((a - b) / 2) * tq(3).pow(-a);
  }
  return out;
}

RatFunc reassemble(const RatFunc& f) {
  int pn = rs_parity(f.num()), pd = rs_parity(f.den());
  if (pn < 0 || pd < 0 || pn != pd)
    throw std::domain_error("minv_difference_operator: xi_k has a half-integer power of the t's");
  return reassemble(f.num(), pn) / reassemble(f.den(), pd);
}

}  // namespace

MinvDifferenceOperator minv_difference_operator(int g) {
  if (g < 1) throw std::invalid_argument("minv_difference_operator: g must be a positive integer");
  MinvDifferenceOperator op;
  op.g = g;
  for (int k = 0; k <= g; ++k) {
    RatFunc x = xi_rs(g, k, qp(g));
    op.xi.push_back(reassemble(x));
  }
  return op;
}

LaurentPoly MinvDifferenceOperator::apply(const LaurentPoly& phi) const {
  LaurentPoly f = phi.aligned(y_vars());
  RatFunc sum;
  for (int k = 0; k <= g; ++k) {
    LaurentPoly shifted(t_vars());
    for (auto& [e, c] : f.terms())
      shifted.add_term({e[1], e[2], e[0] - e[1] - e[2]}, c * qp((g + k) * e[1] + (2 * g - k) * e[2]));
    sum += xi[k] * shifted.to_ratfunc();
  }
  return LaurentPoly::from_ratfunc(sum, t_vars());
}

// ---- two-parameter family ----

namespace {

// Arguments of the eight infinite products in the denominator of the kernel
// K_{alpha beta}(r, s | t); A = q^{alpha/2}, B = q^{beta/2}.
std::vector<RatFunc> kernel_args(const RatFunc& A, const RatFunc& B, const RatFunc& r, const RatFunc& s,
                                 const RatFunc& t) {
  return {A * s * t, A * s / t, A * t / s, A / (s * t), B * r * t, B * r / t, B * t / r, B / (r * t)};
}

RatFunc r_poly(const RatFunc& A, const RatFunc& B, const RatFunc& r, const RatFunc& s, const RatFunc& t, int j1,
               int j2, int k1, int k2) {
  return qpoch({A * s * t, A * s / t}, j1) * qpoch({A * t / s, A / (s * t)}, j2) *
         qpoch({B * r * t, B * r / t}, k1) * qpoch({B * t / r, B / (r * t)}, k2);
}

// Image of R_{j1 j2 k1 k2} under M_{alpha beta}, as a function of s.
RatFunc act_on_r(const RatFunc& A, const RatFunc& B, const RatFunc& r, const RatFunc& s, int j1, int j2, int k1,
                 int k2) {
  RatFunc ab = A * B;
  return qpoch(A * A, j1 + j2) * qpoch(B * B, k1 + k2) / qpoch(ab * ab, j1 + j2 + k1 + k2) *
         qpoch(ab * r * s, j1 + k1) * qpoch(ab * r / s, j2 + k1) * qpoch(ab * s / r, j1 + k2) *
         qpoch(ab / (r * s), j2 + k2);
}

}  // namespace

MabReport mab_identity_checks(int max_nu) {
  MabReport rep;
  RatFunc A = sv("A"), B = sv("B"), r = sv("r"), s = sv("s"), t = sv("t"), w = sv("w");
  RatFunc h = sv("h");  // q^{1/2} for the shifted kernel parameters
  int ih = symbol_id("h");
  auto note = [&](const std::string& m) { rep.detail += m + "\n"; };

  // (i) K R_{j1 j2 k1 k2} = K with shifted parameters: each infinite product
  // argument moves by a nonnegative integer power of q, and the telescoped
  // finite products rebuild R.
  rep.kp = true;
  auto base = kernel_args(A, B, r, s, t);
  for (int j1 = 0; j1 <= 2; ++j1)
    for (int j2 = 0; j2 <= 2; ++j2)
      for (int k1 = 0; k1 <= 2; ++k1)
        for (int k2 = 0; k2 <= 2; ++k2) {
          auto moved = kernel_args(A * h.pow(j1 + j2), B * h.pow(k1 + k2), r * h.pow(k1 - k2), s * h.pow(j1 - j2), t);
          RatFunc tele = 1;
          for (size_t i = 0; i < base.size(); ++i) {
            int m = 0;
            RatFunc ratio = moved[i] / base[i];
            if (!ratio.is_one()) {
              const IntPoly& nm = ratio.num();
              if (!ratio.is_polynomial() || !nm.is_monomial() || nm.lead().c != 1 || nm.vars() != std::vector<int>{ih} ||
                  nm.degree(ih) % 2) {
                rep.kp = false;
                note("KP: argument ratio is not a power of q");
                continue;
              }
              m = nm.degree(ih) / 2;
            }
            tele *= qpoch(base[i], m);
          }
          if (tele != r_poly(A, B, r, s, t, j1, j2, k1, k2)) {
            rep.kp = false;
            note("KP fails at " + std::to_string(j1) + std::to_string(j2) + std::to_string(k1) + std::to_string(k2));
          }
        }

  // (ii) The action on R follows from the action on the p^beta basis.
  rep.pm = true;
  auto pm_image = [&](int nu) { return qpoch(B * B, nu) / qpoch(A * A * B * B, nu) * qpoch({A * B * r * s, A * B * r / s}, nu); };
  for (int nu = 0; nu <= max_nu; ++nu)
    if (act_on_r(A, B, r, s, 0, 0, nu, 0) != pm_image(nu)) {
      rep.pm = false;
      note("p^beta image differs at nu = " + std::to_string(nu));
    }
  for (int j1 = 0; j1 <= 2; ++j1)
    for (int j2 = 0; j2 <= 2 - j1; ++j2)
      for (int k1 = 0; k1 <= 2 - j1 - j2; ++k1)
        for (int k2 = 0; k2 <= 2 - j1 - j2 - k1; ++k2) {
          // Expand R in p_nu^beta(t) by peeling the top power of t.
          LaurentPoly f = LaurentPoly::from_ratfunc(r_poly(A, B, r, s, t, j1, j2, k1, k2), {"t"});
          RatFunc image;
          while (!f.is_zero()) {
            int d = f.degree(0);
            RatFunc lead = (d % 2 ? RatFunc(-1) : RatFunc(1)) * qp(d * (d - 1) / 2) * (B * r).pow(d);
            RatFunc c = f.coeff({d}) / lead;
            f -= c * LaurentPoly::from_ratfunc(qpoch({B * r * t, B * r / t}, d), {"t"});
            image += c * pm_image(d);
          }
          if (image != act_on_r(A, B, r, s, j1, j2, k1, k2)) {
            rep.pm = false;
            note("R action inconsistent with the p^beta action at " + std::to_string(j1) + std::to_string(j2) +
                 std::to_string(k1) + std::to_string(k2));
          }
        }

  // (iii) Finite-difference degeneration for alpha = -1, -2, -3 with
  // symbolic nu (w = q^nu); here B stands for q^{(alpha+beta)/2}.
  rep.xik = true;
  for (int m = 1; m <= 3; ++m) {
    RatFunc lhs;
    for (int k = 0; k <= m; ++k)
      lhs += xi_rs(m, k, B) * qpoch(B * w * r * s, k) * qpoch(B * w * r / s, m - k) /
             (qpoch(B * r * s, k) * qpoch(B * r / s, m - k));
    RatFunc rhs = qpoch(B * B * w, m) / qpoch(B * B, m);
    if (lhs != rhs) {
      rep.xik = false;
      note("xi_k identity fails for alpha = -" + std::to_string(m));
    }
  }

  // (iv) M_{-alpha, alpha+beta} undoes M_{alpha beta} on p_nu: parameters
  // (A, B) -> (1/A, A B), and the image basis label returns to B.
  rep.inversion = (A.inverse() * (A * B) == B);
  for (int nu = 0; nu <= max_nu; ++nu) {
    RatFunc f1 = qpoch(B * B, nu) / qpoch(A * A * B * B, nu);
    RatFunc A2 = A.inverse(), B2 = A * B;
    RatFunc f2 = qpoch(B2 * B2, nu) / qpoch(A2 * A2 * B2 * B2, nu);
    if (!(f1 * f2).is_one()) {
      rep.inversion = false;
      note("inversion fails at nu = " + std::to_string(nu));
    }
  }
  return rep;
}

}  // namespace qsep::sov
