// Multivariate GCD over Z.
//
// Fast path is the heuristic GCD (evaluate the main variable at a large
// integer, recurse, lift back by symmetric xi-adic expansion, verify by trial
// division). When the heuristic gives up we fall back to the recursive
// content / primitive-PRS algorithm over the main variable.

#include <algorithm>
#include <stdexcept>

#include "qsep/int_poly.hpp"

namespace qsep {
namespace {

IntPoly gcd_prim(const IntPoly& a, const IntPoly& b);

mpz_class isqrt(const mpz_class& x) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

IntPoly monomial_gcd(const Exps& a, const Exps& b) {
  Exps m(std::min(a.size(), b.size()));
  for (size_t i = 0; i < m.size(); ++i) m[i] = std::min(a[i], b[i]);
  return IntPoly::monomial(std::move(m), 1);
}

// Symmetric xi-adic lift of h (free of v) into a polynomial in v.
IntPoly interpolate(IntPoly h, const mpz_class& x, int v) {
  std::vector<Term> out;
  mpz_class half = x / 2;
  int i = 0;
  while (!h.is_zero()) {
    std::vector<Term> g;
    for (auto& t : h.terms()) {
      mpz_class c;
      mpz_fdiv_r(c.get_mpz_t(), t.c.get_mpz_t(), x.get_mpz_t());
      if (c > half) c -= x;
      if (c != 0) g.push_back(Term{t.e, c});
    }
    IntPoly gp = IntPoly::from_terms(g);
    for (auto t : gp.terms()) {
      if (i) {
        if (static_cast<int>(t.e.size()) <= v) t.e.resize(v + 1, 0);
        t.e[v] = i;
      }
      out.push_back(std::move(t));
    }
    h = (h - gp).div_int(x);
    ++i;
  }
  return IntPoly::from_terms(std::move(out));
}

IntPoly primitive(const IntPoly& p) {
  mpz_class c = p.content();
  IntPoly r = c == 1 ? p : p.div_int(c);
  return r.normalized_sign();
}

// Content of p viewed as a polynomial in v (a polynomial free of v).
IntPoly content_in(const IntPoly& p, int v) {
  IntPoly g;
  for (auto& c : p.coeffs_in(v)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.normalized_sign() : gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

// Pseudo-remainder of a by b in v.
IntPoly prem(IntPoly a, const IntPoly& b, int v) {
  int db = b.degree(v);
  auto bc = b.coeffs_in(v);
  IntPoly lb = bc.back();
  while (!a.is_zero() && a.degree(v) >= db) {
    int da = a.degree(v);
    IntPoly la = a.coeffs_in(v).back();
    Exps e(v + 1, 0);
    e[v] = da - db;
    a = lb * a - (la * b).mul_term(e, 1);
  }
  return a;
}

IntPoly gcd_prs(const IntPoly& a, const IntPoly& b, int v) {
  IntPoly ca = content_in(a, v), cb = content_in(b, v);
  IntPoly c = gcd(ca, cb);
  IntPoly pa = *exact_div(a, ca), pb = *exact_div(b, cb);
  if (pa.degree(v) < pb.degree(v)) std::swap(pa, pb);
  while (!pb.is_zero() && pb.degree(v) > 0) {
    IntPoly r = prem(pa, pb, v);
    pa = pb;
    if (r.is_zero()) {
      pb = r;
      break;
    }
    pb = *exact_div(r, content_in(r, v));
  }
  IntPoly g = pb.is_zero() ? pa : IntPoly(1);
  g = *exact_div(g, content_in(g, v));
  return (c * g).normalized_sign();
}

std::optional<IntPoly> try_heu(const IntPoly& a, const IntPoly& b, int v) {
  mpz_class fn = a.max_norm(), gn = b.max_norm();
  mpz_class bound = 2 * std::min(fn, gn) + 29;
  mpz_class x = std::min(bound, mpz_class(99 * isqrt(bound)));
  mpz_class alt = 2 * std::min(mpz_class(fn / abs(a.lead().c)), mpz_class(gn / abs(b.lead().c))) + 2;
  x = std::max(x, alt);
  for (int i = 0; i < 6; ++i) {
    IntPoly fa = a.eval_int(v, x), fb = b.eval_int(v, x);
    if (!fa.is_zero() && !fb.is_zero()) {
      IntPoly h = gcd(fa, fb);
      IntPoly g = primitive(interpolate(h, x, v));
      if (!g.is_zero() && exact_div(a, g) && exact_div(b, g)) return g;
      // Also try lifting a cofactor.
      if (auto cf = exact_div(fa, h)) {
        IntPoly ca = primitive(interpolate(*cf, x, v));
        if (!ca.is_zero()) {
          if (auto g2 = exact_div(a, ca)) {
            IntPoly gg = primitive(*g2);
            if (exact_div(b, gg)) return gg;
          }
        }
      }
    }
    x = 73794 * x * isqrt(isqrt(x)) / 27011;
  }
  return std::nullopt;
}

// a, b: nonzero, primitive over Z, without monomial content.
IntPoly gcd_prim(const IntPoly& a, const IntPoly& b) {
  if (a.is_constant() || b.is_constant()) return IntPoly(1);
  if (a == b) return a.normalized_sign();
  auto va = a.vars(), vb = b.vars();
  // Variables present in only one argument cannot divide the gcd.
  for (int v : va)
    if (!std::binary_search(vb.begin(), vb.end(), v)) return gcd(content_in(a, v), b);
  for (int v : vb)
    if (!std::binary_search(va.begin(), va.end(), v)) return gcd(a, content_in(b, v));
  // Trial division by the smaller argument is cheap and common.
  const IntPoly& s = a.size() <= b.size() ? a : b;
  const IntPoly& t = a.size() <= b.size() ? b : a;
  if (exact_div(t, s)) return s.normalized_sign();
  int v = va.back();
  if (auto g = try_heu(a, b, v)) return *g;
  return gcd_prs(a, b, v);
}

}  // namespace

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return b.normalized_sign();
  if (b.is_zero()) return a.normalized_sign();
  mpz_class ci = gcd(a.content(), b.content());
  if (a.is_monomial() || b.is_monomial()) {
    IntPoly m = monomial_gcd(a.min_exps(), b.min_exps());
    return m.mul_term({}, ci);
  }
  Exps ma = a.min_exps(), mb = b.min_exps();
  IntPoly mono = monomial_gcd(ma, mb);
  IntPoly pa = a.div_exps(ma), pb = b.div_exps(mb);
  pa = primitive(pa);
  pb = primitive(pb);
  IntPoly g = gcd_prim(pa, pb);
  return (g * mono).mul_term({}, ci).normalized_sign();
}

}  // namespace qsep
