#include "doctest.h"
#include "qsep/parse.hpp"
#include "qsep/qkit.hpp"
#include "qsep/sov.hpp"
#include "test_support.hpp"

using namespace qsep;
using namespace qsep::sov;
using macdonald::monomial_sym;

namespace {

RatFunc P(const char* s) { return parse_ratfunc(s); }
LaurentPoly T(const char* s) { return parse_laurent(s, t_vars()); }
LaurentPoly Y(const char* s) { return parse_laurent(s, y_vars()); }
LaurentPoly Ty(const char* s) { return parse_laurent(s, {"y"}); }
RatFunc poch(const char* a, int k) { return qkit::qpoch(parse_ratfunc(a), k); }

std::vector<Weight> sweep() {
  std::vector<Weight> out;
  for (int a = -2; a <= 3; ++a)
    for (int b = a; b <= 3; ++b)
      for (int c = b; c <= 3; ++c) out.push_back(Weight{a, b, c});
  return out;
}

LaurentPoly in_t(const PIndex& i) { return from_sym_coords(p_basis_poly(i), false); }

LaurentPoly product_side(const Weight& w) {
  SepPoly s = sep_poly(w);
  return c_lambda(w) * LaurentPoly::monomial(y_vars(), {w.total(), 0, 0}) * s.poly_in("y1").aligned(y_vars()) *
         s.poly_in("y2").aligned(y_vars());
}

}  // namespace

TEST_CASE("symmetric coordinates") {
  CHECK(to_sym_coords(T("t1+t2")) == parse_laurent("e1", t_coords()));
  CHECK(to_sym_coords(T("t1*t2")) == parse_laurent("e2", t_coords()));
  CHECK(to_sym_coords(T("t1^2+t2^2")) == parse_laurent("e1^2-2*e2", t_coords()));
  CHECK(to_sym_coords(Y("y1^2+y2^2+x"), true) == parse_laurent("E1^2-2*E2+x", y_coords()));
  CHECK_THROWS_AS(to_sym_coords(T("t1")), std::domain_error);
  CHECK_THROWS_AS(to_sym_coords(Y("y1*x"), true), std::domain_error);
  // Laurent input: negative powers go into e2 only.
  LaurentPoly f = T("t1^(-1)+t2^(-1)+t3^(-2)*t1*t2");
  LaurentPoly g = to_sym_coords(f);
  CHECK(g.min_degree(0) >= 0);
  CHECK(from_sym_coords(g) == f);
  for (auto w : {Weight{0, 1, 2}, Weight{-1, 0, 3}, Weight{-2, -2, 1}})
    CHECK(from_sym_coords(to_sym_coords(monomial_sym(w))) == monomial_sym(w));
}

TEST_CASE("p bases") {
  CHECK(p_basis_poly({0, 0, 0}) == LaurentPoly(t_coords(), RatFunc(1)));
  CHECK(in_t({2, 1, 0}) == T("t1*t2"));
  CHECK(from_sym_coords(ptilde_basis_poly({0, 0, 1}), true) == Y("(1-y1)*(1-y2)"));
  CHECK(ptilde_basis_poly({0, 0, 1}) == parse_laurent("1-E1+E2", y_coords()));
  // Direct product definition in the t variables.
  CHECK(in_t({1, 0, 2}) == T("t3*(1-t1/(l*t3))*(1-q*t1/(l*t3))*(1-t2/(l*t3))*(1-q*t2/(l*t3))"));
  CHECK_THROWS_AS(p_basis_poly({0, 0, -1}), std::invalid_argument);
}

TEST_CASE("expansion in the p basis") {
  auto one = expand_in_p_basis(LaurentPoly(t_coords(), RatFunc(1)));
  REQUIRE(one.size() == 1);
  CHECK(one.begin()->first == PIndex{0, 0, 0});
  CHECK(one.begin()->second.is_one());

  auto e = expand_in_p_basis(p_basis_poly({3, 1, 2}));
  REQUIRE(e.size() == 1);
  CHECK(e.begin()->first == PIndex{3, 1, 2});
  CHECK(e.begin()->second.is_one());

  LaurentPoly m011 = to_sym_coords(monomial_sym({0, 1, 1}));
  CHECK(assemble_p(expand_in_p_basis(m011)) == m011);

  LaurentPoly yside = to_sym_coords(Y("x*(y1+y2)^2+y1*y2"), true);
  CHECK(assemble_p(expand_in_p_basis(yside, true), true) == yside);
}

TEST_CASE("triangularity of m in the p basis") {
  for (int a = -1; a <= 0; ++a)
    for (int b = a; b <= a + 3; ++b)
      for (int c = b; c <= a + 3; ++c) {
        Weight w{a, b, c};
        int d = c - a;
        auto e = expand_in_p_basis(to_sym_coords(monomial_sym(w)));
        std::vector<PIndex> top;
        for (auto& [i, v] : e) {
          CHECK(i.nu <= d);
          if (i.nu == d) top.push_back(i);
        }
        REQUIRE(top.size() == 1);
        CHECK(top[0] == PIndex{w.total(), a, d});
        RatFunc expect = (d % 2 ? RatFunc(-1) : RatFunc(1)) * RatFunc::q_pow(-d * (d - 1) / 2) * RatFunc::var(sym::l, d);
        CHECK(e.at(top[0]) == expect);
      }
}

TEST_CASE("apply_M on basic inputs") {
  CHECK(apply_M(T("1")) == Y("1"));
  CHECK(apply_M(in_t({0, 0, 1})) == Y("(1-l^(-2))/(1-l^(-3))*(1-y1)*(1-y2)"));
  CHECK(apply_M(in_t({2, 1, 0})) == Y("l^3*x^2*y1*y2"));
  CHECK_THROWS_AS(apply_M(T("t1^2+t3")), std::domain_error);

  // c_001 from the closed form, and independently by division.
  LaurentPoly img = apply_M(macdonald::macdonald_poly({0, 0, 1}).polynomial);
  SepPoly s = sep_poly({0, 0, 1});
  LaurentPoly base = LaurentPoly::monomial(y_vars(), {1, 0, 0}) * s.poly_in("y1").aligned(y_vars()) *
                     s.poly_in("y2").aligned(y_vars());
  LaurentPoly quo = exact_div(img, base);
  REQUIRE(quo.size() == 1);
  CHECK(quo.constant_term() == P("(1-l^(-2))^2/((1-l^(-3))*(1-l^(-1)))"));
  CHECK(c_lambda({0, 0, 1}) == quo.constant_term());
}

TEST_CASE("apply_Minv and round trips") {
  CHECK(apply_Minv(Y("1")) == T("1"));
  LaurentPoly m012 = monomial_sym({0, 1, 2});
  CHECK(apply_Minv(apply_M(m012)) == m012);
  CHECK_THROWS_AS(apply_Minv(Y("y1")), std::domain_error);

  for (int j = -2; j <= 2; ++j)
    for (int k = -2; k <= 2; ++k)
      for (int nu = 0; nu <= 3; ++nu) {
        LaurentPoly f = in_t({j, k, nu});
        CHECK(apply_Minv(apply_M(f)) == f);
      }
  for (int a = -1; a <= 0; ++a)
    for (int b = a; b <= a + 3; ++b)
      for (int c = b; c <= a + 3; ++c) {
        LaurentPoly f = monomial_sym({a, b, c});
        CHECK(apply_Minv(apply_M(f)) == f);
      }

  // Integral representation of P_002 read backwards.
  CHECK(apply_Minv(product_side({0, 0, 2})) == macdonald::macdonald_poly({0, 0, 2}).polynomial);
}

TEST_CASE("normalisation c_lambda") {
  CHECK(c_lambda({0, 0, 0}).is_one());
  CHECK(c_lambda({0, 1, 1}) == P("l/(l^2+l+1)"));
  CHECK_THROWS_AS(c_lambda({0, 1, 1, 2}), std::invalid_argument);

  // Division oracle for c_011.
  LaurentPoly img = apply_M(macdonald::macdonald_poly({0, 1, 1}).polynomial);
  SepPoly s = sep_poly({0, 1, 1});
  LaurentPoly base = LaurentPoly::monomial(y_vars(), {2, 0, 0}) * s.poly_in("y1").aligned(y_vars()) *
                     s.poly_in("y2").aligned(y_vars());
  CHECK(exact_div(img, base).constant_term() == P("l/(l^2+l+1)"));

  for (auto w : sweep()) {
    SepPoly sp = sep_poly(w);
    int d = w[2] - w[0];
    RatFunc lhs = c_lambda(w) * sp.chi.at(w[0]) * sp.chi.at(w[2]);
    RatFunc rhs = RatFunc::var(sym::l, w[2] + 2 * w[0]) * poch("l^(-2)", d) / poch("l^(-3)", d);
    CHECK_MESSAGE(lhs == rhs, w.str());
  }
}

TEST_CASE("separated polynomials match the published list") {
  for (auto& [k, v] : read_table("data/sep_table.txt")) {
    Weight w = macdonald::parse_weight(k);
    CHECK_MESSAGE(sep_poly(w).poly() == Ty(v.c_str()), k);
  }
  CHECK(sep_poly({0, 0, 1}).poly() == Ty("1+l^2*y/(l+1)"));
  CHECK(sep_poly({0, 2, 2}).poly() == Ty("1+(l^2-1)*(q+1)*l*y/(l-q)+(l^2-q)*(l+1)*l^2*y^2/(l-q)"));
  SepPoly s = sep_poly({-1, 0, 3});
  CHECK(s.chi.begin()->first == -1);
  CHECK(s.chi.begin()->second.is_one());
  CHECK(s.chi.rbegin()->first == 3);
  CHECK_THROWS_AS(sep_poly({0, 2, 1}), std::invalid_argument);
}

TEST_CASE("golden renderings of S_lambda") {
  for (auto& [k, v] : read_table("golden/seppoly.txt")) CHECK_MESSAGE(sep_poly(macdonald::parse_weight(k)).poly().str() == v, k);
}

TEST_CASE("series construction of S_lambda") {
  CHECK(sep_poly_via_series({0, 0, 0}).poly() == Ty("1"));
  CHECK(sep_poly_via_series({0, 0, 2}).poly() == Ty("1+l^2*(q*l+l-q-1)*y/(l^2-q)+(l-q)*l^4*y^2/((l^2-q)*(l+1))"));
  CHECK(series_tail_coefficient({0, 1, 2}).is_zero());
  CHECK(series_tail_coefficient({0, 1, 2}, 2).is_zero());
  for (auto w : {Weight{-1, 0, 2}, Weight{0, 2, 3}, Weight{0, 0, 0, 1}}) CHECK(sep_poly_via_series(w).chi == sep_poly(w).chi);
}

TEST_CASE("endpoint coefficients and the value at l^-n") {
  CHECK(chi_endpoint({0, 1, 2}) == P("l^3"));
  CHECK(sep_value_at_ell_minus_n({0, 0, 0}).is_one());
  RatFunc v001 = sep_value_at_ell_minus_n({0, 0, 1});
  CHECK(v001 == P("(1-l^(-3))/(1-l^(-2))"));
  CHECK(v001 == P("1+l^2*l^(-3)/(l+1)"));
  for (auto w : sweep()) {
    SepPoly s = sep_poly(w);
    CHECK(s.chi.at(w[0]).is_one());
    CHECK(chi_endpoint(w) == s.chi.rbegin()->second);
    CHECK(sep_value_at_ell_minus_n(w) == evaluate(s, RatFunc::var(sym::l, -3)));
  }
}

TEST_CASE("Lauricella representations") {
  CHECK(lauricella_forms_check({0, 0, 1}).ok);
  CHECK(sep_poly_lauricella({0, 0, 1}) == Ty("1+l^2*y/(l+1)"));
  CHECK(sep_poly_double_sum({0, 1, 1}) == Ty("1+l*(l+1)*y"));
  CHECK(sep_poly_lauricella({0, 0, 0}) == Ty("1"));
  CHECK(sep_poly_double_sum({0, 0, 0}) == Ty("1"));
  CHECK(sep_poly_lauricella2({0, 0, 0}, 1) == Ty("1"));
  // a_1 = q^0 at l = q for (-1,0,3): singular specialisation.
  CHECK_THROWS_AS(sep_poly_lauricella2({-1, 0, 3}, 1), std::domain_error);
  CHECK_THROWS_AS(sep_poly_lauricella2({0, 0, 1}, 0), std::invalid_argument);
}

TEST_CASE("separated operator") {
  auto d001 = sep_operator(eigenvalues({0, 0, 1}), 3);
  CHECK(apply_sep_operator(d001, sep_poly({0, 0, 1}).poly()).is_zero());
  auto d000 = sep_operator(eigenvalues({0, 0, 0}), 3);
  CHECK(apply_sep_operator(d000, Ty("1")).is_zero());
  auto d012 = sep_operator(eigenvalues({0, 1, 2}), 3);
  CHECK_FALSE(apply_sep_operator(d012, sep_poly({0, 1, 2}).poly() + Ty("y")).is_zero());
  CHECK_THROWS_AS(sep_operator({1, 2}, 3), std::invalid_argument);
  CHECK_THROWS_AS(sep_operator({2, 1, 1, 1}, 3), std::invalid_argument);

  // Cancelling 1 - q^3 l^3 y, and the explicit n = 3 form (up to -(1-y)).
  auto h = eigenvalues({0, 1, 2});
  auto full = sep_operator(h, 3), simp = sep_operator(h, 3, true);
  CHECK(simp.coeffs[3] == Ty("-l^3*(1-y)*(1-q*y)*(1-q^2*y)"));
  for (int k = 0; k <= 3; ++k) CHECK(full.coeffs[k] == simp.coeffs[k] * Ty("1-q^3*l^3*y"));
  std::vector<LaurentPoly> dform{
      -h[3] * Ty("(1-q*l^3*y)*(1-q^2*l^3*y)"),
      h[2] * Ty("(1-q*l*y)*(1-q^2*l^3*y)*l"),
      -h[1] * Ty("(1-q*y)*(1-q^2*l^2*y)*l^2"),
      Ty("(1-q*y)*(1-q^2*y)*l^3"),
  };
  for (int k = 0; k <= 3; ++k) CHECK(simp.coeffs[k] == Ty("-(1-y)") * dform[k]);
}

TEST_CASE("annihilation on the sweep") {
  for (auto w : sweep()) {
    auto d = sep_operator(eigenvalues(w), 3);
    CHECK_MESSAGE(apply_sep_operator(d, sep_poly(w).poly()).is_zero(), w.str());
    CHECK(apply_sep_operator(sep_operator(eigenvalues(w), 3, true), sep_poly(w).poly()).is_zero());
  }
}

TEST_CASE("rank four with the square-root symbol") {
  for (auto w : {Weight{0, 0, 0, 1}, Weight{0, 0, 1, 1}, Weight{0, 1, 1, 2}}) {
    SepPoly s = sep_poly(w);
    CHECK(apply_sep_operator(sep_operator(eigenvalues(w), 4), s.poly()).is_zero());
    CHECK(reconstruct_sep_by_recursion(eigenvalues(w), 4).sep.chi == s.chi);
    CHECK(lauricella_forms_check(w).ok);
    CHECK(chi_endpoint(w) == s.chi.rbegin()->second);
    CHECK(sep_value_at_ell_minus_n(w) == evaluate(s, RatFunc::var(sym::L, -8)));
  }
  CHECK(sep_poly({0, 0, 1, 1}).poly() == parse_laurent("1+L^4*y", {"y"}));
}

TEST_CASE("boundary coefficients of the recurrence") {
  RatFunc z = RatFunc::var("z");
  for (auto w : sweep()) {
    auto d = sep_operator(eigenvalues(w), 3);
    auto [a0, a1] = boundary_coefficients(d);
    RatFunc e0 = -RatFunc::var(sym::l, 3), e1 = -(P("l/q")).pow(6);
    for (int j = 1; j <= 3; ++j) {
      e0 *= z - RatFunc::q_pow(w[j - 1]) * RatFunc::var(sym::l, 1 - j);
      e1 *= z - RatFunc::q_pow(w[j - 1] + 4) * RatFunc::var(sym::l, 3 - j);
    }
    CHECK(a0 == e0);
    CHECK(a1 == e1);
    CHECK(recurrence_coefficient(d, w[0], 0).is_zero());
    CHECK(recurrence_coefficient(d, w[2] + 4, 4).is_zero());
  }
  CHECK_THROWS_AS(boundary_coefficients(sep_operator(eigenvalues({0, 0, 1}), 3, true)), std::invalid_argument);
}

TEST_CASE("reconstruction by recursion") {
  CHECK(reconstruct_sep_by_recursion(eigenvalues({0, 0, 1}), 3).sep.poly() == Ty("1+l^2*y/(l+1)"));
  CHECK(reconstruct_sep_by_recursion(eigenvalues({0, 0, 0}), 3).sep.poly() == Ty("1"));
  for (auto& [k, v] : read_table("data/sep_table.txt"))
    if (k == "0,1,3") CHECK(reconstruct_sep_by_recursion(eigenvalues({0, 1, 3}), 3).sep.poly() == Ty(v.c_str()));
  for (auto w : sweep()) {
    auto rec = reconstruct_sep_by_recursion(eigenvalues(w), 3);
    CHECK(rec.k_lo == w[0]);
    CHECK(rec.k_hi == w[2]);
    CHECK(rec.sep.chi == sep_poly(w).chi);
  }
  auto h = eigenvalues({0, 1, 2});
  h[1] += 1;
  CHECK_THROWS_AS(reconstruct_sep_by_recursion(h, 3), std::domain_error);
}

TEST_CASE("oracle equivalence on the sweep") {
  for (auto w : sweep()) {
    CHECK_NOTHROW(sep_poly_via_series(w));
    auto r = lauricella_forms_check(w);
    CHECK_MESSAGE(r.ok, r.report);
  }
}

TEST_CASE("factorization") {
  CHECK(verify_factorization({0, 0, 0}).ok);
  CHECK(verify_factorization({0, 0, 2}).ok);
  CHECK(verify_factorization({-1, 0, 1}).ok);
  MCache cache;
  for (auto w : sweep()) {
    auto r = verify_factorization(w, &cache);
    CHECK_MESSAGE(r.ok, r.report);
  }
  CHECK_THROWS_AS(verify_factorization({0, 0, 1, 1}), std::invalid_argument);
}

TEST_CASE("quantum alpha identities") {
  auto a = verify_alpha_identities_quantum();
  CHECK(a.identity_a);
  CHECK(a.identity_b);
  CHECK(a.alpha12_consistent);
  CHECK(a.commutation);
}

TEST_CASE("difference form of the inverse") {
  LaurentPoly one(y_vars(), RatFunc(1));
  auto op1 = minv_difference_operator(1);
  CHECK(op1.xi.size() == 2);
  CHECK(op1.apply(one) == T("1"));
  Bindings g1{{sym::l, RatFunc::q_pow(-1)}};
  LaurentPoly pt = from_sym_coords(ptilde_basis_poly({0, 0, 1}), true);
  LaurentPoly expect = (poch("l^(-3)", 1) / poch("l^(-2)", 1)) * in_t({0, 0, 1});
  CHECK(op1.apply(pt) == expect.map_coeffs([&](const RatFunc& c) { return specialize(c, g1); }));

  for (int g = 1; g <= 3; ++g) {
    auto op = minv_difference_operator(g);
    Bindings at{{sym::l, RatFunc::q_pow(-g)}};
    for (const char* phi : {"x*(y1+y2)", "1+y1*y2", "x^2*(y1^2+y2^2)-y1*y2*x"}) {
      LaurentPoly f = Y(phi);
      LaurentPoly ref = apply_Minv(f).map_coeffs([&](const RatFunc& c) { return specialize(c, at); });
      CHECK_MESSAGE(op.apply(f) == ref, "g=" << g << " phi=" << phi);
    }
  }
  CHECK_THROWS_AS(minv_difference_operator(0), std::invalid_argument);
}

TEST_CASE("two-parameter family identities") {
  auto r = mab_identity_checks();
  CHECK_MESSAGE(r.kp, r.detail);
  CHECK_MESSAGE(r.pm, r.detail);
  CHECK_MESSAGE(r.xik, r.detail);
  CHECK_MESSAGE(r.inversion, r.detail);
}
