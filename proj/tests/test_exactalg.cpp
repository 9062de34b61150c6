#include <random>

#include "doctest.h"
#include "qsep/parse.hpp"
#include "qsep/qshift.hpp"
#include "qsep/symbols.hpp"

using namespace qsep;

namespace {

RatFunc P(const char* s) { return parse_ratfunc(s); }
const std::vector<std::string> T3{"t1", "t2", "t3"};
LaurentPoly LP(const char* s) { return parse_laurent(s, T3); }

IntPoly random_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> deg(0, 2), co(-3, 3), nt(1, 4);
  std::vector<Term> ts;
  int n = nt(rng);
  for (int i = 0; i < n; ++i) {
    Exps e{deg(rng), deg(rng), 0, 0, 0, 0, 0, 0, 0, 0, deg(rng)};  // q, l, y
    ts.push_back(Term{e, co(rng)});
  }
  return IntPoly::from_terms(ts);
}

RatFunc random_rat(std::mt19937& rng) {
  IntPoly d;
  while (d.is_zero()) d = random_poly(rng);
  return RatFunc(random_poly(rng), d);
}

}  // namespace

TEST_CASE("field ops") {
  CHECK(P("q/(1-l) + q*l/(1-l)") == P("q*(1+l)/(1-l)"));
  CHECK(P("(1-l^2)/(1-l)") == P("1+l"));
  CHECK(P("(1-l)/(1-l)").is_one());
  CHECK_THROWS_AS(P("q") / RatFunc(), std::domain_error);
  RatFunc f = P("(2*q-2*l)/(4*l-4*q)");
  CHECK(f == RatFunc(IntPoly(-1), IntPoly(2)));
}

TEST_CASE("canonical form invariants") {
  RatFunc f = P("(l-q)/(l^2-q^2)");
  CHECK(f.num().is_one());
  CHECK(f.den().str() == "q+l");
  RatFunc g = P("1/(l-q)");
  CHECK(g.den().sign() > 0);
  CHECK(g.str() == "-1/(q-l)");
  CHECK(P("(-q*l+q-l+1)/(q-l)").str() == "(-q*l+q-l+1)/(q-l)");
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937 rng(7);
  for (int i = 0; i < 40; ++i) {
    RatFunc a = random_rat(rng), b = random_rat(rng), c = random_rat(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == RatFunc());
    if (!a.is_zero()) CHECK(a / a == RatFunc(1));
    CHECK(RatFunc(a.num(), a.den()) == a);  // reduce is idempotent
    CHECK((a == b) == (a - b).is_zero());
  }
}

TEST_CASE("gcd") {
  IntPoly a = P("(q-l)*(q^2+l+1)*(3*q*l-2)").num();
  IntPoly b = P("(q-l)*(q^2+l+1)*(q+l^3)").num();
  CHECK(gcd(a, b) == P("(q-l)*(q^2+l+1)").num().normalized_sign());
  CHECK(gcd(P("6*q^2").num(), P("4*q*l").num()) == P("2*q").num());
  IntPoly t = P("(t1-t2)*(t1-l*t3)*(1+q*t2)").num();
  IntPoly s = P("(t2-t1)*(t1-l*t3)*(1-q*t2)").num();
  CHECK(gcd(t, s) == P("(t1-t2)*(t1-l*t3)").num().normalized_sign());
  CHECK(gcd(IntPoly(), a) == a.normalized_sign());
  std::mt19937 rng(11);
  for (int i = 0; i < 30; ++i) {
    IntPoly x = random_poly(rng), y = random_poly(rng), z = random_poly(rng);
    if (x.is_zero() || y.is_zero() || z.is_zero()) continue;
    IntPoly g = gcd(x * z, y * z);
    CHECK(exact_div(g, z.normalized_sign()).has_value());
    CHECK(exact_div(x * z, g).has_value());
    CHECK(exact_div(y * z, g).has_value());
  }
}

TEST_CASE("specialize") {
  Bindings b1{{sym::l, RatFunc::q_pow(-1)}};
  CHECK(specialize(P("1/(1-l^(-3)*q)"), b1) == P("1/(1-q^4)"));
  Bindings b2{{sym::l, RatFunc::q_pow(-2)}};
  CHECK(specialize(P("l^2/(l+1)"), b2) == P("q^(-4)/(q^(-2)+1)"));
  Bindings b3{{sym::l, RatFunc(1)}};
  try {
    specialize(P("q/((1-l)*(1+q))"), b3);
    FAIL("expected error");
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("l-1") != std::string::npos);
  }
}

TEST_CASE("specialize commutes with field ops") {
  std::mt19937 rng(3);
  Bindings b{{sym::q, P("2*l+3")}};
  for (int i = 0; i < 20; ++i) {
    RatFunc a = random_rat(rng), c = random_rat(rng);
    try {
      RatFunc sa = specialize(a, b), sc = specialize(c, b);
      CHECK(specialize(a + c, b) == sa + sc);
      CHECK(specialize(a * c, b) == sa * sc);
    } catch (const std::domain_error&) {
    }
  }
}

TEST_CASE("eval_complex") {
  using C = std::complex<double>;
  CHECK(eval_complex(P("1+l"), {{sym::l, C(2.0)}}) == C(3.0));
  CHECK(std::abs(eval_complex(P("q/(1-q)"), {{sym::q, C(0.5)}}) - C(1.0)) < 1e-15);
  int t1 = symbol_id("t1"), t2 = symbol_id("t2");
  CHECK(std::abs(eval_complex(P("t1+t2"), {{t1, C(0, 1)}, {t2, C(0, -1)}})) < 1e-15);
  CHECK_THROWS_AS(eval_complex(P("1/(1-q)"), {{sym::q, C(1.0)}}), std::domain_error);
}

TEST_CASE("laurent ops") {
  CHECK(LP("(t1+t2)*(t1-t2)") == LP("t1^2-t2^2"));
  CHECK(LP("t1+t2+t3").coeff({1, 0, 0}) == RatFunc(1));
  CHECK(LP("t1*t2^(-1)") * LP("t2*t1^(-1)") == LaurentPoly(T3, 1));
  CHECK(LP("t1^(-2)*t3 + q/(1-l)*t2").to_ratfunc() == P("t1^(-2)*t3 + q/(1-l)*t2"));
  CHECK_THROWS(parse_laurent("1/(t1+t2)", T3));
  LaurentPoly y = parse_laurent("1 + (l^2+l)*y - q*y^2", {"y"});
  CHECK(y.str() == "1 + (l^2+l)*y - q*y^2");
  CHECK(exact_div(LP("t1^3-t2^3"), LP("t1-t2")) == LP("t1^2+t1*t2+t2^2"));
  CHECK(exact_div(LP("t1^(-1)-q*t2^(-2)"), LP("t1^(-1)")) == LP("1-q*t1*t2^(-2)"));
  CHECK_THROWS_AS(exact_div(LP("t1"), LP("t1-t2")), std::domain_error);
}

TEST_CASE("laurent qshift") {
  std::vector<std::string> v2{"t1", "t2"};
  CHECK(parse_laurent("t1*t2", v2).qshift({1, 0}) == parse_laurent("q*t1*t2", v2));
  CHECK(LP("t1*t2*t3").qshift({1, 1, 1}) == LP("q^3*t1*t2*t3"));
  CHECK(LaurentPoly(T3, 1).qshift({2, -1, 5}) == LaurentPoly(T3, 1));
  LaurentPoly f = LP("t1^2*t2^(-1) + l*t3 - t1*t2*t3");
  CHECK(f.qshift({1, -2, 3}) == f.qshift({2, 0, 1}).qshift({-1, -2, 2}));
}

TEST_CASE("rational apply and clear") {
  QShiftOperator h3(T3);
  h3.add(1, {1, 1, 1});
  CHECK(h3.apply(LP("t1*t2")) == LP("q^2*t1*t2"));
  // (t1 T1 - t2 T2)/(t1 - t2) maps symmetric inputs to polynomials only.
  QShiftOperator d(T3);
  d.add(P("t1/(t1-t2)"), {1, 0, 0});
  d.add(P("-t2/(t1-t2)"), {0, 1, 0});
  CHECK(d.apply(LP("t1+t2")) == LP("q*(t1+t2)"));
  CHECK_THROWS_AS(d.apply(LP("t1")), std::domain_error);
}

TEST_CASE("operator adjoint and compose") {
  std::vector<std::string> v{"t1", "t2"};
  QShiftOperator a(v);
  a.add(P("t1^2+l*t2"), {1, 0});
  a.add(P("q*t1*t2^(-1)"), {0, -1});
  a.add(P("3"), {0, 0});
  CHECK(a.adjoint().adjoint() == a);
  QShiftOperator t1(v), t1inv(v), id(v);
  t1.add(1, {1, 0});
  t1inv.add(1, {-1, 0});
  id.add(1, {0, 0});
  CHECK(t1.adjoint() == t1inv);
  CHECK(t1.compose(t1inv) == id);
}

TEST_CASE("parser errors") {
  CHECK_THROWS_AS(P("q+"), std::invalid_argument);
  CHECK_THROWS_AS(P("q^l"), std::invalid_argument);
  CHECK_THROWS_AS(P("(q"), std::invalid_argument);
  CHECK(P("ell^2") == P("l^2"));
  CHECK(P("-q^2") == -P("q^2"));
}
