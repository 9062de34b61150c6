#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qsep/parse.hpp"
#include "qsep/qkit.hpp"

using namespace qsep;
using namespace qsep::qkit;

namespace {
RatFunc P(const char* s) { return parse_ratfunc(s); }
}  // namespace

TEST_CASE("qpoch") {
  CHECK(qpoch(P("a"), 0).is_one());
  CHECK(qpoch(P("q"), 2) == P("(1-q)*(1-q^2)"));
  CHECK_THROWS_AS(qpoch(P("a"), -1), std::invalid_argument);
  RatFunc x = P("x");
  for (int k = 1; k <= 5; ++k) {
    CHECK(qpoch(P("q*x"), k) == (1 - P("q").pow(k) * x) / (1 - x) * qpoch(x, k));
    CHECK(qpoch(P("x/q"), k) == (1 - P("x/q")) / (1 - P("q").pow(k - 1) * x) * qpoch(x, k));
  }
  for (int m = 0; m <= 5; ++m)
    for (int n = 0; n <= 5; ++n)
      CHECK(qpoch(P("a"), m + n) == qpoch(P("a"), m) * qpoch(P("a") * P("q").pow(m), n));
}

TEST_CASE("qbinom") {
  CHECK(qbinom(2, 1) == P("1+q"));
  CHECK(qbinom(7, 0).is_one());
  CHECK(qbinom(4, 2) == P("(1+q^2)*(1+q+q^2)"));
  CHECK(qbinom(3, 5).is_zero());
  CHECK(qbinom(3, -1).is_zero());
}

TEST_CASE("bhs_terminating") {
  CHECK(bhs_terminating({P("a")}, {}, P("y"), 1) == 1 + P("(1-a)/(1-q)*y"));
  // Separated polynomial for weight (0,0,1): tops q^{-1}, a_j; bottoms q^{1} l^3, b_j.
  RatFunc l = P("l"), q = P("q");
  std::vector<RatFunc> a{l.pow(3) * q.pow(0), l.pow(2) * q, l * q};
  RatFunc chi1 = q * l.pow(3) * qpoch(P("1/(q*l^3)"), 1) / qpoch(q, 1) *
                 bhs_terminating({q.pow(-1), a[0], a[1], a[2]}, {q * l.pow(3), a[0] / l, a[1] / l}, q, 1);
  CHECK(chi1 == P("l^2/(l+1)"));
  CHECK_THROWS_AS(bhs_terminating({P("a")}, {P("q^(-1)")}, P("y"), 3), std::domain_error);
}

TEST_CASE("1phi0 against Euler products") {
  const int N = 6;
  auto lhs = bhs_series({P("a")}, {}, N);
  auto rhs = qpoch_inf_series(P("a"), N) * qpoch_inf_inverse_series(1, N);
  CHECK((lhs - rhs).is_zero());
}

TEST_CASE("qlauricella") {
  CHECK(qlauricella_terminating(P("a"), {P("b")}, P("c"), {P("x")}, {0}).is_one());
  // One variable: a terminating 2phi1.
  for (int nu = 1; nu <= 3; ++nu)
    CHECK(qlauricella_terminating(P("a"), {P("q").pow(-nu)}, P("c"), {P("x")}, {nu}) ==
          bhs_terminating({P("a"), P("q").pow(-nu)}, {P("c")}, P("x"), nu));
  CHECK_THROWS_AS(qlauricella_terminating(P("a"), {P("q^(-2)")}, P("q^(-1)"), {P("x")}, {2}),
                  std::domain_error);
}

TEST_CASE("Andrews reduction of phi_D") {
  SUBCASE("two variables, bounds (1,1)") {
    auto s = andrews_sides(P("g"), {1, 1}, {P("x"), P("z")}, 4);
    CHECK((s.lhs - s.rhs).is_zero());
  }
  SUBCASE("one variable, nu=1") {
    auto s = andrews_sides(P("g"), {1}, {P("x")}, 5);
    CHECK((s.lhs - s.rhs).is_zero());
  }
  SUBCASE("three variables") {
    auto s = andrews_sides(P("g"), {1, 0, 1}, {P("x"), P("z"), P("u")}, 3);
    CHECK((s.lhs - s.rhs).is_zero());
  }
  SUBCASE("wrong prefactor is detected") {
    auto s = andrews_sides(P("g"), {1}, {P("x")}, 3);
    CHECK(!(s.lhs - s.rhs.scaled(P("q"))).is_zero());
  }
}

TEST_CASE("q-difference equation of nphi(n-1)") {
  CHECK(hg_diffeq_residual({P("a")}, {}, 5).is_zero());
  CHECK(hg_diffeq_residual({P("a"), P("b")}, {P("c")}, 4).is_zero());
  CHECK(hg_diffeq_residual({P("a")}, {}, 1).is_zero());
}

TEST_CASE("PQ lemma on the falling basis") {
  for (int N = 0; N <= 4; ++N)
    for (int nu = 0; nu <= N; ++nu) {
      auto s = pq_lemma_sides(P("a"), nu, N, N + 4);
      CHECK((s.lhs - s.rhs).is_zero());
    }
}

TEST_CASE("numeric q-functions") {
  double q = 0.5, z = 1.3;
  CHECK(std::abs(qgamma_num(z + 1, q) / qgamma_num(z, q) - (1 - std::pow(q, z)) / (1 - q)) < 1e-12);
  CHECK(std::abs(qint_num([](double) { return 1.0; }, q) - 1.0) < 1e-14);
  double g = 1;
  double viaG = qgamma_num(g, q) * qgamma_num(2 * g, q) / qgamma_num(3 * g, q);
  CHECK(std::abs(qbeta_num(g, 2 * g, q) / viaG - 1) < 1e-12);
  CHECK_THROWS_AS(qpoch_inf_num(0.5, 1.0), std::domain_error);
  // The integral of t over [0,1] is 1/(1+q).
  CHECK(std::abs(qint_num([](double t) { return t; }, q) - 1 / (1 + q)) < 1e-14);
}

TEST_CASE("dilogarithm") {
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  CHECK(dilog_num(0) == 0);
  CHECK(std::abs(dilog_num(1) - pi2 / 6) < 1e-15);
  CHECK(std::abs(dilog_num(0.5) - (pi2 / 12 - std::pow(std::log(2.0), 2) / 2)) < 1e-14);
  CHECK(std::abs(dilog_num(-1) + pi2 / 12) < 1e-14);
  // Li2(z) + Li2(1/z) = -pi^2/6 - ln^2(-z)/2 for z < 0.
  CHECK(std::abs(dilog_num(-3) + dilog_num(-1.0 / 3) + pi2 / 6 + std::pow(std::log(3.0), 2) / 2) < 1e-13);
  // Reflection consistency across the switch point.
  for (double x : {0.3, 0.49, 0.51, 0.7, 0.95})
    CHECK(std::abs(dilog_num(x) + dilog_num(1 - x) - (pi2 / 6 - std::log(x) * std::log(1 - x))) < 1e-13);
  CHECK_THROWS_AS(dilog_num(1.5), std::domain_error);
}

TEST_CASE("dilog asymptotics scale linearly in hbar") {
  double d1 = asympt_dilog_deviation(0.3, 0.01), d2 = asympt_dilog_deviation(0.3, 0.005);
  CHECK(std::abs(d1 / d2 - 2) < 0.3);
}
