#include <doctest.h>

#include <cmath>
#include <random>

#include "qsep/classical.hpp"
#include "qsep/symbols.hpp"

using namespace qsep;
using namespace qsep::classical;

namespace {

RatFunc var(const char* n) { return RatFunc::var(n); }

Point random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(0.3, 1.7);
  Point pt;
  for (const char* n : {"t1", "t2", "t3", "T1", "T2", "T3", "u", "z", "y"}) pt[symbol_id(n)] = {d(rng), d(rng)};
  pt[sym::L] = 1.3 + d(rng);
  return pt;
}

}  // namespace

TEST_CASE("poisson bracket of the canonical pairs") {
  auto b = poisson_bracket(var("T1"), var("t1"));
  CHECK(b.times_minus_i);
  CHECK(b.coeff == var("T1") * var("t1"));
  CHECK(poisson_bracket(var("t1"), var("t2")).is_zero());
  CHECK(poisson_bracket(var("T1"), var("T2")).is_zero());
  CHECK(poisson_bracket(var("T2"), var("t3")).is_zero());
  CHECK(poisson_bracket(var("t2"), var("T2")).coeff == -var("T2") * var("t2"));
}

TEST_CASE("poisson bracket is antisymmetric and Leibniz") {
  RatFunc F = var("T1") * var("t2") / (var("t1") - var("t3")), G = var("T2") * var("T3") + var("t1");
  RatFunc H = var("T1") + var("t2") * var("t2");
  CHECK(poisson_bracket(F, G).coeff == -poisson_bracket(G, F).coeff);
  CHECK(poisson_bracket(F, G * H).coeff == poisson_bracket(F, G).coeff * H + G * poisson_bracket(F, H).coeff);
}

TEST_CASE("hamiltonians") {
  CHECK(hamiltonian(0) == RatFunc(1));
  CHECK(hamiltonian(3) == var("T1") * var("T2") * var("T3"));
  CHECK(hamiltonian(1) == v(1, 2) * v(1, 3) * var("T1") + v(2, 1) * v(2, 3) * var("T2") + v(3, 1) * v(3, 2) * var("T3"));
  CHECK(hamiltonian(2) == v(1, 3) * v(2, 3) * var("T1") * var("T2") + v(1, 2) * v(3, 2) * var("T1") * var("T3") +
                              v(2, 1) * v(3, 1) * var("T2") * var("T3"));
  CHECK_THROWS_AS(hamiltonian(4), std::invalid_argument);
  // {H1, t1} only sees the T1 term.
  CHECK(poisson_bracket(hamiltonian(1), var("t1")).coeff == var("T1") * var("t1") * v(1, 2) * v(1, 3));
}

TEST_CASE("hamiltonians poisson commute") {
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      CHECK(poisson_bracket(hamiltonian(i), hamiltonian(j)).is_zero());
    }
  CHECK(!poisson_bracket(hamiltonian(1), var("t1")).is_zero());
}

TEST_CASE("lax characteristic polynomial") {
  auto a = lax_charpoly_coeffs();
  auto b = charpoly_from_hamiltonians();
  RatFunc u = var("u");
  CHECK(a[3] == ell(3) * (1 - u) * (1 - u));
  CHECK(a[0] == -(1 - ell(3) * u).pow(2) * hamiltonian(3));
  for (int k = 0; k < 4; ++k) CHECK(a[k] == b[k]);
  CHECK(lax_charpoly_identity_check());

  // Numeric oracle: cofactor determinant of z - L(u) at random points.
  Matrix3 m = lax_matrix(u);
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 5; ++rep) {
    Point pt = random_point(rng);
    std::complex<double> e[3][3];
    std::complex<double> z = pt[symbol_id("z")], uu = pt[symbol_id("u")];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) e[i][j] = (i == j ? z : 0.) - eval_complex(m[i][j], pt);
    auto det = e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1]) - e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0]) +
               e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0]);
    auto lv = std::pow(pt[sym::L], 2);
    std::complex<double> lhs = std::pow(lv, 3) * (1. - uu) * (1. - uu) * det, rhs = 0;
    for (int k = 0; k < 4; ++k) rhs += eval_complex(b[k], pt) * std::pow(z, k);
    CHECK(std::abs(lhs - rhs) < 1e-9 * (std::abs(lhs) + 1));
  }
}

TEST_CASE("A_k from the lax matrix") {
  RatFunc u = var("u");
  Matrix3 L = lax_matrix(u);
  for (int k = 1; k <= 2; ++k) {
    int a = k - 1, b = 2 - k;
    RatFunc A = L[a][a] - L[2][a] * L[a][b] / L[2][b];
    CHECK(A == var(k == 1 ? "T1" : "T2") * alpha(k, u));
  }
  CHECK_THROWS_AS(alpha(3, u), std::invalid_argument);
}

TEST_CASE("classical alpha identities") {
  auto r = alpha_residuals_classical();
  CHECK(r.identity_a.is_zero());
  CHECK(r.identity_b.is_zero());
  CHECK(r.ratio_invariance.is_zero());
  // The ratio is not invariant when the map uses l^{3/2} in place of l^3.
  CHECK(!r.ratio_invariance_half.is_zero());
  CHECK(verify_alpha_identities_classical());
}

TEST_CASE("Z1 and Z2 vanish separately") {
  auto z = z_decomposition_check();
  CHECK(z.split_residual.is_zero());
  CHECK(z.z1_substituted.is_zero());
  CHECK(z.z2_substituted.is_zero());
  CHECK(z.ok());
}

TEST_CASE("numeric separation at random phase points") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ells(1.2, 6);
  for (int rep = 0; rep < 20; ++rep) {
    PhasePoint p = random_phase_point(rng, ells(rng));
    CHECK_NOTHROW(check_phase_point(p));
    Separation s = separate_numeric(p);
    CAPTURE(rep);
    CHECK(constraint_residual(p, s) < 1e-10);
    CHECK(s.alpha_mismatch < 1e-9);
    for (auto [Y, y] : {std::pair{s.Y1, s.y1}, std::pair{s.Y2, s.y2}}) {
      CHECK(separated_equation_residual(p, Y, y) < 1e-9);
      CHECK(lax_det_residual(p, Y, y) < 1e-8);
      // y = l^{-3} is excluded.
      CHECK(std::abs(y - std::pow(p.ell, -3)) > 1e-8);
    }
    // A generic Y is not an eigenvalue.
    CHECK(lax_det_residual(p, s.Y1 * 1.5 + 0.1, s.y1) > 1e-6);
  }
}

TEST_CASE("phase point validation and degenerate separation") {
  PhasePoint p;
  p.t = {std::polar(1.0, 0.3), std::polar(1.0, 1.1), std::polar(1.0, 2.0)};
  p.T = {1, 1.5, 0.7};
  p.ell = 2;
  CHECK_NOTHROW(check_phase_point(p));
  PhasePoint bad = p;
  bad.t[0] *= 1.1;
  CHECK_THROWS_AS(check_phase_point(bad), std::invalid_argument);
  bad = p;
  bad.ell = 0.5;
  CHECK_THROWS_AS(check_phase_point(bad), std::invalid_argument);
  bad = p;
  bad.T[2] = -1;
  CHECK_THROWS_AS(check_phase_point(bad), std::invalid_argument);
  // t1 = t2 and T1 = T2 make A1 - A2 vanish identically.
  PhasePoint deg = p;
  deg.t[1] = deg.t[0];
  deg.T[1] = deg.T[0];
  CHECK_THROWS_AS(separate_numeric(deg), std::domain_error);
}

TEST_CASE("generating function on the real slice") {
  std::mt19937_64 rng(7);
  for (double l : {4.0, 9.0}) {
    for (int rep = 0; rep < 5; ++rep) {
      PhasePoint p = random_real_slice_point(rng, l);
      auto a = genfunc_canonicity_check(p, 1e-4), b = genfunc_canonicity_check(p, 5e-5),
           c = genfunc_canonicity_check(p, 1e-5);
      CAPTURE(l);
      CAPTURE(rep);
      CHECK(a.yplus_dev < 1e-12);
      CHECK(c.max_dev < 1e-5);
      CHECK(c.dev_yplus < 1e-9);
      CHECK(a.max_dilog_arg < 1);
      double ratio = a.max_dev / b.max_dev;
      CHECK(ratio > 3.2);
      CHECK(ratio < 4.8);
    }
  }
}

TEST_CASE("generating function error paths") {
  std::mt19937_64 rng(7);
  PhasePoint p = random_real_slice_point(rng, 9);
  CHECK_THROWS_AS(genfunc_canonicity_check(p, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(genfunc_canonicity_check(p, 1e-7), std::invalid_argument);
  PhasePoint c = p;
  c.t[0] = std::polar(1.0, 0.4);
  CHECK_THROWS_AS(genfunc_canonicity_check(c, 1e-5), std::domain_error);
  // Some point of the slice puts a dilog argument past 1.
  std::uniform_real_distribution<double> lt(-1, 1), lT(-2.5, 2.5);
  bool seen = false;
  for (int i = 0; i < 2000 && !seen; ++i) {
    PhasePoint q;
    q.ell = 9;
    for (auto& t : q.t) t = std::exp(lt(rng));
    for (auto& T : q.T) T = std::exp(lT(rng));
    try {
      genfunc_canonicity_check(q, 1e-5);
    } catch (const std::domain_error& e) {
      seen = std::string(e.what()).find("dilog") != std::string::npos;
    }
  }
  CHECK(seen);
}
