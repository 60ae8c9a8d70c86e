#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <vector>

#include "dnmod/dnop.hpp"
#include "dnmod/fp.hpp"
#include "dnmod/mpoly.hpp"
#include "dnmod/quad.hpp"
#include "test_util.hpp"

using namespace dnmod;

namespace {

const std::vector<Sym> V2{Sym::a2, Sym::a1, Sym::a0, Sym::b};
const std::vector<Sym> V3{Sym::a3, Sym::a2, Sym::a1, Sym::a0, Sym::b1, Sym::b0};

D2Params<MPoly> symbolic_d2() {
  return {MPoly::var(V2, Sym::a2), MPoly::var(V2, Sym::a1), MPoly::var(V2, Sym::a0),
          MPoly::var(V2, Sym::b)};
}
D3Params<MPoly> symbolic_d3() {
  return {MPoly::var(V3, Sym::a3), MPoly::var(V3, Sym::a2), MPoly::var(V3, Sym::a1),
          MPoly::var(V3, Sym::a0), MPoly::var(V3, Sym::b1), MPoly::var(V3, Sym::b0)};
}

UPoly<MPoly> cpoly(const MPoly& m) { return UPoly<MPoly>(m); }

D2Params<Rat> random_d2() {
  return {testutil::random_rat(6, 2), testutil::random_rat(6, 2), testutil::random_rat(6, 2),
          testutil::random_rat(6, 2)};
}
D3Params<Rat> random_d3() {
  return {testutil::random_rat(6, 2), testutil::random_rat(6, 2), testutil::random_rat(6, 2),
          testutil::random_rat(6, 2), testutil::random_rat(6, 2), testutil::random_rat(6, 2)};
}

Rat central_binomial(long n) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(2 * n),
               static_cast<unsigned long>(n));
  return Rat(b);
}

bool series_is_zero(const PSeries<Rat>& s) {
  for (int k = 0; k <= s.order(); ++k)
    if (!s.at(k).is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("defining matrix of an order-2 equation") {
  DNMatrix m = matrix_from_d2({Rat(0), Rat(-16), Rat(0), Rat(0)});
  CHECK(m.well_formed());
  CHECK(m.at(0, 1) == Rat(8));
  CHECK(m.at(0, 0) == Rat(0));
  CHECK(m.at(1, 1) == Rat(0));
  CHECK(m.at(0, 2) == Rat(0));

  DNMatrix z = matrix_from_d2({Rat(-7), Rat(-8), Rat(0), Rat(2)});
  CHECK(z.well_formed());
  CHECK(z.at(0, 0) == Rat(2));
  CHECK(z.at(1, 1) == Rat(3));
  CHECK(z.at(0, 1) == Rat(12));
  CHECK(z.at(0, 2) == Rat(36));
}

TEST_CASE("matrix <-> parameter round trips") {
  for (int trial = 0; trial < 200; ++trial) {
    D2Params<Rat> p2 = random_d2();
    DNMatrix m2 = matrix_from_d2(p2);
    CHECK(m2.well_formed());
    CHECK(d2_from_matrix(m2) == p2);

    D3Params<Rat> p3 = random_d3();
    DNMatrix m3 = matrix_from_d3(p3);
    CHECK(m3.well_formed());
    CHECK(d3_from_matrix(m3) == p3);
  }
  CHECK_THROWS_AS(d2_from_matrix(DNMatrix{3, {}}), std::invalid_argument);
  DNMatrix bad = DNMatrix::blank(2);
  bad.at(0, 1) = Rat(1);  // breaks persymmetry against a(1,2) = 0
  CHECK_THROWS_AS(d2_from_matrix(bad), std::invalid_argument);
}

TEST_CASE("order-2 operator in the D = t d/dt chart matches its closed form") {
  D2Params<MPoly> p = symbolic_d2();
  OperatorPair<MPoly> L = operator_form(p);
  const MPoly one = p.a2.one_like();

  // Infinity-side coefficients: F y'' + F' y' + (z - beta) y.
  CHECK(L.z_side.zcoeff[2] == p.F());
  CHECK(L.z_side.zcoeff[1] == p.F().derivative());
  CHECK(L.z_side.zcoeff[0] == UPoly<MPoly>::from_coeffs(one, {-p.b, one}));

  // Origin-side chart: P0 = D^2, P1 = a2 D^2 + a2 D - b,
  // P2 = a1 (D+1)^2, P3 = a0 (D+1)(D+2).
  UPoly<MPoly> D = UPoly<MPoly>::monomial(one, 1);
  UPoly<MPoly> D1 = D + cpoly(one);
  UPoly<MPoly> D2 = D1 + cpoly(one);
  REQUIRE(L.t_side.dcoeff.size() == 4);
  CHECK(L.t_side.op_order == 2);
  CHECK(L.t_side.indicial_shift == one);
  CHECK(L.t_side.dcoeff[0] == D * D);
  CHECK(L.t_side.dcoeff[1] == cpoly(p.a2) * D * D + cpoly(p.a2) * D - cpoly(p.b));
  CHECK(L.t_side.dcoeff[2] == cpoly(p.a1) * D1 * D1);
  CHECK(L.t_side.dcoeff[3] == cpoly(p.a0) * D1 * D2);
}

TEST_CASE("order-3 operator in the D chart matches its closed form") {
  D3Params<MPoly> p = symbolic_d3();
  OperatorPair<MPoly> L = operator_form(p);
  const MPoly one = p.a3.one_like();
  const MPoly half = one.from_rat_like(Rat(1, 2));

  CHECK(L.z_side.zcoeff[3] == p.F());
  CHECK(L.z_side.zcoeff[2] == p.F().derivative().scale(one.from_rat_like(Rat(3, 2))));
  CHECK(L.z_side.zcoeff[1] == p.F().derivative().derivative().scale(half) + p.G());
  CHECK(L.z_side.zcoeff[0] == p.G().derivative().scale(half));

  UPoly<MPoly> D = UPoly<MPoly>::monomial(one, 1);
  UPoly<MPoly> D1 = D + cpoly(one);
  UPoly<MPoly> D2 = D1 + cpoly(one);
  UPoly<MPoly> D3 = D2 + cpoly(one);
  UPoly<MPoly> Dh = D + cpoly(half);
  REQUIRE(L.t_side.dcoeff.size() == 5);
  CHECK(L.t_side.op_order == 3);
  CHECK(L.t_side.indicial_shift == one);
  CHECK(L.t_side.dcoeff[0] == D * D * D);
  CHECK(L.t_side.dcoeff[1] == Dh * (cpoly(p.a3) * (D * D + D) + cpoly(p.b1)));
  CHECK(L.t_side.dcoeff[2] == D1 * (cpoly(p.a2) * D1 * D1 + cpoly(p.b0)));
  CHECK(L.t_side.dcoeff[3] ==
        cpoly(p.a1) * D1 * (D1 + cpoly(half)) * D2);
  CHECK(L.t_side.dcoeff[4] == cpoly(p.a0) * D1 * D2 * D3);
}

TEST_CASE("worked t^2 coefficient of an order-3 operator") {
  D3Params<Rat> p{Rat(0), Rat(-44), Rat(0), Rat(-16), Rat(0), Rat(-4)};
  OperatorForm<Rat> L = operator_form(p).t_side;
  // (D+1)(-44 (D+1)^2 - 4)
  UPoly<Rat> D1 = UPoly<Rat>::from_coeffs(Rat(0), {Rat(1), Rat(1)});
  UPoly<Rat> expected = D1 * (D1 * D1).scale(Rat(-44)) - D1.scale(Rat(4));
  CHECK(L.dcoeff[2] == expected);
}

TEST_CASE("analytic solution of the worked order-2 row") {
  D2Params<Rat> p{Rat(-7), Rat(-8), Rat(0), Rat(2)};
  PSeries<Rat> u = phi_series(p, PhiKind::analytic, 8);
  CHECK(u.at(0) == Rat(1));
  CHECK(u.at(1) == Rat(2));
  CHECK(u.at(2) == Rat(10));
  CHECK(u.at(3) == Rat(56));
  CHECK(u.at(4) == Rat(346));
  CHECK(u.at(5) == Rat(2252));
}

TEST_CASE("leading solution coefficients in closed form") {
  D2Params<MPoly> p2 = symbolic_d2();
  PSeries<MPoly> u2 = phi_series(p2, PhiKind::analytic, 2);
  PSeries<MPoly> psi2 = phi_series(p2, PhiKind::log_part, 2);
  const MPoly a2 = p2.a2, a1 = p2.a1, b = p2.b;
  CHECK(u2.at(1) == b);
  CHECK(u2.at(2) == b * a2.div_long(-2) + (b * b).div_long(4) - a1.div_long(4));
  CHECK(psi2.at(1) == -a2 - b - b);
  CHECK(psi2.at(2) == (a2 * a2).div_long(2) + (a2 * b).div_long(2) -
                          (b * b).scale(Rat(3, 4)) - a1.div_long(4));

  D3Params<MPoly> p3 = symbolic_d3();
  PSeries<MPoly> u3 = phi_series(p3, PhiKind::analytic, 2);
  PSeries<MPoly> psi3 = phi_series(p3, PhiKind::log_part, 1);
  const MPoly a3 = p3.a3, b1 = p3.b1;
  CHECK(u3.at(1) == -b1.div_long(2));
  CHECK(u3.at(2) == (a3 * b1).scale(Rat(3, 16)) + (b1 * b1).scale(Rat(3, 32)) -
                        p3.a2.div_long(8) - p3.b0.div_long(8));
  CHECK(psi3.at(1) == -a3.div_long(2) + b1.div_long(2));
}

TEST_CASE("operator annihilates its Frobenius solutions") {
  for (int trial = 0; trial < 20; ++trial) {
    D2Params<Rat> p = random_d2();
    OperatorForm<Rat> L = operator_form(p).t_side;
    PSeries<Rat> u = frobenius_analytic(L, 30);
    PSeries<Rat> psi = frobenius_log_part(L, u, 30);
    CHECK(series_is_zero(apply_t_side(L, u)));
    auto [log_image, plain_image] = apply_t_side_log(L, u, psi);
    CHECK(series_is_zero(log_image));
    CHECK(series_is_zero(plain_image));
  }
  for (int trial = 0; trial < 10; ++trial) {
    D3Params<Rat> p = random_d3();
    OperatorForm<Rat> L = operator_form(p).t_side;
    PSeries<Rat> u = frobenius_analytic(L, 25);
    PSeries<Rat> psi = frobenius_log_part(L, u, 25);
    CHECK(series_is_zero(apply_t_side(L, u)));
    auto [log_image, plain_image] = apply_t_side_log(L, u, psi);
    CHECK(series_is_zero(log_image));
    CHECK(series_is_zero(plain_image));
  }
}

TEST_CASE("reduction to a three-term recurrence when a0 = 0") {
  for (int trial = 0; trial < 10; ++trial) {
    D2Params<Rat> p = random_d2();
    p.a0 = Rat(0);
    Rat A = -p.a2, B = p.a1, lam = p.b;
    PSeries<Rat> u = phi_series(p, PhiKind::analytic, 30);
    for (long n = 1; n <= 30; ++n) {
      Rat lhs = Rat(n * n) * u.at(static_cast<int>(n));
      Rat rhs = (A * Rat(n * (n - 1)) + lam) * u.at(static_cast<int>(n - 1));
      if (n >= 2) rhs = rhs - B * Rat((n - 1) * (n - 1)) * u.at(static_cast<int>(n - 2));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("shift acts as A -> A + eps on the defining matrix") {
  D2Params<Rat> p{Rat(1), Rat(-24), Rat(36), Rat(0)};
  D2Params<Rat> q = shift(p, Rat(-2));
  CHECK((q == D2Params<Rat>{Rat(7), Rat(-8), Rat(0), Rat(-2)}));

  for (int trial = 0; trial < 40; ++trial) {
    Rat eps = testutil::random_rat(9, 3);
    D2Params<Rat> a = random_d2();
    DNMatrix m0 = matrix_from_d2(a), m1 = matrix_from_d2(shift(a, eps));
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; j <= 2; ++j)
        CHECK(m1.at(i, j) == m0.at(i, j) + (i == j ? eps : Rat(0)));

    D3Params<Rat> c = random_d3();
    DNMatrix n0 = matrix_from_d3(c), n1 = matrix_from_d3(shift(c, eps));
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; j <= 3; ++j)
        CHECK(n1.at(i, j) == n0.at(i, j) + (i == j ? eps : Rat(0)));

    Rat eps2 = testutil::random_rat(9, 3);
    CHECK(shift(shift(a, eps), eps2) == shift(a, eps + eps2));
    CHECK(shift(shift(c, eps), eps2) == shift(c, eps + eps2));
  }
}

TEST_CASE("twist scales matrix entries by powers of lambda") {
  for (int trial = 0; trial < 40; ++trial) {
    Rat lam = Rat(testutil::random_int(1, 6), testutil::random_int(1, 3));
    if (testutil::random_int(0, 1)) lam = -lam;
    D3Params<Rat> p = random_d3();
    DNMatrix m0 = matrix_from_d3(p), m1 = matrix_from_d3(twist(p, lam));
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; j <= 3; ++j)
        CHECK(m1.at(i, j) == m0.at(i, j) * lam.pow(j - i + 1));
    D2Params<Rat> p2 = random_d2();
    DNMatrix k0 = matrix_from_d2(p2), k1 = matrix_from_d2(twist(p2, lam));
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; j <= 2; ++j)
        CHECK(k1.at(i, j) == k0.at(i, j) * lam.pow(j - i + 1));
    Rat mu = Rat(testutil::random_int(1, 4));
    CHECK(twist(twist(p, lam), mu) == twist(p, lam * mu));
    CHECK(twist(twist(p2, lam), mu) == twist(p2, lam * mu));
  }
}

TEST_CASE("twisted solutions are argument rescalings") {
  D3Params<Rat> p{Rat(-4), Rat(-88), Rat(-300), Rat(-304), Rat(-4), Rat(-8)};
  Rat lam(3);
  PSeries<Rat> u = phi_series(p, PhiKind::analytic, 20);
  PSeries<Rat> v = phi_series(twist(p, lam), PhiKind::analytic, 20);
  for (int n = 0; n <= 20; ++n) CHECK(v.at(n) == u.at(n) * lam.pow(n));

  // The same holds over a real quadratic field, e.g. lambda = sqrt(5).
  QuadElem root5(Rat(0), Rat(1), 5);
  D3Params<QuadElem> pq = d3_cast(p, root5);
  PSeries<QuadElem> uq = phi_series(pq, PhiKind::analytic, 12);
  PSeries<QuadElem> vq = phi_series(twist(pq, root5), PhiKind::analytic, 12);
  for (int n = 0; n <= 12; ++n) CHECK(vq.at(n) == uq.at(n) * root5.pow(n));
}

TEST_CASE("degenerate coefficient cubics and quartics are detected") {
  CHECK(nondegenerate(D2Params<Rat>{Rat(-7), Rat(-8), Rat(0), Rat(2)}));
  // (z-1)^2 (z+1) has a repeated root.
  CHECK_FALSE(nondegenerate(D2Params<Rat>{Rat(-1), Rat(-1), Rat(1), Rat(0)}));
  CHECK(nondegenerate(D3Params<Rat>{Rat(-4), Rat(-88), Rat(-300), Rat(-304), Rat(-4), Rat(-8)}));
  // z = 5 is a double root of z^4 + 2z^3 - 55z^2 - 100z + 1000.
  CHECK_FALSE(
      nondegenerate(D3Params<Rat>{Rat(2), Rat(-55), Rat(-100), Rat(1000), Rat(0), Rat(-25)}));
}

TEST_CASE("half operator") {
  D3Params<Rat> zero_row{Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)};
  OperatorPair<Rat> H = half_operator(zero_row);
  // z^4 y'' + 2 z^3 y' + (1/4) z^2 y.
  CHECK(H.z_side.zcoeff[2] == UPoly<Rat>::monomial(Rat(1), 4));
  CHECK(H.z_side.zcoeff[1] == UPoly<Rat>::monomial(Rat(2), 3));
  CHECK(H.z_side.zcoeff[0] == UPoly<Rat>::monomial(Rat(1, 4), 2));
  // Its local exponent at the origin-side chart is half-integral.
  CHECK(H.t_side.indicial_shift == Rat(1, 2));
  CHECK(H.t_side.dcoeff[0] == UPoly<Rat>::monomial(Rat(1), 2));

  for (int trial = 0; trial < 5; ++trial) {
    OperatorPair<Rat> L = half_operator(random_d3());
    CHECK(L.t_side.indicial_shift == Rat(1, 2));
    CHECK(series_is_zero(apply_t_side(L.t_side, frobenius_analytic(L.t_side, 20))));
  }
}

TEST_CASE("order-3 solutions are squares of half-operator solutions") {
  // Products of two solutions of the half operator solve the order-3
  // equation; checked at an ordinary point to order 40.
  for (int trial = 0; trial < 3; ++trial) {
    D3Params<Rat> p{Rat(testutil::random_int(-4, 4)), Rat(testutil::random_int(-4, 4)),
                    Rat(testutil::random_int(-4, 4)), Rat(testutil::random_int(-4, 4)),
                    Rat(testutil::random_int(-4, 4)), Rat(testutil::random_int(-4, 4))};
    ZSideForm<Rat> half = z_side_half(p);
    ZSideForm<Rat> full = z_side_d3(p);
    Rat z0(1);
    while (p.F().eval(z0).is_zero()) z0 = z0 + Rat(1);
    PSeries<Rat> y1 = local_solution_at(half, z0, {Rat(1), Rat(0)}, 43);
    PSeries<Rat> y2 = local_solution_at(half, z0, {Rat(0), Rat(1)}, 43);
    CHECK(series_is_zero(apply_z_side_at(half, z0, y1)));
    CHECK(series_is_zero(apply_z_side_at(half, z0, y2)));
    CHECK(series_is_zero(apply_z_side_at(full, z0, ps_mul(y1, y1))));
    CHECK(series_is_zero(apply_z_side_at(full, z0, ps_mul(y1, y2))));
    CHECK(series_is_zero(apply_z_side_at(full, z0, ps_mul(y2, y2))));
  }
  // F = z^4 vanishes at z = 0, so the origin is a singular point there.
  ZSideForm<Rat> half =
      z_side_half(D3Params<Rat>{Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)});
  CHECK_THROWS_AS(local_solution_at(half, Rat(0), {Rat(1), Rat(0)}, 10), std::domain_error);
  CHECK_THROWS_AS(local_solution_at(half, Rat(1), {Rat(1)}, 10), std::invalid_argument);
}

TEST_CASE("degree-2 correspondence between the two families") {
  D2Params<Rat> r1{Rat(-7), Rat(-8), Rat(0), Rat(2)};
  CHECK((bridge_d2_to_d3(r1) ==
         D3Params<Rat>{Rat(0), Rat(-28), Rat(0), Rat(-128), Rat(0), Rat(-4)}));
  D2Params<Rat> r2{Rat(0), Rat(-16), Rat(0), Rat(0)};
  CHECK(
      (bridge_d2_to_d3(r2) == D3Params<Rat>{Rat(0), Rat(0), Rat(0), Rat(-256), Rat(0), Rat(0)}));
  D2Params<Rat> r3{Rat(-12), Rat(32), Rat(0), Rat(4)};
  CHECK((bridge_d2_to_d3(r3) ==
         D3Params<Rat>{Rat(0), Rat(-48), Rat(0), Rat(512), Rat(0), Rat(-16)}));
  CHECK_THROWS_AS(bridge_d2_to_d3(D2Params<Rat>{Rat(1), Rat(1), Rat(1), Rat(0)}),
                  std::domain_error);

  // The corresponding solutions interleave: v_{2n} = binomial(2n, n) u_n and
  // the odd coefficients of v vanish.
  for (const D2Params<Rat>& p : {r1, r2, r3}) {
    PSeries<Rat> u = phi_series(p, PhiKind::analytic, 30);
    PSeries<Rat> v = phi_series(bridge_d2_to_d3(p), PhiKind::analytic, 60);
    for (long n = 0; n <= 30; ++n)
      CHECK(v.at(static_cast<int>(2 * n)) == central_binomial(n) * u.at(static_cast<int>(n)));
    for (int n = 1; n <= 59; n += 2) CHECK(v.at(n).is_zero());
  }
}

TEST_CASE("solutions over a prime field match rational reductions") {
  D2Params<Rat> p{Rat(-7), Rat(-8), Rat(0), Rat(2)};
  Fp ctx(0, 101);
  D2Params<Fp> pf = d2_cast(p, ctx);
  PSeries<Rat> u = phi_series(p, PhiKind::analytic, 40);
  PSeries<Fp> uf = phi_series(pf, PhiKind::analytic, 40);
  PSeries<Rat> psi = phi_series(p, PhiKind::log_part, 40);
  PSeries<Fp> psif = phi_series(pf, PhiKind::log_part, 40);
  for (int n = 0; n <= 40; ++n) {
    CHECK(uf.at(n) == ctx.from_rat_like(u.at(n)));
    CHECK(psif.at(n) == ctx.from_rat_like(psi.at(n)));
  }
  // The solver refuses orders at or beyond the characteristic.
  Fp small(0, 7);
  CHECK_THROWS_AS(phi_series(d2_cast(p, small), PhiKind::analytic, 7), std::domain_error);
}
