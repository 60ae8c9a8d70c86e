#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <vector>

#include "dnmod/algext.hpp"
#include "dnmod/curves.hpp"
#include "dnmod/mirror.hpp"
#include "dnmod/quad.hpp"
#include "test_util.hpp"

using namespace dnmod;

namespace {

const std::vector<Sym> V7{Sym::a3, Sym::a2, Sym::a1, Sym::a0, Sym::b1, Sym::b0, Sym::b};

D3Params<Rat> d3_row(long a3, long a2, long a1, long a0, long b1 = 0, long b0 = 0) {
  return {Rat(a3), Rat(a2), Rat(a1), Rat(a0), Rat(b1), Rat(b0)};
}

D3Params<Rat> random_d3_int() {
  return {Rat(testutil::random_int(-9, 9)), Rat(testutil::random_int(-9, 9)),
          Rat(testutil::random_int(-9, 9)), Rat(testutil::random_int(-9, 9)),
          Rat(testutil::random_int(-9, 9)), Rat(testutil::random_int(-9, 9))};
}

}  // namespace

TEST_CASE("cubic model coefficients match the displayed examples") {
  const WeierstrassCurve<Rat> w1 = spectral_d3(d3_row(0, 0, 0, -256));
  CHECK(w1.B == Rat(1024));
  CHECK(w1.C == Rat(0));
  CHECK(j_invariant(w1) == Rat(1728));

  const WeierstrassCurve<Rat> w2 = spectral_d3(d3_row(-4, -88, -300, -304));
  CHECK(w2.B == Rat(-496, 3));
  CHECK(w2.C == Rat(-40016, 27));
  CHECK(j_invariant(w2) == Rat(-122023936, 161051));

  const WeierstrassCurve<Rat> w3 = spectral_d3(d3_row(0, 0, -108, 0));
  CHECK(w3.B == Rat(0));
  CHECK(w3.C == Rat(11664));
  CHECK(j_invariant(w3) == Rat(0));

  const WeierstrassCurve<Rat> w4 = spectral_d3(d3_row(0, -44, 0, -16));
  CHECK(w4.B == Rat(-1744, 3));
  CHECK(w4.C == Rat(-221056, 27));

  // depressing the general cubic y^2 = z^3 + a2 z^2 + a1 z + a0 is inverse to
  // expanding it back out
  const GeneralCubicCurve<Rat> e{Rat(-7), Rat(-8), Rat(0)};
  const WeierstrassCurve<Rat> w = weierstrass_of_cubic(e);
  const UPoly<Rat> lhs = e.rhs().taylor_shift(-e.a2.div_long(3));  // z = x - a2/3
  CHECK(lhs == w.rhs());
}

TEST_CASE("cubic model is shift-invariant and twist-covariant") {
  // shift invariance, fully symbolically: the seventh symbol plays the shift
  D3Params<MPoly> p{MPoly::var(V7, Sym::a3), MPoly::var(V7, Sym::a2), MPoly::var(V7, Sym::a1),
                    MPoly::var(V7, Sym::a0), MPoly::var(V7, Sym::b1), MPoly::var(V7, Sym::b0)};
  const MPoly eps = MPoly::var(V7, Sym::b);
  const WeierstrassCurve<MPoly> base = spectral_d3(p);
  const WeierstrassCurve<MPoly> moved = spectral_d3(shift(p, eps));
  CHECK(moved.B == base.B);
  CHECK(moved.C == base.C);

  for (int trial = 0; trial < 30; ++trial) {
    const D3Params<Rat> q = random_d3_int();
    Rat lambda = testutil::random_rat(6, 3);
    if (lambda.is_zero()) lambda = Rat(2);
    const WeierstrassCurve<Rat> w = spectral_d3(q);
    const WeierstrassCurve<Rat> tw = spectral_d3(twist(q, lambda));
    CHECK(tw.B == lambda.pow(4) * w.B);
    CHECK(tw.C == lambda.pow(6) * w.C);
  }
}

TEST_CASE("singular inputs are detected through the discriminant") {
  CHECK_THROWS_AS(j_invariant(WeierstrassCurve<Rat>{Rat(-3), Rat(2)}), std::domain_error);

  // the cubic degenerates exactly when the quartic does
  for (int trial = 0; trial < 20; ++trial) {
    const Rat r(testutil::random_int(-4, 4));
    const Rat u(testutil::random_int(-4, 4));
    const Rat v(testutil::random_int(-4, 4));
    // F = (z - r)^2 (z^2 + u z + v)
    const D3Params<Rat> p{u - 2 * r, v - 2 * r * u + r * r, r * r * u - 2 * r * v, r * r * v,
                          Rat(0), Rat(0)};
    CHECK(discriminant(p.F()).is_zero());
    CHECK(cubic_disc(spectral_d3(p)).is_zero());
  }
  int nondeg_seen = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const D3Params<Rat> p = random_d3_int();
    if (discriminant(p.F()).is_zero()) continue;
    ++nondeg_seen;
    CHECK_FALSE(cubic_disc(spectral_d3(p)).is_zero());
  }
  CHECK(nondeg_seen >= 15);
}

TEST_CASE("quartic chart reproduces the worked row") {
  const UPoly<Rat> f = d3_row(-4, -88, -300, -304).F();
  const QuarticMap<Rat> m = quartic_to_weierstrass(f, Rat(-4));
  CHECK(m.at1 == Rat(-44));
  CHECK(m.at2 == Rat(56));
  CHECK(m.at3 == Rat(-20));
  CHECK(m.curve == spectral_d3(d3_row(-4, -88, -300, -304)));
  CHECK((m.node_model == GeneralCubicCurve<Rat>{Rat(56), Rat(880), Rat(1936)}));
  CHECK((m.base_point == AffinePoint<Rat>::affine(Rat(56, 3), Rat(-44))));
  CHECK(on_curve(m.curve, m.base_point));
  CHECK(weierstrass_of_cubic(m.node_model) == m.curve);

  CHECK_THROWS_AS(quartic_to_weierstrass(f, Rat(1)), std::domain_error);  // not a root
  // z = 1 is a double root here
  const UPoly<Rat> sq = UPoly<Rat>::from_coeffs(Rat(1), {Rat(1), Rat(-2), Rat(1)}) *
                        UPoly<Rat>::from_coeffs(Rat(1), {Rat(1), Rat(1), Rat(1)});
  CHECK(sq.deg() == 4);
  CHECK(sq.eval(Rat(1)).is_zero());
  CHECK_THROWS_AS(quartic_to_weierstrass(sq, Rat(1)), std::domain_error);
  const UPoly<Rat> cubic = UPoly<Rat>::from_coeffs(Rat(1), {Rat(0), Rat(1), Rat(0), Rat(1)});
  CHECK_THROWS_AS(quartic_to_weierstrass(cubic, Rat(0)), std::invalid_argument);
}

TEST_CASE("quartic chart identity holds as a polynomial") {
  // at1^2 F(z) = (z - z0) (N^3 + B N (z - z0)^2 + C (z - z0)^3) with
  // N = at1 + (at2/3)(z - z0); this is the squared chart relation with the
  // denominators cleared.
  const auto check_identity = [](const UPoly<Rat>& f, const Rat& z0) {
    const QuarticMap<Rat> m = quartic_to_weierstrass(f, z0);
    const UPoly<Rat> zm = UPoly<Rat>::from_coeffs(Rat(1), {-z0, Rat(1)});
    const UPoly<Rat> n =
        UPoly<Rat>::from_coeffs(Rat(1), {m.at1}) + zm.scale(m.at2.div_long(3));
    const UPoly<Rat> lhs = f.scale(m.at1 * m.at1);
    const UPoly<Rat> rhs =
        zm * (n * n * n + (n * zm * zm).scale(m.curve.B) + (zm * zm * zm).scale(m.curve.C));
    CHECK(lhs == rhs);
    CHECK(weierstrass_of_cubic(m.node_model) == m.curve);
  };

  check_identity(d3_row(-4, -88, -300, -304).F(), Rat(-4));
  // symmetric quartic with rational roots
  const UPoly<Rat> sym = d3_row(0, -5, 0, 4).F();
  check_identity(sym, Rat(1));
  check_identity(sym, Rat(-2));

  int done = 0;
  while (done < 10) {
    const Rat r(testutil::random_int(-5, 5));
    const UPoly<Rat> cubic =
        UPoly<Rat>::from_coeffs(Rat(1), {Rat(testutil::random_int(-6, 6)),
                                         Rat(testutil::random_int(-6, 6)),
                                         Rat(testutil::random_int(-6, 6)), Rat(1)});
    const UPoly<Rat> f = UPoly<Rat>::from_coeffs(Rat(1), {-r, Rat(1)}) * cubic;
    if (f.derivative().eval(r).is_zero()) continue;  // planted root must stay simple
    check_identity(f, r);
    ++done;
  }
}

TEST_CASE("chart is a curve map and pulls dx/y back to -dz/w") {
  // expand around an ordinary point (z = 0) where F takes a nonzero square
  // value, so w = sqrt(F) is an honest rational power series
  const UPoly<Rat> f = d3_row(0, -5, 0, 4).F();  // F(0) = 4
  const Rat z0(1);
  const QuarticMap<Rat> m = quartic_to_weierstrass(f, z0);
  const int order = 30;
  const Rat ctx(0);

  PSeries<Rat> fs(ctx, order);
  for (int k = 0; k <= f.deg(); ++k) fs.at(k) = f.coeff(k);
  const PSeries<Rat> w = ps_scale(ps_sqrt(ps_scale(fs, Rat(1, 4))), Rat(2));
  PSeries<Rat> one(ctx, order), zm(ctx, order), c23(ctx, order);
  one.at(0) = Rat(1);
  zm.at(0) = -z0;
  zm.at(1) = Rat(1);
  c23.at(0) = m.at2.div_long(3);
  const PSeries<Rat> invzm = ps_div(one, zm);
  const PSeries<Rat> x = ps_add(ps_scale(invzm, m.at1), c23);
  const PSeries<Rat> y = ps_scale(ps_mul(w, ps_mul(invzm, invzm)), m.at1);

  // the chart respects both curve equations: w^2 = F and y^2 = x^3 + Bx + C
  const PSeries<Rat> wsq = ps_sub(ps_mul(w, w), fs);
  PSeries<Rat> bx(ctx, order), cc(ctx, order);
  bx.at(0) = m.curve.B;
  cc.at(0) = m.curve.C;
  const PSeries<Rat> onc = ps_sub(ps_mul(y, y),
                                  ps_add(ps_mul(x, ps_mul(x, x)), ps_add(ps_mul(bx, x), cc)));
  // and the differential pulls back with a single sign: x'(z) w + y = 0
  const PSeries<Rat> pull = ps_add(ps_mul(ps_derivative(x), w), y);
  for (int k = 0; k <= pull.order(); ++k) {
    CHECK(wsq.at(k).is_zero());
    CHECK(onc.at(k).is_zero());
    CHECK(pull.at(k).is_zero());
  }
}

TEST_CASE("point counts match the pinned values") {
  const GeneralCubicCurve<Rat> e16{Rat(0), Rat(-16), Rat(0)};
  CHECK(ap_count(e16, 5) == -2);
  CHECK(ap_count(e16, 3) == 0);
  CHECK(ap_count(e16, 7) == 0);
  CHECK(ap_count(e16, 13) == 6);

  // the node model admits the prime 3 even though the depressed form has
  // 3-power denominators
  const QuarticMap<Rat> m = quartic_to_weierstrass(d3_row(-4, -88, -300, -304).F(), Rat(-4));
  CHECK(ap_count(m.node_model, 3) == -1);
  CHECK(ap_count(m.node_model, 5) == 1);
  CHECK(ap_count(m.node_model, 7) == -2);
  CHECK(ap_count(m.node_model, 13) == 4);
  CHECK(ap_count(m.node_model, 23) == -1);

  for (long p : detail::primes_up_to(499)) {
    if (!good_reduction(e16, p)) continue;
    const long a = ap_count(e16, p);
    CHECK(a * a <= 4 * p);
  }

  CHECK_THROWS_AS(ap_count(e16, 2), std::domain_error);
  CHECK_THROWS_AS(ap_count(e16, 9), std::domain_error);
  CHECK_THROWS_AS(ap_count(e16, 10007), std::domain_error);
  const GeneralCubicCurve<Rat> sing{Rat(0), Rat(-25), Rat(0)};  // 5 divides the discriminant
  CHECK_THROWS_AS(ap_count(sing, 5), std::domain_error);
  const GeneralCubicCurve<Rat> den{Rat(0), Rat(1, 5), Rat(0)};
  CHECK_THROWS_AS(ap_count(den, 5), std::domain_error);
}

TEST_CASE("coefficient tables carry the Hecke structure") {
  const GeneralCubicCurve<Rat> e16{Rat(0), Rat(-16), Rat(0)};
  const LCoeffs l = an_sequence(e16, 100);
  CHECK(l.bad_primes == std::vector<long>{2});
  CHECK(l.at(1) == 1);
  CHECK(l.at(5) == -2);
  CHECK(l.at(9) == l.at(3) * l.at(3) - 3);
  CHECK(l.at(25) == l.at(5) * l.at(5) - 5);
  CHECK(l.at(15) == l.at(3) * l.at(5));
  CHECK(l.at(45) == l.at(9) * l.at(5));
  CHECK(l.at(65) == l.at(5) * l.at(13));
  CHECK(l.is_excluded(2));
  CHECK(l.is_excluded(50));
  CHECK_FALSE(l.is_excluded(45));
  CHECK_THROWS_AS(l.at(0), std::out_of_range);
  CHECK_THROWS_AS(l.at(101), std::out_of_range);

  const QuarticMap<Rat> m = quartic_to_weierstrass(d3_row(-4, -88, -300, -304).F(), Rat(-4));
  const LCoeffs l11 = an_sequence(m.node_model, 30);
  CHECK(l11.bad_primes == std::vector<long>{2, 11});
  CHECK(l11.at(3) == -1);
  CHECK(l11.at(5) == 1);
  CHECK(l11.at(9) == -2);   // a_3^2 - 3
  CHECK(l11.at(15) == -1);  // a_3 a_5
  CHECK(l11.is_excluded(22));
  CHECK_FALSE(l11.is_excluded(15));
}

TEST_CASE("congruence verification accepts the true rows and rejects controls") {
  const QExpansion<Rat> c2 = c_series_d2(D2Params<Rat>{Rat(0), Rat(-16), Rat(0), Rat(0)}, 60);
  const GeneralCubicCurve<Rat> e16{Rat(0), Rat(-16), Rat(0)};
  const AsdReport pos2 = asd_verify(c2, e16, 31);
  CHECK(pos2.ok());
  CHECK(pos2.primes_checked == std::vector<long>{5, 7, 11, 13, 17, 19, 23, 29, 31});
  CHECK(pos2.primes_skipped == std::vector<long>{2, 3});

  const D3Params<Rat> row = d3_row(0, -44, 0, -16, 0, -4);
  const QExpansion<Rat> c3 = c_series_d3(row, 40);
  const GeneralCubicCurve<Rat> e20 = clear_denominators(spectral_d3(row));
  CHECK((e20 == GeneralCubicCurve<Rat>{Rat(0), Rat(-47088), Rat(-5968512)}));
  const AsdReport pos3 = asd_verify(c3, e20, 31);
  CHECK(pos3.ok());
  CHECK(pos3.primes_checked == std::vector<long>{7, 11, 13, 17, 19, 23, 29, 31});
  CHECK(pos3.primes_skipped == std::vector<long>{2, 3, 5});

  // declared denominators: multiples of a declared prime are skipped, the
  // rest still verify
  const AsdReport decl = asd_verify(c3, e20, 31, 40, mpz_class(7));
  CHECK(decl.ok());
  CHECK(decl.primes_checked == std::vector<long>{11, 13, 17, 19, 23, 29, 31});

  // perturbing the last parameter destroys integrality, which the verifier
  // must refuse rather than silently pass
  const QExpansion<Rat> broken = c_series_d3(d3_row(0, -44, 0, -16, 0, -3), 40);
  CHECK_THROWS_AS(asd_verify(broken, e20, 31), std::domain_error);

  // and a wrong curve with the true expansion must surface violations
  const GeneralCubicCurve<Rat> wrong{Rat(0), Rat(-17), Rat(0)};
  const AsdReport neg = asd_verify(c2, wrong, 13);
  CHECK_FALSE(neg.ok());
  CHECK(neg.violations.size() == 4);
  CHECK(neg.violations[0].p == 5);
  CHECK(neg.violations[0].n == 1);

  CHECK_THROWS_AS(asd_verify(c2, e16, 31, 500), std::invalid_argument);
}

TEST_CASE("group law and point orders over the rationals") {
  const WeierstrassCurve<Rat> e16{Rat(-16), Rat(0)};
  const auto inf = AffinePoint<Rat>::at_infinity(Rat(0));
  const auto t0 = AffinePoint<Rat>::affine(Rat(0), Rat(0));
  const auto t4 = AffinePoint<Rat>::affine(Rat(4), Rat(0));
  const auto tm4 = AffinePoint<Rat>::affine(Rat(-4), Rat(0));

  CHECK(group_law(e16, t0, inf) == t0);
  CHECK(group_law(e16, inf, t4) == t4);
  CHECK(group_law(e16, t0, t0).infinite);
  CHECK(group_law(e16, t0, t4) == tm4);  // the three 2-torsion points sum to 0
  CHECK(point_order(e16, t0) == 2);
  CHECK(point_order(e16, t4) == 2);
  CHECK(point_order(e16, inf) == 1);

  const QuarticMap<Rat> m = quartic_to_weierstrass(d3_row(-4, -88, -300, -304).F(), Rat(-4));
  CHECK(point_order(m.curve, m.base_point) == 5);
  // the multiples stay distinct until the order is reached
  auto acc = m.base_point;
  for (int k = 2; k < 5; ++k) {
    acc = group_law(m.curve, acc, m.base_point);
    CHECK_FALSE(acc.infinite);
  }

  const WeierstrassCurve<Rat> free{Rat(0), Rat(-2)};
  const auto gen = AffinePoint<Rat>::affine(Rat(3), Rat(5));
  CHECK(point_order(free, gen) == std::nullopt);

  CHECK_THROWS_AS(group_law(e16, AffinePoint<Rat>::affine(Rat(1), Rat(1)), t0),
                  std::invalid_argument);
  CHECK_THROWS_AS(point_order(e16, t0, 0), std::invalid_argument);
}

TEST_CASE("point orders over extension fields") {
  // biquadratic row: the root generates a degree-4 field
  const UPoly<Rat> f = d3_row(0, -44, 0, -16).F();
  const auto mod = AlgExt::make_modulus(f);
  const AlgExt z0 = AlgExt::generator(mod);
  const AlgExt ctx = AlgExt::from_rat(mod, Rat(0));
  const D3Params<AlgExt> lifted = d3_cast(d3_row(0, -44, 0, -16), ctx);
  const QuarticMap<AlgExt> m = quartic_to_weierstrass(lifted.F(), z0);
  CHECK(on_curve(m.curve, m.base_point));
  CHECK(point_order(m.curve, m.base_point) == 4);

  // biquadratic with a square resolvent root: quadratic field suffices
  const QuadElem root(Rat(0), Rat(1), 2);  // sqrt 2
  const D3Params<QuadElem> p2 = d3_cast(d3_row(0, -3, 0, 2), root.zero_like());
  const QuarticMap<QuadElem> mq = quartic_to_weierstrass(p2.F(), root);
  CHECK((mq.curve == WeierstrassCurve<QuadElem>{QuadElem(Rat(-11), Rat(0), 2),
                                                QuadElem(Rat(14), Rat(0), 2)}));
  CHECK((mq.base_point ==
         AffinePoint<QuadElem>::affine(QuadElem(Rat(3), Rat(0), 2), QuadElem(Rat(0), Rat(2), 2))));
  const auto doubled = group_law(mq.curve, mq.base_point, mq.base_point);
  CHECK((doubled == AffinePoint<QuadElem>::affine(QuadElem(Rat(2), Rat(0), 2),
                                                  QuadElem(Rat(0), Rat(0), 2))));
  CHECK(point_order(mq.curve, mq.base_point) == 4);
}

TEST_CASE("degree-2 relation between the two cubic models") {
  const IsogenyReport r1 = isogeny_checks(Rat(0), Rat(-16));
  CHECK(r1.isogeny_identity_ok);
  CHECK(r1.model_identity_ok);
  CHECK(r1.ap_agree);
  CHECK(r1.ok());
  CHECK(r1.primes_compared.size() >= 10);

  const IsogenyReport r2 = isogeny_checks(Rat(-7), Rat(-8));
  CHECK(r2.ok());

  CHECK_THROWS_AS(isogeny_checks(Rat(2), Rat(1)), std::domain_error);   // a2^2 = 4 a1
  CHECK_THROWS_AS(isogeny_checks(Rat(3), Rat(0)), std::domain_error);   // a1 = 0
}

TEST_CASE("denominator clearing preserves point counts") {
  const WeierstrassCurve<Rat> w = spectral_d3(d3_row(0, -44, 0, -16));
  const GeneralCubicCurve<Rat> cleared = clear_denominators(w);
  CHECK(cleared.a1.is_integer());
  CHECK(cleared.a0.is_integer());
  for (long p : std::vector<long>{7, 11, 13, 17, 19, 23}) {
    if (!good_reduction(w, p) || !good_reduction(cleared, p)) continue;
    CHECK(ap_count(w, p) == ap_count(cleared, p));
  }
  CHECK(ap_count(cleared, 7) == 2);
  CHECK(ap_count(cleared, 17) == -6);
  CHECK(ap_count(cleared, 19) == -4);

  // already-integral input is returned unchanged up to the forced a2 = 0
  const WeierstrassCurve<Rat> wi{Rat(-16), Rat(0)};
  const GeneralCubicCurve<Rat> ci = clear_denominators(wi);
  CHECK(ci.a1 == Rat(-16));
  CHECK(ci.a0 == Rat(0));
}

TEST_CASE("cubic model formulas reduce consistently mod p") {
  const std::uint64_t p = 101;
  const Fp ctx(0, p);
  for (int trial = 0; trial < 20; ++trial) {
    const D3Params<Rat> q = random_d3_int();
    const WeierstrassCurve<Rat> w = spectral_d3(q);
    const WeierstrassCurve<Fp> wp = spectral_d3(d3_cast(q, ctx));
    CHECK(wp.B == Fp::from_rat(w.B, p));
    CHECK(wp.C == Fp::from_rat(w.C, p));
  }
}
