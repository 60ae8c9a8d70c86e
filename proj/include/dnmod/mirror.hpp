#pragma once

#include <stdexcept>
#include <vector>

#include "dnmod/dnop.hpp"
#include "dnmod/mpoly.hpp"
#include "dnmod/pseries.hpp"

namespace dnmod {

// Coefficients c_1..c_N of the weight-2 expansion attached to an equation.
// For an order-3 equation the index n refers to q^n; for an order-2 equation
// it refers to Q^n with Q = q^(1/2), and all even entries vanish.
template <CoefficientRing R>
struct QExpansion {
  std::vector<R> c;  // c[0] is an unused zero slot
  int nmax() const { return static_cast<int>(c.size()) - 1; }
  const R& at(int n) const {
    if (n < 1 || n > nmax()) throw std::out_of_range("QExpansion: index out of range");
    return c[static_cast<std::size_t>(n)];
  }
};

namespace detail {

// q(t)/t = exp(psi/phi0) to the given order.
template <CoefficientRing R>
PSeries<R> mirror_unit(const PSeries<R>& u, const PSeries<R>& psi) {
  return ps_exp(ps_div(psi, u));
}

// Coefficients of W(s(Q)) via Lagrange inversion, where s = Q * S(s):
// n c_n = [s^(n-1)] W'(s) S(s)^n.
template <CoefficientRing R>
QExpansion<R> lagrange_coeffs(const PSeries<R>& w_prime, const PSeries<R>& s_fun, int nmax) {
  const R ctx = w_prime.ctx();
  require_char_exceeds(ctx, nmax, "lagrange_coeffs");
  QExpansion<R> out;
  out.c.assign(static_cast<std::size_t>(nmax) + 1, ctx.zero_like());
  PSeries<R> pw = ps_one(ctx, nmax);
  for (int n = 1; n <= nmax; ++n) {
    pw = ps_mul(pw, s_fun);
    R acc = ctx.zero_like();
    for (int i = 0; i < n; ++i) acc = acc + w_prime.at(i) * pw.at(n - 1 - i);
    out.c[static_cast<std::size_t>(n)] = acc.div_long(n);
  }
  return out;
}

}  // namespace detail

// The reversed characteristic polynomial 1 + a2 t + a1 t^2 + a0 t^3
// (= t^3 F(1/t)) as a series.
template <CoefficientRing R>
PSeries<R> reversed_f_series(const D2Params<R>& p, int order) {
  PSeries<R> r(p.a2, order);
  r.at(0) = p.a2.one_like();
  if (order >= 1) r.at(1) = p.a2;
  if (order >= 2) r.at(2) = p.a1;
  if (order >= 3) r.at(3) = p.a0;
  return r;
}

// 1 + a3 t + a2 t^2 + a1 t^3 + a0 t^4 (= t^4 F(1/t)) as a series.
template <CoefficientRing R>
PSeries<R> reversed_f_series(const D3Params<R>& p, int order) {
  PSeries<R> r(p.a3, order);
  r.at(0) = p.a3.one_like();
  if (order >= 1) r.at(1) = p.a3;
  if (order >= 2) r.at(2) = p.a2;
  if (order >= 3) r.at(3) = p.a1;
  if (order >= 4) r.at(4) = p.a0;
  return r;
}

// q(t) = t exp(psi/phi0) = exp(phi1/phi0), as a series in t.
template <CoefficientRing R>
PSeries<R> mirror_q(const D2Params<R>& p, int order) {
  PSeries<R> u = phi_series(p, PhiKind::analytic, order);
  PSeries<R> psi = phi_series(p, PhiKind::log_part, order);
  return ps_shift_up(detail::mirror_unit(u, psi), 1).truncate(order);
}
template <CoefficientRing R>
PSeries<R> mirror_q(const D3Params<R>& p, int order) {
  PSeries<R> u = phi_series(p, PhiKind::analytic, order);
  PSeries<R> psi = phi_series(p, PhiKind::log_part, order);
  return ps_shift_up(detail::mirror_unit(u, psi), 1).truncate(order);
}

template <CoefficientRing R>
PSeries<R> t_of_q(const D2Params<R>& p, int order) {
  return ps_revert(mirror_q(p, order));
}
template <CoefficientRing R>
PSeries<R> t_of_q(const D3Params<R>& p, int order) {
  return ps_revert(mirror_q(p, order));
}

// phi0 re-expanded in q; weight 1 for order-2 equations, weight 2 for
// order-3 ones.
template <CoefficientRing R>
PSeries<R> phi0_of_q(const D2Params<R>& p, int order) {
  return ps_compose(phi_series(p, PhiKind::analytic, order), t_of_q(p, order));
}
template <CoefficientRing R>
PSeries<R> phi0_of_q(const D3Params<R>& p, int order) {
  return ps_compose(phi_series(p, PhiKind::analytic, order), t_of_q(p, order));
}

// c_n from t^(1/2) sqrt(1 + a2 t + a1 t^2 + a0 t^3) phi0(t)^2 = sum c_n Q^n,
// Q = exp(phi1/(2 phi0)).  Everything is expanded in s with t = s^2, where
// both sides become genuine power series; even coefficients vanish.
template <CoefficientRing R>
QExpansion<R> c_series_d2(const D2Params<R>& p, int nmax) {
  const R ctx = p.a2;
  int tn = nmax / 2 + 1;  // t-order needed to cover s-order nmax
  PSeries<R> u = phi_series(p, PhiKind::analytic, tn);
  PSeries<R> psi = phi_series(p, PhiKind::log_part, tn);
  PSeries<R> ratio_half = ps_div(psi, u).truncate(tn);
  for (int k = 0; k <= ratio_half.order(); ++k)
    ratio_half.at(k) = ratio_half.at(k).div_long(2);
  // s-chart objects: even series become series in s^2.
  PSeries<R> u_s = ps_inflate(u, 2, nmax);
  PSeries<R> root_s = ps_inflate(ps_sqrt(reversed_f_series(p, tn)), 2, nmax);
  PSeries<R> w = ps_shift_up(ps_mul(ps_mul(root_s, u_s), u_s), 1).truncate(nmax);
  // s(Q) = Q * S(s(Q)) with S = exp(-psi/(2 phi0)) evaluated at t = s^2.
  PSeries<R> s_fun = ps_inflate(ps_exp(ps_neg(ratio_half)), 2, nmax);
  PSeries<R> w_prime(ctx, nmax);
  for (int k = 0; k + 1 <= w.order(); ++k)
    w_prime.at(k) = w.at(k + 1) * ctx.from_long_like(k + 1);
  return detail::lagrange_coeffs(w_prime, s_fun, nmax);
}

// c_n from t phi0(t) = sum c_n q^n.
template <CoefficientRing R>
QExpansion<R> c_series_d3(const D3Params<R>& p, int nmax) {
  const R ctx = p.a3;
  PSeries<R> u = phi_series(p, PhiKind::analytic, nmax);
  PSeries<R> psi = phi_series(p, PhiKind::log_part, nmax);
  PSeries<R> s_fun = ps_exp(ps_neg(ps_div(psi, u)));  // t = q * S(t(q))
  PSeries<R> h_prime(ctx, nmax);                      // (t phi0)' = sum (m+1) u_m t^m
  for (int m = 0; m <= nmax; ++m) h_prime.at(m) = u.at(m) * ctx.from_long_like(m + 1);
  return detail::lagrange_coeffs(h_prime, s_fun, nmax);
}

// The whole pipeline with polynomial coefficients in the parameters.
inline QExpansion<MPoly> c_series_symbolic(int op_order, int nmax) {
  if (nmax > 30) throw std::invalid_argument("c_series_symbolic: nmax capped at 30");
  if (op_order == 2) {
    std::vector<Sym> v{Sym::a2, Sym::a1, Sym::a0, Sym::b};
    D2Params<MPoly> p{MPoly::var(v, Sym::a2), MPoly::var(v, Sym::a1), MPoly::var(v, Sym::a0),
                      MPoly::var(v, Sym::b)};
    return c_series_d2(p, nmax);
  }
  if (op_order == 3) {
    std::vector<Sym> v{Sym::a3, Sym::a2, Sym::a1, Sym::a0, Sym::b1, Sym::b0};
    D3Params<MPoly> p{MPoly::var(v, Sym::a3), MPoly::var(v, Sym::a2), MPoly::var(v, Sym::a1),
                      MPoly::var(v, Sym::a0), MPoly::var(v, Sym::b1), MPoly::var(v, Sym::b0)};
    return c_series_d3(p, nmax);
  }
  throw std::invalid_argument("c_series_symbolic: op_order must be 2 or 3");
}

// Residual of t phi0 dlog q/dt = F(1/t)^(-1/2) t^(-2), cleared of t-powers:
// phi0^2 (1 + t (psi/phi0)') - 1/(t^3 F(1/t)) for order 2 and
// phi0 (1 + t (psi/phi0)') - (t^4 F(1/t))^(-1/2) for order 3; identically 0.
template <CoefficientRing R>
PSeries<R> wronskian_residual(const D2Params<R>& p, int order) {
  PSeries<R> u = phi_series(p, PhiKind::analytic, order + 1);
  PSeries<R> psi = phi_series(p, PhiKind::log_part, order + 1);
  PSeries<R> lhs = ps_mul(
      ps_mul(u, u),
      ps_add(ps_one(p.a2, order + 1),
             ps_shift_up(ps_derivative(ps_div(psi, u)), 1).truncate(order + 1)));
  PSeries<R> rhs = ps_div(ps_one(p.a2, order + 1), reversed_f_series(p, order + 1));
  return ps_sub(lhs, rhs).truncate(order);
}
template <CoefficientRing R>
PSeries<R> wronskian_residual(const D3Params<R>& p, int order) {
  PSeries<R> u = phi_series(p, PhiKind::analytic, order + 1);
  PSeries<R> psi = phi_series(p, PhiKind::log_part, order + 1);
  PSeries<R> lhs = ps_mul(
      u, ps_add(ps_one(p.a3, order + 1),
                ps_shift_up(ps_derivative(ps_div(psi, u)), 1).truncate(order + 1)));
  PSeries<R> rhs =
      ps_div(ps_one(p.a3, order + 1), ps_sqrt(reversed_f_series(p, order + 1)));
  return ps_sub(lhs, rhs).truncate(order);
}

}  // namespace dnmod
