#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dnmod/pseries.hpp"
#include "dnmod/rat.hpp"
#include "dnmod/ring.hpp"
#include "dnmod/upoly.hpp"

namespace dnmod {

// Defining matrix of a determinantal equation: (N+1)x(N+1), zero above the
// first superdiagonal, ones on it, and persymmetric below it.
struct DNMatrix {
  int order;  // N = 2 or 3
  std::vector<std::vector<Rat>> a;

  static DNMatrix blank(int n) {
    DNMatrix m{n, std::vector<std::vector<Rat>>(static_cast<std::size_t>(n) + 1,
                                                std::vector<Rat>(static_cast<std::size_t>(n) + 1,
                                                                 Rat(0)))};
    for (int i = 0; i + 1 <= n; ++i) m.a[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(i)] = Rat(1);
    return m;
  }
  const Rat& at(int i, int j) const { return a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  Rat& at(int i, int j) { return a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  // The defining conditions: a_ij = 0 for i-j > 1, a_ij = 1 for i-j = 1,
  // a_ij = a_{N-j,N-i} for i-j < 1.
  bool well_formed() const {
    for (int i = 0; i <= order; ++i)
      for (int j = 0; j <= order; ++j) {
        if (i - j > 1 && !at(i, j).is_zero()) return false;
        if (i - j == 1 && at(i, j) != Rat(1)) return false;
        if (i - j < 1 && at(i, j) != at(order - j, order - i)) return false;
      }
    return true;
  }
};

template <CoefficientRing R>
struct D2Params {
  R a2, a1, a0, b;
  // F(z) = z^3 + a2 z^2 + a1 z + a0.
  UPoly<R> F() const { return UPoly<R>::from_coeffs(a2, {a0, a1, a2, a2.one_like()}); }
  bool operator==(const D2Params& o) const {
    return a2 == o.a2 && a1 == o.a1 && a0 == o.a0 && b == o.b;
  }
  std::string to_string() const {
    return "(" + a2.to_string() + "," + a1.to_string() + "," + a0.to_string() + ";" +
           b.to_string() + ")";
  }
};

template <CoefficientRing R>
struct D3Params {
  R a3, a2, a1, a0, b1, b0;
  // F(z) = z^4 + a3 z^3 + a2 z^2 + a1 z + a0.
  UPoly<R> F() const {
    return UPoly<R>::from_coeffs(a3, {a0, a1, a2, a3, a3.one_like()});
  }
  // G(z) = z^2 + b1 z + b0.
  UPoly<R> G() const { return UPoly<R>::from_coeffs(a3, {b0, b1, a3.one_like()}); }
  bool operator==(const D3Params& o) const {
    return a3 == o.a3 && a2 == o.a2 && a1 == o.a1 && a0 == o.a0 && b1 == o.b1 && b0 == o.b0;
  }
  std::string to_string() const {
    return "(" + a3.to_string() + "," + a2.to_string() + "," + a1.to_string() + "," +
           a0.to_string() + ";" + b1.to_string() + "," + b0.to_string() + ")";
  }
};

template <CoefficientRing R>
D2Params<R> d2_cast(const D2Params<Rat>& p, const R& ctx) {
  return {ctx.from_rat_like(p.a2), ctx.from_rat_like(p.a1), ctx.from_rat_like(p.a0),
          ctx.from_rat_like(p.b)};
}
template <CoefficientRing R>
D3Params<R> d3_cast(const D3Params<Rat>& p, const R& ctx) {
  return {ctx.from_rat_like(p.a3), ctx.from_rat_like(p.a2), ctx.from_rat_like(p.a1),
          ctx.from_rat_like(p.a0), ctx.from_rat_like(p.b1), ctx.from_rat_like(p.b0)};
}

// Operator written at the origin-side normalization: sum_k t^k P_k(D) with
// D = t d/dt, conjugated by t^indicial_shift so that P_0(D) = D^op_order.
// Solutions of the un-conjugated operator are t^indicial_shift times the
// Frobenius solutions of this form.
template <CoefficientRing R>
struct OperatorForm {
  int op_order;
  std::vector<UPoly<R>> dcoeff;
  R indicial_shift;
};

// Operator at the infinity-side chart: sum_j zcoeff[j](z) (d/dz)^j.
template <CoefficientRing R>
struct ZSideForm {
  std::vector<UPoly<R>> zcoeff;
  int op_order() const { return static_cast<int>(zcoeff.size()) - 1; }
};

template <CoefficientRing R>
struct OperatorPair {
  ZSideForm<R> z_side;
  OperatorForm<R> t_side;
};

namespace detail {

// Falling-factorial polynomial D(D-1)...(D-i+1) in the D variable.
template <CoefficientRing R>
UPoly<R> falling_factorial(const R& ctx, int i) {
  UPoly<R> acc(ctx.one_like());
  for (int r = 0; r < i; ++r)
    acc = acc * UPoly<R>::from_coeffs(ctx, {ctx.from_long_like(-r), ctx.one_like()});
  return acc;
}

// Mechanical chart change: substitute z = 1/t and d/dz = -t^2 d/dt into
// sum_j Q_j(z) (d/dz)^j, clear the t-poles with the smallest power of t,
// apply the alternating sign (-1)^order, and rewrite in D = t d/dt.  The
// result is returned before any conjugation (P_0 has its natural roots).
template <CoefficientRing R>
std::vector<UPoly<R>> t_chart(const ZSideForm<R>& L) {
  const R ctx = L.zcoeff.front().ctx();
  int m = L.op_order();
  // Terms of (-t^2 d/dt)^j as a map (a, i) -> coefficient for t^a (d/dt)^i.
  using Key = std::pair<int, int>;
  std::vector<std::map<Key, R>> dz_pow(static_cast<std::size_t>(m) + 1);
  dz_pow[0].emplace(Key{0, 0}, ctx.one_like());
  for (int j = 1; j <= m; ++j)
    for (const auto& [key, c] : dz_pow[static_cast<std::size_t>(j - 1)]) {
      auto [a, i] = key;
      // t^a d^i (-t^2 d) = -(t^(a+2) d^(i+1) + 2i t^(a+1) d^i + i(i-1) t^a d^(i-1)).
      auto add = [&](int aa, int ii, const R& v) {
        auto [it, fresh] = dz_pow[static_cast<std::size_t>(j)].emplace(Key{aa, ii}, v);
        if (!fresh) it->second = it->second + v;
      };
      add(a + 2, i + 1, -c);
      if (i >= 1) add(a + 1, i, -(c * ctx.from_long_like(2 * i)));
      if (i >= 2) add(a, i - 1, -(c * ctx.from_long_like(static_cast<long>(i) * (i - 1))));
    }
  // Assemble Q_j(1/t) * (-t^2 d/dt)^j over the Laurent chart.
  std::map<Key, R> laurent;
  for (int j = 0; j <= m; ++j) {
    const UPoly<R>& q = L.zcoeff[static_cast<std::size_t>(j)];
    for (int c = 0; c <= q.deg(); ++c) {
      if (q.coeff(c).is_zero()) continue;
      for (const auto& [key, v] : dz_pow[static_cast<std::size_t>(j)]) {
        auto [a, i] = key;
        Key k{a - c, i};
        R add = q.coeff(c) * v;
        auto [it, fresh] = laurent.emplace(k, add);
        if (!fresh) it->second = it->second + add;
      }
    }
  }
  // Clear poles of t^(a-i) and convert t^a d^i -> t^(a-i) FF(D, i).
  int min_power = 0;
  for (const auto& [key, v] : laurent) {
    if (v.is_zero()) continue;
    min_power = std::min(min_power, key.first - key.second);
  }
  std::vector<UPoly<R>> P;
  bool negate = (m % 2 == 1);
  for (const auto& [key, v] : laurent) {
    if (v.is_zero()) continue;
    auto [a, i] = key;
    int k = a - i - min_power;
    while (static_cast<int>(P.size()) <= k) P.push_back(UPoly<R>::zero(ctx));
    R coeff = negate ? -v : v;
    P[static_cast<std::size_t>(k)] =
        P[static_cast<std::size_t>(k)] + falling_factorial(ctx, i).scale(coeff);
  }
  if (P.empty()) P.push_back(UPoly<R>::zero(ctx));
  return P;
}

}  // namespace detail

// D-form of a z-side operator, conjugated so that P_0(D) = D^order.  Fails
// when the indicial polynomial at t = 0 is not a perfect power (D - s)^order,
// which cannot happen for the families built here.
template <CoefficientRing R>
OperatorForm<R> normalize_t_side(const ZSideForm<R>& L) {
  const R ctx = L.zcoeff.front().ctx();
  int m = L.op_order();
  std::vector<UPoly<R>> P = detail::t_chart(L);
  UPoly<R>& P0 = P.front();
  if (P0.deg() != m) throw std::domain_error("normalize_t_side: unexpected indicial degree");
  R lead_inv = P0.lc().inv();
  for (UPoly<R>& pk : P) pk = pk.scale(lead_inv);
  R s = (-P0.coeff(m - 1)).div_long(m);
  UPoly<R> target = UPoly<R>::monomial(ctx.one_like(), m);
  for (UPoly<R>& pk : P) pk = pk.taylor_shift(s);
  if (P.front() != target)
    throw std::domain_error("normalize_t_side: indicial polynomial is not (D-s)^order");
  return OperatorForm<R>{m, std::move(P), s};
}

// The explicit order-2 operator: F(z) (d/dz)^2 + F'(z) (d/dz) + (z - beta).
template <CoefficientRing R>
ZSideForm<R> z_side_d2(const D2Params<R>& p) {
  UPoly<R> F = p.F();
  return ZSideForm<R>{{UPoly<R>::from_coeffs(p.a2, {-p.b, p.a2.one_like()}), F.derivative(), F}};
}

// The explicit order-3 operator:
// F (d/dz)^3 + (3/2) F' (d/dz)^2 + (F''/2 + G) (d/dz) + G'/2.
template <CoefficientRing R>
ZSideForm<R> z_side_d3(const D3Params<R>& p) {
  UPoly<R> F = p.F(), G = p.G();
  UPoly<R> Fp = F.derivative();
  return ZSideForm<R>{{G.derivative().scale(p.a3.from_rat_like(Rat(1, 2))),
                       Fp.derivative().scale(p.a3.from_rat_like(Rat(1, 2))) + G,
                       Fp.scale(p.a3.from_rat_like(Rat(3, 2))), F}};
}

// The half operator whose symmetric square is the order-3 equation:
// F (d/dz)^2 + (1/2) F' (d/dz) + (1/4) G.
template <CoefficientRing R>
ZSideForm<R> z_side_half(const D3Params<R>& p) {
  UPoly<R> F = p.F(), G = p.G();
  return ZSideForm<R>{{G.scale(p.a3.from_rat_like(Rat(1, 4))),
                       F.derivative().scale(p.a3.from_rat_like(Rat(1, 2))), F}};
}

template <CoefficientRing R>
OperatorPair<R> operator_form(const D2Params<R>& p) {
  ZSideForm<R> z = z_side_d2(p);
  return OperatorPair<R>{z, normalize_t_side(z)};
}
template <CoefficientRing R>
OperatorPair<R> operator_form(const D3Params<R>& p) {
  ZSideForm<R> z = z_side_d3(p);
  return OperatorPair<R>{z, normalize_t_side(z)};
}
template <CoefficientRing R>
OperatorPair<R> half_operator(const D3Params<R>& p) {
  ZSideForm<R> z = z_side_half(p);
  return OperatorPair<R>{z, normalize_t_side(z)};
}

// --- matrix <-> parameter recovery ------------------------------------------

inline DNMatrix matrix_from_d2(const D2Params<Rat>& p) {
  DNMatrix m = DNMatrix::blank(2);
  Rat b = p.b;
  m.at(0, 0) = b;
  m.at(1, 1) = -2 * b - p.a2;
  m.at(0, 1) = Rat(-3, 2) * b * b - b * p.a2 - p.a1.div_long(2);
  m.at(0, 2) = -(b.pow(3)) - b * b * p.a2 - b * p.a1 - p.a0;
  m.at(1, 2) = m.at(0, 1);
  m.at(2, 2) = m.at(0, 0);
  return m;
}

inline D2Params<Rat> d2_from_matrix(const DNMatrix& m) {
  if (m.order != 2 || !m.well_formed())
    throw std::invalid_argument("d2_from_matrix: not a well-formed order-2 matrix");
  Rat b = m.at(0, 0);
  Rat a2 = -2 * b - m.at(1, 1);
  Rat a1 = -2 * m.at(0, 1) - 3 * b * b - 2 * b * a2;
  Rat a0 = -m.at(0, 2) - b.pow(3) - b * b * a2 - b * a1;
  return {a2, a1, a0, b};
}

inline DNMatrix matrix_from_d3(const D3Params<Rat>& p) {
  DNMatrix m = DNMatrix::blank(3);
  Rat a00 = -p.b1.div_long(2);
  Rat a11 = (p.b1 - p.a3).div_long(2);
  Rat s1 = p.a2 - (4 * a00 * a11 + a00 * a00 + a11 * a11);  // = -2 a01 - a12
  Rat s2 = p.b0 - 2 * a00 * a11 + a11 * a11;                // = -2 a01 + a12
  Rat a12 = (s2 - s1).div_long(2);
  Rat a01 = -(s1 + s2).div_long(4);
  Rat a02 =
      -(p.a1 + 2 * a11 * a00 * a00 - 2 * a00 * (a01 - a11 * a11 + a12) - 2 * a11 * a01)
           .div_long(2);
  Rat a03 = -p.a0 + 2 * a00 * a02 + (a11 * a11 - a12) * a00 * a00 - 2 * a11 * a01 * a00 +
            a01 * a01;
  m.at(0, 0) = a00;
  m.at(0, 1) = a01;
  m.at(0, 2) = a02;
  m.at(0, 3) = a03;
  m.at(1, 1) = a11;
  m.at(1, 2) = a12;
  m.at(1, 3) = a02;  // persymmetry: a_{1,3} = a_{0,2}
  m.at(2, 2) = a11;
  m.at(2, 3) = a01;
  m.at(3, 3) = a00;
  return m;
}

inline D3Params<Rat> d3_from_matrix(const DNMatrix& m) {
  if (m.order != 3 || !m.well_formed())
    throw std::invalid_argument("d3_from_matrix: not a well-formed order-3 matrix");
  Rat a00 = m.at(0, 0), a01 = m.at(0, 1), a02 = m.at(0, 2), a03 = m.at(0, 3);
  Rat a11 = m.at(1, 1), a12 = m.at(1, 2);
  Rat a3 = -2 * a11 - 2 * a00;
  Rat a2 = 4 * a00 * a11 + a00 * a00 + a11 * a11 - 2 * a01 - a12;
  Rat a1 = -2 * a02 - 2 * a11 * a00 * a00 + 2 * a00 * (a01 - a11 * a11 + a12) + 2 * a11 * a01;
  Rat a0 = -a03 + 2 * a00 * a02 + (a11 * a11 - a12) * a00 * a00 - 2 * a11 * a01 * a00 + a01 * a01;
  Rat b1 = -2 * a00;
  Rat b0 = 2 * a00 * a11 - a11 * a11 - 2 * a01 + a12;
  return {a3, a2, a1, a0, b1, b0};
}

// --- Frobenius solutions -----------------------------------------------------

enum class PhiKind { analytic, log_part };

// Analytic solution u (u_0 = 1) of sum_k t^k P_k(D) with P_0 = D^order:
// n^order u_n = -sum_{k>=1} P_k(n-k) u_{n-k}.
template <CoefficientRing R>
PSeries<R> frobenius_analytic(const OperatorForm<R>& L, int order) {
  const R ctx = L.dcoeff.front().ctx();
  detail::require_char_exceeds(ctx, order, "frobenius_analytic");
  PSeries<R> u(ctx, order);
  u.at(0) = ctx.one_like();
  int kmax = static_cast<int>(L.dcoeff.size()) - 1;
  for (int n = 1; n <= order; ++n) {
    R acc = ctx.zero_like();
    for (int k = 1; k <= std::min(n, kmax); ++k)
      acc = acc + L.dcoeff[static_cast<std::size_t>(k)].eval_long(n - k) * u.at(n - k);
    R head = ctx.from_long_like(n);
    R headpow = ctx.one_like();
    for (int r = 0; r < L.op_order; ++r) headpow = headpow * head;
    u.at(n) = -(acc * headpow.inv());
  }
  return u;
}

// psi with psi_0 = 0 such that log(t) u + psi is annihilated to the given
// order: n^ord psi_n = -sum_{k>=1} P_k(n-k) psi_{n-k} - sum_{k>=0} P'_k(n-k) u_{n-k}.
template <CoefficientRing R>
PSeries<R> frobenius_log_part(const OperatorForm<R>& L, const PSeries<R>& u, int order) {
  const R ctx = L.dcoeff.front().ctx();
  detail::require_char_exceeds(ctx, order, "frobenius_log_part");
  PSeries<R> psi(ctx, order);
  int kmax = static_cast<int>(L.dcoeff.size()) - 1;
  std::vector<UPoly<R>> dP;
  dP.reserve(L.dcoeff.size());
  for (const auto& pk : L.dcoeff) dP.push_back(pk.derivative());
  for (int n = 1; n <= order; ++n) {
    R acc = ctx.zero_like();
    for (int k = 1; k <= std::min(n, kmax); ++k)
      acc = acc + L.dcoeff[static_cast<std::size_t>(k)].eval_long(n - k) * psi.at(n - k);
    for (int k = 0; k <= std::min(n, kmax); ++k)
      acc = acc + dP[static_cast<std::size_t>(k)].eval_long(n - k) * u.at(n - k);
    R head = ctx.from_long_like(n);
    R headpow = ctx.one_like();
    for (int r = 0; r < L.op_order; ++r) headpow = headpow * head;
    psi.at(n) = -(acc * headpow.inv());
  }
  return psi;
}

template <CoefficientRing R>
PSeries<R> phi_series(const D2Params<R>& p, PhiKind kind, int order) {
  OperatorForm<R> L = operator_form(p).t_side;
  PSeries<R> u = frobenius_analytic(L, order);
  return kind == PhiKind::analytic ? u : frobenius_log_part(L, u, order);
}
template <CoefficientRing R>
PSeries<R> phi_series(const D3Params<R>& p, PhiKind kind, int order) {
  OperatorForm<R> L = operator_form(p).t_side;
  PSeries<R> u = frobenius_analytic(L, order);
  return kind == PhiKind::analytic ? u : frobenius_log_part(L, u, order);
}

// Apply sum_k t^k P_k(D) to a plain series.
template <CoefficientRing R>
PSeries<R> apply_t_side(const OperatorForm<R>& L, const PSeries<R>& f) {
  PSeries<R> out(f.ctx(), f.order());
  for (int k = 0; k < static_cast<int>(L.dcoeff.size()); ++k) {
    const UPoly<R>& pk = L.dcoeff[static_cast<std::size_t>(k)];
    if (pk.is_zero()) continue;
    for (int n = 0; n + k <= f.order(); ++n)
      out.at(n + k) = out.at(n + k) + pk.eval_long(n) * f.at(n);
  }
  return out;
}

// Apply the operator to log(t) u + psi; returns the pair (log-part, plain
// part) of the image, using f(D)[log t * h] = log t * f(D) h + f'(D) h.
template <CoefficientRing R>
std::pair<PSeries<R>, PSeries<R>> apply_t_side_log(const OperatorForm<R>& L,
                                                   const PSeries<R>& u,
                                                   const PSeries<R>& psi) {
  OperatorForm<R> dL = L;
  for (auto& pk : dL.dcoeff) pk = pk.derivative();
  return {apply_t_side(L, u), ps_add(apply_t_side(L, psi), apply_t_side(dL, u))};
}

// Apply sum_j Q_j(z) (d/dz)^j to a local series in s = z - z0.
template <CoefficientRing R>
PSeries<R> apply_z_side_at(const ZSideForm<R>& L, const R& z0, const PSeries<R>& y) {
  int m = L.op_order();
  int out_order = std::max(0, y.order() - m);
  PSeries<R> out(y.ctx(), out_order);
  PSeries<R> deriv = y;
  for (int j = 0; j <= m; ++j) {
    UPoly<R> qj = L.zcoeff[static_cast<std::size_t>(j)].taylor_shift(z0);
    out = ps_add(out, ps_mul(series_from_poly(qj, out_order), deriv));
    if (j < m) deriv = ps_derivative(deriv);
  }
  return out;
}

// Local power-series solution at an ordinary point z0 (leading coefficient
// nonzero there), with prescribed derivatives y^(i)(z0)/i! = initial[i].
template <CoefficientRing R>
PSeries<R> local_solution_at(const ZSideForm<R>& L, const R& z0, const std::vector<R>& initial,
                             int order) {
  int m = L.op_order();
  if (static_cast<int>(initial.size()) != m)
    throw std::invalid_argument("local_solution_at: need exactly op_order initial values");
  const R ctx = z0;
  detail::require_char_exceeds(ctx, order + m, "local_solution_at");
  R lead = L.zcoeff[static_cast<std::size_t>(m)].eval(z0);
  if (lead.is_zero()) throw std::domain_error("local_solution_at: z0 is a singular point");
  std::vector<UPoly<R>> q;
  q.reserve(L.zcoeff.size());
  for (const auto& c : L.zcoeff) q.push_back(c.taylor_shift(z0));
  PSeries<R> y(ctx, order);
  for (int i = 0; i < m; ++i)
    if (i <= order) y.at(i) = initial[static_cast<std::size_t>(i)];
  // ff(n, j) = n! / (n-j)! as a ring element.
  auto ff = [&ctx](int n, int j) {
    R acc = ctx.one_like();
    for (int r = 0; r < j; ++r) acc = acc * ctx.from_long_like(n - r);
    return acc;
  };
  for (int N = 0; N + m <= order; ++N) {
    // Coefficient of s^N in sum_j q_j(s) y^(j)(s) must vanish; the only
    // appearance of y_{N+m} is via l = 0, j = m.
    R acc = ctx.zero_like();
    for (int j = 0; j <= m; ++j)
      for (int l = 0; l <= std::min(N, q[static_cast<std::size_t>(j)].deg()); ++l) {
        int n = N - l;
        if (n + j == N + m && j == m && l == 0) continue;
        R term = q[static_cast<std::size_t>(j)].coeff(l) * y.at(n + j) * ff(n + j, j);
        acc = acc + term;
      }
    y.at(N + m) = -(acc * (lead * ff(N + m, m)).inv());
  }
  return y;
}

// --- parameter transformations ----------------------------------------------

// Defining-matrix shift A -> A + eps: every z-polynomial becomes P(z - eps).
template <CoefficientRing R>
D2Params<R> shift(const D2Params<R>& p, const R& eps) {
  UPoly<R> F = p.F().taylor_shift(-eps);
  return {F.coeff(2), F.coeff(1), F.coeff(0), p.b + eps};
}
template <CoefficientRing R>
D3Params<R> shift(const D3Params<R>& p, const R& eps) {
  UPoly<R> F = p.F().taylor_shift(-eps);
  UPoly<R> G = p.G().taylor_shift(-eps);
  return {F.coeff(3), F.coeff(2), F.coeff(1), F.coeff(0), G.coeff(1), G.coeff(0)};
}

// Defining-matrix twist a_ij -> lambda^(j-i+1) a_ij.
template <CoefficientRing R>
D2Params<R> twist(const D2Params<R>& p, const R& lambda) {
  R l2 = lambda * lambda;
  return {lambda * p.a2, l2 * p.a1, l2 * lambda * p.a0, lambda * p.b};
}
template <CoefficientRing R>
D3Params<R> twist(const D3Params<R>& p, const R& lambda) {
  R l2 = lambda * lambda;
  R l3 = l2 * lambda;
  R l4 = l3 * lambda;
  return {lambda * p.a3, l2 * p.a2, l3 * p.a1, l4 * p.a0, lambda * p.b1, l2 * p.b0};
}

template <CoefficientRing R>
bool nondegenerate(const D2Params<R>& p) {
  return !discriminant(p.F()).is_zero();
}
template <CoefficientRing R>
bool nondegenerate(const D3Params<R>& p) {
  return !discriminant(p.F()).is_zero();
}

// The degree-2 correspondence (a2, a1, 0; b) -> (0, 4 a2, 0, 16 a1; 0, -16 b - 4 a2).
template <CoefficientRing R>
D3Params<R> bridge_d2_to_d3(const D2Params<R>& p) {
  if (!p.a0.is_zero())
    throw std::domain_error("bridge_d2_to_d3: requires a0 = 0");
  const R zero = p.a2.zero_like();
  return {zero, p.a2.from_long_like(4) * p.a2, zero, p.a2.from_long_like(16) * p.a1, zero,
          p.a2.from_long_like(-16) * p.b - p.a2.from_long_like(4) * p.a2};
}

}  // namespace dnmod
