#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dnmod/ring.hpp"
#include "dnmod/upoly.hpp"

namespace dnmod {

// Truncated power series: coefficients c[0..N] of t^0..t^N, known modulo
// t^(N+1).  N is the truncation order; binary operations truncate to the
// smaller operand order.  Coefficients are never reported beyond N.
template <CoefficientRing R>
class PSeries {
 public:
  PSeries(const R& ctx, int order)
      : c_(static_cast<std::size_t>(require_order(order)) + 1, ctx.zero_like()) {}
  explicit PSeries(std::vector<R> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("PSeries: empty coefficient list");
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const R& ctx() const { return c_[0]; }
  const R& at(int k) const {
    if (k < 0 || k > order()) throw std::out_of_range("PSeries: coefficient beyond truncation");
    return c_[static_cast<std::size_t>(k)];
  }
  R& at(int k) {
    if (k < 0 || k > order()) throw std::out_of_range("PSeries: coefficient beyond truncation");
    return c_[static_cast<std::size_t>(k)];
  }
  const std::vector<R>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const R& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }
  // Index of the first nonzero coefficient; order()+1 when identically zero.
  int valuation() const {
    for (int k = 0; k <= order(); ++k)
      if (!c_[static_cast<std::size_t>(k)].is_zero()) return k;
    return order() + 1;
  }

  PSeries truncate(int new_order) const {
    if (new_order < 0 || new_order > order())
      throw std::out_of_range("PSeries::truncate: order must shrink");
    return PSeries(std::vector<R>(c_.begin(), c_.begin() + new_order + 1));
  }

  bool operator==(const PSeries& o) const {
    int n = std::min(order(), o.order());
    for (int k = 0; k <= n; ++k)
      if (!(c_[static_cast<std::size_t>(k)] == o.c_[static_cast<std::size_t>(k)])) return false;
    return true;
  }
  bool operator!=(const PSeries& o) const { return !(*this == o); }

  std::string to_string(const std::string& var = "t") const {
    std::string s;
    for (int k = 0; k <= order(); ++k) {
      const R& x = c_[static_cast<std::size_t>(k)];
      if (x.is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + x.to_string() + ")";
      if (k > 0) s += "*" + var + (k > 1 ? "^" + std::to_string(k) : "");
    }
    if (s.empty()) s = "0";
    return s + " + O(" + var + "^" + std::to_string(order() + 1) + ")";
  }

 private:
  static int require_order(int n) {
    if (n < 0) throw std::invalid_argument("PSeries: negative truncation order");
    return n;
  }
  std::vector<R> c_;
};

enum class ArithKind { add, mul, div };
enum class ExpLogKind { exp, log };

namespace detail {
template <CoefficientRing R>
void require_char_exceeds(const R& ctx, long n, const char* op) {
  std::uint64_t ch = ctx.characteristic();
  if (ch != 0 && ch <= static_cast<std::uint64_t>(n))
    throw std::domain_error(std::string(op) +
                            ": coefficient ring characteristic must exceed the order");
}
}  // namespace detail

template <CoefficientRing R>
PSeries<R> ps_add(const PSeries<R>& a, const PSeries<R>& b) {
  int n = std::min(a.order(), b.order());
  PSeries<R> r(a.ctx(), n);
  for (int k = 0; k <= n; ++k) r.at(k) = a.at(k) + b.at(k);
  return r;
}

template <CoefficientRing R>
PSeries<R> ps_sub(const PSeries<R>& a, const PSeries<R>& b) {
  int n = std::min(a.order(), b.order());
  PSeries<R> r(a.ctx(), n);
  for (int k = 0; k <= n; ++k) r.at(k) = a.at(k) - b.at(k);
  return r;
}

template <CoefficientRing R>
PSeries<R> ps_neg(const PSeries<R>& a) {
  PSeries<R> r(a.ctx(), a.order());
  for (int k = 0; k <= a.order(); ++k) r.at(k) = -a.at(k);
  return r;
}

template <CoefficientRing R>
PSeries<R> ps_mul(const PSeries<R>& a, const PSeries<R>& b) {
  int n = std::min(a.order(), b.order());
  PSeries<R> r(a.ctx(), n);
  for (int i = 0; i <= n; ++i) {
    if (a.at(i).is_zero()) continue;
    for (int j = 0; i + j <= n; ++j) {
      if (b.at(j).is_zero()) continue;
      r.at(i + j) = r.at(i + j) + a.at(i) * b.at(j);
    }
  }
  return r;
}

template <CoefficientRing R>
PSeries<R> ps_scale(const PSeries<R>& a, const R& s) {
  PSeries<R> r(a.ctx(), a.order());
  for (int k = 0; k <= a.order(); ++k) r.at(k) = a.at(k) * s;
  return r;
}

template <CoefficientRing R>
PSeries<R> ps_div(const PSeries<R>& a, const PSeries<R>& b) {
  if (b.at(0).is_zero())
    throw std::domain_error("ps_div: divisor has zero constant term");
  R b0inv = b.at(0).inv();
  int n = std::min(a.order(), b.order());
  PSeries<R> q(a.ctx(), n);
  for (int k = 0; k <= n; ++k) {
    R acc = a.at(k);
    for (int j = 0; j < k; ++j) {
      if (q.at(j).is_zero() || b.at(k - j).is_zero()) continue;
      acc = acc - q.at(j) * b.at(k - j);
    }
    q.at(k) = acc * b0inv;
  }
  return q;
}

template <CoefficientRing R>
PSeries<R> ps_arith(const PSeries<R>& a, const PSeries<R>& b, ArithKind kind) {
  switch (kind) {
    case ArithKind::add: return ps_add(a, b);
    case ArithKind::mul: return ps_mul(a, b);
    case ArithKind::div: return ps_div(a, b);
  }
  throw std::invalid_argument("ps_arith: unknown kind");
}

// d/dt; the result is known one order lower.
template <CoefficientRing R>
PSeries<R> ps_derivative(const PSeries<R>& a) {
  int n = std::max(0, a.order() - 1);
  PSeries<R> r(a.ctx(), n);
  for (int k = 1; k <= a.order(); ++k)
    r.at(k - 1) = a.at(k) * a.ctx().from_long_like(k);
  return r;
}

// Antiderivative with constant term 0; the result is known one order higher.
template <CoefficientRing R>
PSeries<R> ps_integrate(const PSeries<R>& a) {
  detail::require_char_exceeds(a.ctx(), a.order() + 1, "ps_integrate");
  PSeries<R> r(a.ctx(), a.order() + 1);
  for (int k = 0; k <= a.order(); ++k) r.at(k + 1) = a.at(k).div_long(k + 1);
  return r;
}

template <CoefficientRing R>
PSeries<R> ps_exp(const PSeries<R>& a) {
  if (!a.at(0).is_zero()) throw std::domain_error("ps_exp: constant term must be 0");
  detail::require_char_exceeds(a.ctx(), a.order(), "ps_exp");
  int n = a.order();
  PSeries<R> y(a.ctx(), n);
  y.at(0) = a.ctx().one_like();
  for (int m = 1; m <= n; ++m) {
    R acc = a.ctx().zero_like();
    for (int k = 1; k <= m; ++k) {
      if (a.at(k).is_zero()) continue;
      acc = acc + a.at(k) * a.ctx().from_long_like(k) * y.at(m - k);
    }
    y.at(m) = acc.div_long(m);
  }
  return y;
}

template <CoefficientRing R>
PSeries<R> ps_log(const PSeries<R>& a) {
  if (!(a.at(0) == a.ctx().one_like()))
    throw std::domain_error("ps_log: constant term must be 1");
  detail::require_char_exceeds(a.ctx(), a.order(), "ps_log");
  if (a.order() == 0) return PSeries<R>(a.ctx(), 0);
  PSeries<R> l = ps_integrate(ps_div(ps_derivative(a), a.truncate(a.order() - 1)));
  return l;  // order restored to a.order() by integration
}

template <CoefficientRing R>
PSeries<R> ps_exp_log(const PSeries<R>& a, ExpLogKind kind) {
  return kind == ExpLogKind::exp ? ps_exp(a) : ps_log(a);
}

// Square root with constant term 1.
template <CoefficientRing R>
PSeries<R> ps_sqrt(const PSeries<R>& a) {
  if (!(a.at(0) == a.ctx().one_like()))
    throw std::domain_error("ps_sqrt: constant term must be 1");
  detail::require_char_exceeds(a.ctx(), 2, "ps_sqrt");
  int n = a.order();
  PSeries<R> y(a.ctx(), n);
  y.at(0) = a.ctx().one_like();
  for (int m = 1; m <= n; ++m) {
    R acc = a.at(m);
    for (int k = 1; k < m; ++k) acc = acc - y.at(k) * y.at(m - k);
    y.at(m) = acc.div_long(2);
  }
  return y;
}

template <CoefficientRing R>
PSeries<R> ps_compose(const PSeries<R>& outer, const PSeries<R>& inner) {
  if (!inner.at(0).is_zero())
    throw std::domain_error("ps_compose: inner constant term must be 0");
  int n = std::min(outer.order(), inner.order());
  PSeries<R> acc(outer.ctx(), n);
  PSeries<R> in = inner.order() == n ? inner : inner.truncate(n);
  for (int k = std::min(outer.order(), n); k >= 0; --k) {
    acc = ps_mul(acc, in);
    acc.at(0) = acc.at(0) + outer.at(k);
  }
  return acc;
}

// Multiply by t^k: the known window legitimately moves up.
template <CoefficientRing R>
PSeries<R> ps_shift_up(const PSeries<R>& a, int k) {
  if (k < 0) throw std::invalid_argument("ps_shift_up: negative shift");
  PSeries<R> r(a.ctx(), a.order() + k);
  for (int i = 0; i <= a.order(); ++i) r.at(i + k) = a.at(i);
  return r;
}

// Divide by t^k; the first k coefficients must vanish.
template <CoefficientRing R>
PSeries<R> ps_shift_down(const PSeries<R>& a, int k) {
  if (k < 0 || k > a.order()) throw std::invalid_argument("ps_shift_down: bad shift");
  for (int i = 0; i < k; ++i)
    if (!a.at(i).is_zero())
      throw std::domain_error("ps_shift_down: series not divisible by t^k");
  PSeries<R> r(a.ctx(), a.order() - k);
  for (int i = k; i <= a.order(); ++i) r.at(i - k) = a.at(i);
  return r;
}

// f(t^k), truncated at the given order.
template <CoefficientRing R>
PSeries<R> ps_inflate(const PSeries<R>& a, int k, int order) {
  if (k < 1) throw std::invalid_argument("ps_inflate: power must be positive");
  PSeries<R> r(a.ctx(), order);
  for (int i = 0; i <= a.order() && i * k <= order; ++i) r.at(i * k) = a.at(i);
  return r;
}

// f(lambda * t).
template <CoefficientRing R>
PSeries<R> ps_scale_arg(const PSeries<R>& a, const R& lambda) {
  PSeries<R> r(a.ctx(), a.order());
  R pw = a.ctx().one_like();
  for (int k = 0; k <= a.order(); ++k) {
    r.at(k) = a.at(k) * pw;
    pw = pw * lambda;
  }
  return r;
}

template <CoefficientRing R>
PSeries<R> ps_one(const R& ctx, int order) {
  PSeries<R> r(ctx, order);
  r.at(0) = ctx.one_like();
  return r;
}

template <CoefficientRing R>
PSeries<R> ps_identity(const R& ctx, int order) {
  PSeries<R> r(ctx, order);
  if (order >= 1) r.at(1) = ctx.one_like();
  return r;
}

// Truncated expansion of a polynomial.
template <CoefficientRing R>
PSeries<R> series_from_poly(const UPoly<R>& p, int order) {
  PSeries<R> r(p.ctx(), order);
  for (int k = 0; k <= std::min(order, p.deg()); ++k) r.at(k) = p.coeff(k);
  return r;
}

// Compositional inverse by Newton iteration on g -> g - (f(g) - id)/f'(g);
// uses no integer divisions, so it works over any ring where f'(0) is a unit.
template <CoefficientRing R>
PSeries<R> ps_revert(const PSeries<R>& f) {
  if (!f.at(0).is_zero()) throw std::domain_error("ps_revert: constant term must be 0");
  int n = f.order();
  if (n < 1) throw std::domain_error("ps_revert: order too small");
  R f1inv = f.at(1).inv();  // throws when the t-coefficient is not a unit
  std::vector<R> g{f.ctx().zero_like(), f1inv};
  PSeries<R> fp = ps_derivative(f);  // known to order n-1, enough for every step
  int m = 1;
  while (m < n) {
    int m2 = std::min(2 * m, n);
    g.resize(static_cast<std::size_t>(m2) + 1, f.ctx().zero_like());
    PSeries<R> gs{std::vector<R>(g)};
    PSeries<R> fg = ps_compose(f.truncate(m2), gs);
    PSeries<R> num = ps_sub(fg, ps_identity(f.ctx(), m2));
    int v = num.valuation();  // >= m+1 because g is correct to order m
    if (v > m2) {
      m = m2;
      continue;
    }
    PSeries<R> fpg = ps_compose(fp.truncate(std::min(fp.order(), m2 - v)), gs.truncate(m2 - v));
    PSeries<R> delta = ps_shift_up(ps_div(ps_shift_down(num, v), fpg), v);
    for (int k = 0; k <= m2; ++k) g[static_cast<std::size_t>(k)] = gs.at(k) - delta.at(k);
    m = m2;
  }
  return PSeries<R>(std::move(g));
}

// Lagrange-inversion reversion, retained as an independent oracle:
// g_n = (1/n) [t^(n-1)] (t/f)^n.  Needs characteristic 0 or > order.
template <CoefficientRing R>
PSeries<R> ps_revert_lagrange(const PSeries<R>& f) {
  if (!f.at(0).is_zero()) throw std::domain_error("ps_revert_lagrange: constant term must be 0");
  int n = f.order();
  if (n < 1) throw std::domain_error("ps_revert_lagrange: order too small");
  if (f.at(1).is_zero()) throw std::domain_error("ps_revert_lagrange: t-coefficient must be a unit");
  detail::require_char_exceeds(f.ctx(), n, "ps_revert_lagrange");
  PSeries<R> base = ps_div(ps_one(f.ctx(), n - 1), ps_shift_down(f, 1));  // t/f
  PSeries<R> g(f.ctx(), n);
  PSeries<R> pw = ps_one(f.ctx(), n - 1);
  for (int k = 1; k <= n; ++k) {
    pw = ps_mul(pw, base);
    g.at(k) = pw.at(k - 1).div_long(k);
  }
  return g;
}

}  // namespace dnmod
