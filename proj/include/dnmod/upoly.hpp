#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dnmod/ring.hpp"

namespace dnmod {

// Dense univariate polynomial over a coefficient ring.  Always stores at
// least the constant coefficient so a context element is available; trailing
// zeros above it are trimmed.  deg() of the zero polynomial is -1.
template <CoefficientRing R>
class UPoly {
 public:
  explicit UPoly(R constant) : c_{std::move(constant)} {}
  explicit UPoly(std::vector<R> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("UPoly: empty coefficient list");
    trim();
  }
  static UPoly zero(const R& ctx) { return UPoly(ctx.zero_like()); }
  // c[k] * z^k + ... given as {c0, c1, ...}.
  static UPoly from_coeffs(const R& ctx, std::vector<R> coeffs) {
    if (coeffs.empty()) coeffs.push_back(ctx.zero_like());
    return UPoly(std::move(coeffs));
  }
  static UPoly monomial(const R& coeff, int k) {
    std::vector<R> c(static_cast<std::size_t>(k) + 1, coeff.zero_like());
    c.back() = coeff;
    return UPoly(std::move(c));
  }

  int deg() const {
    for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i)
      if (!c_[static_cast<std::size_t>(i)].is_zero()) return i;
    return -1;
  }
  bool is_zero() const { return deg() < 0; }
  const R& ctx() const { return c_[0]; }
  R coeff(int k) const {
    if (k < 0 || static_cast<std::size_t>(k) >= c_.size()) return ctx().zero_like();
    return c_[static_cast<std::size_t>(k)];
  }
  const std::vector<R>& coeffs() const { return c_; }
  R lc() const { return deg() < 0 ? ctx().zero_like() : c_[static_cast<std::size_t>(deg())]; }

  bool operator==(const UPoly& o) const {
    int d = std::max(deg(), o.deg());
    for (int k = 0; k <= d; ++k)
      if (!(coeff(k) == o.coeff(k))) return false;
    return true;
  }
  bool operator!=(const UPoly& o) const { return !(*this == o); }

  UPoly operator-() const {
    std::vector<R> r;
    r.reserve(c_.size());
    for (const R& x : c_) r.push_back(-x);
    return UPoly(std::move(r));
  }
  UPoly operator+(const UPoly& o) const {
    std::vector<R> r;
    std::size_t n = std::max(c_.size(), o.c_.size());
    r.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
      r.push_back(coeff(static_cast<int>(k)) + o.coeff(static_cast<int>(k)));
    return UPoly(std::move(r));
  }
  UPoly operator-(const UPoly& o) const { return *this + (-o); }
  UPoly operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return zero(ctx());
    std::size_t n = c_.size() + o.c_.size() - 1;
    std::vector<R> r(n, ctx().zero_like());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
    return UPoly(std::move(r));
  }
  UPoly scale(const R& s) const {
    std::vector<R> r;
    r.reserve(c_.size());
    for (const R& x : c_) r.push_back(x * s);
    return UPoly(std::move(r));
  }

  R eval(const R& x) const {
    R acc = x.zero_like();
    for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k)
      acc = acc * x + c_[static_cast<std::size_t>(k)];
    return acc;
  }
  R eval_long(long x) const { return eval(ctx().from_long_like(x)); }

  UPoly derivative() const {
    if (c_.size() == 1) return zero(ctx());
    std::vector<R> r;
    r.reserve(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k)
      r.push_back(c_[k] * ctx().from_long_like(static_cast<long>(k)));
    return UPoly(std::move(r));
  }

  // p(z + c), by Horner over z + c.
  UPoly taylor_shift(const R& shift) const {
    UPoly lin = from_coeffs(ctx(), {shift, ctx().one_like()});
    UPoly acc = zero(ctx());
    for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k)
      acc = acc * lin + UPoly(c_[static_cast<std::size_t>(k)]);
    return acc;
  }

  // z^n * p(1/z) for n = deg (coefficient reversal).
  UPoly reverse() const {
    int d = deg();
    if (d <= 0) return *this;
    std::vector<R> r(c_.begin(), c_.begin() + d + 1);
    std::reverse(r.begin(), r.end());
    return UPoly(std::move(r));
  }

  std::string to_string(const std::string& var = "z") const {
    if (is_zero()) return "0";
    std::string s;
    for (int k = deg(); k >= 0; --k) {
      R ck = coeff(k);
      if (ck.is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + ck.to_string() + ")";
      if (k > 0) s += "*" + var + (k > 1 ? "^" + std::to_string(k) : "");
    }
    return s;
  }

 private:
  void trim() {
    while (c_.size() > 1 && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<R> c_;
};

// Evaluate a rational-coefficient polynomial in any coefficient ring.
template <CoefficientRing S>
S eval_rat_poly(const UPoly<Rat>& f, const S& x) {
  S acc = x.zero_like();
  for (int k = f.deg() < 0 ? 0 : f.deg(); k >= 0; --k) acc = acc * x + x.from_rat_like(f.coeff(k));
  return acc;
}

// Determinant of the Sylvester matrix of f and g by fraction-full Gaussian
// elimination; the coefficient ring must be a field.
template <CoefficientRing R>
R resultant(const UPoly<R>& f, const UPoly<R>& g) {
  int m = f.deg(), n = g.deg();
  const R zero = f.ctx().zero_like();
  if (m < 0 || n < 0) return zero;
  if (m == 0 && n == 0) return f.ctx().one_like();
  int size = m + n;
  std::vector<std::vector<R>> a(static_cast<std::size_t>(size),
                                std::vector<R>(static_cast<std::size_t>(size), zero));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) a[i][i + k] = f.coeff(m - k);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) a[n + i][i + k] = g.coeff(n - k);
  R det = f.ctx().one_like();
  for (int col = 0; col < size; ++col) {
    int pivot = -1;
    for (int row = col; row < size; ++row)
      if (!a[row][col].is_zero()) {
        pivot = row;
        break;
      }
    if (pivot < 0) return zero;
    if (pivot != col) {
      std::swap(a[static_cast<std::size_t>(pivot)], a[static_cast<std::size_t>(col)]);
      det = -det;
    }
    det = det * a[col][col];
    R pinv = a[col][col].inv();
    for (int row = col + 1; row < size; ++row) {
      if (a[row][col].is_zero()) continue;
      R factor = a[row][col] * pinv;
      for (int k = col; k < size; ++k) a[row][k] = a[row][k] - factor * a[col][k];
    }
  }
  return det;
}

// disc(f) = (-1)^(d(d-1)/2) * resultant(f, f') / lc(f).
template <CoefficientRing R>
R discriminant(const UPoly<R>& f) {
  int d = f.deg();
  if (d < 1) throw std::domain_error("discriminant: degree must be >= 1");
  R res = resultant(f, f.derivative());
  R val = res * f.lc().inv();
  return ((d * (d - 1) / 2) % 2 == 1) ? -val : val;
}

}  // namespace dnmod
