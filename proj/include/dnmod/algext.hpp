#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dnmod/ring.hpp"
#include "dnmod/upoly.hpp"

namespace dnmod {

// Element of Q[z]/(M(z)) for a monic M, used where a curve point lives in the
// splitting field of the defining quartic.  M is expected to be irreducible
// over Q so that every nonzero element is invertible; inv() reports failure
// honestly otherwise.
class AlgExt {
 public:
  using Modulus = std::vector<Rat>;  // monic: c0..c_d with c_d = 1

  AlgExt(std::shared_ptr<const Modulus> modulus, std::vector<Rat> coeffs)
      : m_(std::move(modulus)), c_(std::move(coeffs)) {
    if (!m_ || m_->size() < 2 || !(m_->back() == Rat(1)))
      throw std::invalid_argument("AlgExt: modulus must be monic of degree >= 1");
    reduce();
  }
  static std::shared_ptr<const Modulus> make_modulus(const UPoly<Rat>& m) {
    if (m.deg() < 1 || !(m.lc() == Rat(1)))
      throw std::invalid_argument("AlgExt: modulus must be monic of degree >= 1");
    return std::make_shared<const Modulus>(m.coeffs().begin(),
                                           m.coeffs().begin() + m.deg() + 1);
  }
  static AlgExt from_rat(std::shared_ptr<const Modulus> m, const Rat& q) {
    return AlgExt(std::move(m), {q});
  }
  static AlgExt generator(std::shared_ptr<const Modulus> m) {
    return AlgExt(std::move(m), {Rat(0), Rat(1)});
  }

  int field_degree() const { return static_cast<int>(m_->size()) - 1; }
  const Modulus& modulus() const { return *m_; }
  Rat coeff(int k) const {
    return (k >= 0 && static_cast<std::size_t>(k) < c_.size()) ? c_[static_cast<std::size_t>(k)]
                                                               : Rat(0);
  }
  bool is_zero() const {
    for (const Rat& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t k = 1; k < c_.size(); ++k)
      if (!c_[k].is_zero()) return false;
    return true;
  }
  Rat rational_part() const { return coeff(0); }

  bool operator==(const AlgExt& o) const {
    check(o);
    for (int k = 0; k < field_degree(); ++k)
      if (coeff(k) != o.coeff(k)) return false;
    return true;
  }
  bool operator!=(const AlgExt& o) const { return !(*this == o); }

  AlgExt operator-() const {
    std::vector<Rat> r;
    r.reserve(c_.size());
    for (const Rat& x : c_) r.push_back(-x);
    return AlgExt(m_, std::move(r));
  }
  AlgExt operator+(const AlgExt& o) const {
    check(o);
    std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
    for (std::size_t k = 0; k < r.size(); ++k)
      r[k] = coeff(static_cast<int>(k)) + o.coeff(static_cast<int>(k));
    return AlgExt(m_, std::move(r));
  }
  AlgExt operator-(const AlgExt& o) const { return *this + (-o); }
  AlgExt operator*(const AlgExt& o) const {
    check(o);
    std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return AlgExt(m_, std::move(r));
  }
  AlgExt inv() const {
    if (is_zero()) throw std::domain_error("AlgExt: inverse of zero");
    // Extended Euclid over Q[z]: s*this + t*M = gcd; gcd must be a unit.
    std::vector<Rat> r0(m_->begin(), m_->end()), r1 = c_;
    std::vector<Rat> s0{Rat(0)}, s1{Rat(1)};
    while (!poly_is_zero(r1)) {
      auto [q, rem] = poly_divrem(r0, r1);
      r0 = std::move(r1);
      r1 = std::move(rem);
      std::vector<Rat> s2 = poly_sub(s0, poly_mul(q, s1));
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    if (poly_deg(r0) != 0)
      throw std::domain_error("AlgExt: element not invertible (modulus not irreducible?)");
    Rat lead = r0[0];
    std::vector<Rat> out;
    out.reserve(s0.size());
    for (const Rat& x : s0) out.push_back(x / lead);
    return AlgExt(m_, std::move(out));
  }
  AlgExt operator/(const AlgExt& o) const { return *this * o.inv(); }
  AlgExt div_long(long n) const {
    std::vector<Rat> r;
    r.reserve(c_.size());
    for (const Rat& x : c_) r.push_back(x.div_long(n));
    return AlgExt(m_, std::move(r));
  }

  AlgExt zero_like() const { return AlgExt(m_, {Rat(0)}); }
  AlgExt one_like() const { return AlgExt(m_, {Rat(1)}); }
  AlgExt from_long_like(long n) const { return AlgExt(m_, {Rat(n)}); }
  AlgExt from_rat_like(const Rat& q) const { return AlgExt(m_, {q}); }
  std::uint64_t characteristic() const { return 0; }

  std::string to_string() const {
    std::string s;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + c_[k].to_string() + ")";
      if (k > 0) s += "*z" + (k > 1 ? "^" + std::to_string(k) : std::string());
    }
    return s.empty() ? "0" : s;
  }

 private:
  void check(const AlgExt& o) const {
    if (m_ != o.m_ && *m_ != *o.m_) throw std::domain_error("AlgExt: mixed extensions");
  }
  static int poly_deg(const std::vector<Rat>& p) {
    for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k)
      if (!p[static_cast<std::size_t>(k)].is_zero()) return k;
    return -1;
  }
  static bool poly_is_zero(const std::vector<Rat>& p) { return poly_deg(p) < 0; }
  static std::vector<Rat> poly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    if (a.empty() || b.empty()) return {Rat(0)};
    std::vector<Rat> r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
  }
  static std::vector<Rat> poly_sub(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    std::vector<Rat> r(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t k = 0; k < r.size(); ++k) {
      Rat av = k < a.size() ? a[k] : Rat(0);
      Rat bv = k < b.size() ? b[k] : Rat(0);
      r[k] = av - bv;
    }
    return r;
  }
  static std::pair<std::vector<Rat>, std::vector<Rat>> poly_divrem(std::vector<Rat> a,
                                                                   const std::vector<Rat>& b) {
    int db = poly_deg(b);
    if (db < 0) throw std::domain_error("AlgExt: polynomial division by zero");
    Rat lead = b[static_cast<std::size_t>(db)];
    std::vector<Rat> q(a.size(), Rat(0));
    for (int k = poly_deg(a); k >= db; k = poly_deg(a)) {
      Rat f = a[static_cast<std::size_t>(k)] / lead;
      q[static_cast<std::size_t>(k - db)] = f;
      for (int j = 0; j <= db; ++j)
        a[static_cast<std::size_t>(k - db + j)] -= f * b[static_cast<std::size_t>(j)];
    }
    if (q.empty()) q.push_back(Rat(0));
    if (a.empty()) a.push_back(Rat(0));
    return {std::move(q), std::move(a)};
  }

  void reduce() {
    // Reduce modulo the monic M by synthetic division.
    std::size_t d = m_->size() - 1;
    while (poly_deg(c_) >= static_cast<int>(d)) {
      int k = poly_deg(c_);
      Rat f = c_[static_cast<std::size_t>(k)];
      for (std::size_t j = 0; j <= d; ++j)
        c_[static_cast<std::size_t>(k) - d + j] -= f * (*m_)[j];
    }
    c_.resize(d, Rat(0));
    if (c_.empty()) c_.push_back(Rat(0));
  }

  std::shared_ptr<const Modulus> m_;
  std::vector<Rat> c_;
};

static_assert(CoefficientRing<AlgExt>);

}  // namespace dnmod
