#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dnmod/ring.hpp"

namespace dnmod {

// The parameter symbols appearing in the equation families.
enum class Sym : int { a3 = 0, a2, a1, a0, b1, b0, b };

inline const char* sym_name(Sym s) {
  switch (s) {
    case Sym::a3: return "alpha3";
    case Sym::a2: return "alpha2";
    case Sym::a1: return "alpha1";
    case Sym::a0: return "alpha0";
    case Sym::b1: return "beta1";
    case Sym::b0: return "beta0";
    case Sym::b: return "beta";
  }
  return "?";
}

// Sparse multivariate polynomial over the rationals in a fixed ordered list
// of symbols.  Terms are keyed by a packed exponent word whose top byte is
// the total degree, so the native integer order on keys is graded-lex.
// Exponents are limited to 255 and at most 7 variables.
class MPoly {
 public:
  explicit MPoly(std::vector<Sym> vars) : vars_(std::move(vars)) {
    if (vars_.size() > 7) throw std::invalid_argument("MPoly: at most 7 variables");
  }
  static MPoly constant(std::vector<Sym> vars, const Rat& c) {
    MPoly p(std::move(vars));
    if (!c.is_zero()) p.terms_[0] = c;
    return p;
  }
  static MPoly var(std::vector<Sym> vars, Sym s) {
    MPoly p(std::move(vars));
    std::vector<int> e(p.vars_.size(), 0);
    bool found = false;
    for (std::size_t i = 0; i < p.vars_.size(); ++i)
      if (p.vars_[i] == s) {
        e[i] = 1;
        found = true;
      }
    if (!found) throw std::invalid_argument("MPoly::var: symbol not in variable list");
    p.terms_[pack(e)] = Rat(1);
    return p;
  }

  const std::vector<Sym>& vars() const { return vars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
  }
  Rat constant_term() const {
    auto it = terms_.find(0);
    return it == terms_.end() ? Rat(0) : it->second;
  }
  std::size_t term_count() const { return terms_.size(); }
  int total_degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(terms_.rbegin()->first >> 56);
  }

  // Terms in ascending graded-lex order as (exponent vector, coefficient).
  std::vector<std::pair<std::vector<int>, Rat>> terms() const {
    std::vector<std::pair<std::vector<int>, Rat>> out;
    out.reserve(terms_.size());
    for (const auto& [key, c] : terms_) out.emplace_back(unpack(key), c);
    return out;
  }

  bool operator==(const MPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  MPoly operator-() const {
    MPoly r(vars_);
    for (const auto& [k, c] : terms_) r.terms_[k] = -c;
    return r;
  }
  MPoly operator+(const MPoly& o) const {
    check(o);
    MPoly r = *this;
    for (const auto& [k, c] : o.terms_) {
      auto [it, fresh] = r.terms_.emplace(k, c);
      if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
    return r;
  }
  MPoly operator-(const MPoly& o) const { return *this + (-o); }
  MPoly operator*(const MPoly& o) const {
    check(o);
    MPoly r(vars_);
    for (const auto& [ka, ca] : terms_)
      for (const auto& [kb, cb] : o.terms_) {
        std::uint64_t k = add_keys(ka, kb);
        auto [it, fresh] = r.terms_.emplace(k, ca * cb);
        if (!fresh) {
          it->second += ca * cb;
          if (it->second.is_zero()) r.terms_.erase(it);
        }
      }
    return r;
  }
  MPoly scale(const Rat& s) const {
    if (s.is_zero()) return MPoly(vars_);
    MPoly r(vars_);
    for (const auto& [k, c] : terms_) r.terms_[k] = c * s;
    return r;
  }
  // Only nonzero constants are units.
  MPoly inv() const {
    if (!is_constant() || is_zero())
      throw std::domain_error("MPoly: inverse exists only for nonzero constants");
    return constant(vars_, constant_term().inv());
  }
  MPoly div_long(long n) const { return scale(Rat(1, n)); }

  MPoly zero_like() const { return MPoly(vars_); }
  MPoly one_like() const { return constant(vars_, Rat(1)); }
  MPoly from_long_like(long n) const { return constant(vars_, Rat(n)); }
  MPoly from_rat_like(const Rat& q) const { return constant(vars_, q); }
  std::uint64_t characteristic() const { return 0; }

  template <CoefficientRing S>
  friend S mpoly_eval(const MPoly& p, const std::map<Sym, S>& point);

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const Rat& c = it->second;
      std::string term;
      std::vector<int> e = unpack(it->first);
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (e[i] == 0) continue;
        if (!term.empty()) term += "*";
        term += sym_name(vars_[i]);
        if (e[i] > 1) term += "^" + std::to_string(e[i]);
      }
      std::string cs = c.abs().to_string();
      std::string piece = term.empty() ? cs : (cs == "1" ? term : cs + "*" + term);
      if (s.empty())
        s = (c.sign() < 0 ? "-" : "") + piece;
      else
        s += (c.sign() < 0 ? " - " : " + ") + piece;
    }
    return s;
  }

 private:
  void check(const MPoly& o) const {
    if (vars_ != o.vars_) throw std::domain_error("MPoly: variable lists differ");
  }
  static std::uint64_t pack(const std::vector<int>& e) {
    int total = 0;
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 0 || e[i] > 255) throw std::domain_error("MPoly: exponent out of range");
      total += e[i];
      key |= static_cast<std::uint64_t>(e[i]) << (8 * (6 - i));
    }
    if (total > 255) throw std::domain_error("MPoly: total degree out of range");
    return key | (static_cast<std::uint64_t>(total) << 56);
  }
  std::vector<int> unpack(std::uint64_t key) const {
    std::vector<int> e(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i)
      e[i] = static_cast<int>((key >> (8 * (6 - i))) & 0xff);
    return e;
  }
  static std::uint64_t add_keys(std::uint64_t a, std::uint64_t b) {
    // Exponent bytes are disjoint and bounded, so plain addition is carry-free
    // as long as every sum stays below 256; guard the total-degree byte.
    std::uint64_t k = a + b;
    if ((k >> 56) > 255) throw std::domain_error("MPoly: total degree overflow");
    return k;
  }

  std::vector<Sym> vars_;
  std::map<std::uint64_t, Rat> terms_;
};

// Exact evaluation; the ring context is taken from the bound values.  An
// empty point is accepted only for constant polynomials over a
// default-constructible ring (in practice: Rat).
template <CoefficientRing S>
S mpoly_eval(const MPoly& p, const std::map<Sym, S>& point) {
  S ctx = point.empty() ? S() : point.begin()->second;
  // Power tables per variable up to the largest exponent present.
  std::vector<int> maxe(p.vars_.size(), 0);
  for (const auto& [key, c] : p.terms_) {
    (void)c;
    std::vector<int> e = p.unpack(key);
    for (std::size_t i = 0; i < e.size(); ++i) maxe[i] = std::max(maxe[i], e[i]);
  }
  std::vector<std::vector<S>> pow(p.vars_.size());
  for (std::size_t i = 0; i < p.vars_.size(); ++i) {
    if (maxe[i] == 0) continue;
    auto it = point.find(p.vars_[i]);
    if (it == point.end())
      throw std::invalid_argument(std::string("mpoly_eval: unbound variable ") +
                                  sym_name(p.vars_[i]));
    pow[i].push_back(it->second.one_like());
    for (int k = 1; k <= maxe[i]; ++k) pow[i].push_back(pow[i].back() * it->second);
  }
  S acc = ctx.zero_like();
  for (const auto& [key, c] : p.terms_) {
    S term = ctx.from_rat_like(c);
    std::vector<int> e = p.unpack(key);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) term = term * pow[i][static_cast<std::size_t>(e[i])];
    acc = acc + term;
  }
  return acc;
}

static_assert(CoefficientRing<MPoly>);

}  // namespace dnmod
