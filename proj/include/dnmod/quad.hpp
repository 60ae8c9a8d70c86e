#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "dnmod/ring.hpp"

namespace dnmod {

// Element a + b*sqrt(d) of a quadratic field, d a fixed square-free integer
// carried per value.  Values built from rationals alone adopt the d of the
// other operand, so mixed arithmetic with embedded rationals works.
class QuadElem {
 public:
  QuadElem() : a_(0), b_(0), d_(5) {}
  QuadElem(Rat a, Rat b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (d_ == 0 || d_ == 1) throw std::domain_error("QuadElem: d must be square-free, not 0/1");
  }

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }
  long d() const { return d_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }
  QuadElem conj() const { return QuadElem(a_, -b_, d_); }
  // conj(x)*x; always has zero sqrt(d) component.
  Rat norm() const { return a_ * a_ - Rat(d_) * b_ * b_; }

  bool operator==(const QuadElem& o) const {
    check(o);
    return a_ == o.a_ && b_ == o.b_;
  }
  bool operator!=(const QuadElem& o) const { return !(*this == o); }

  QuadElem operator-() const { return QuadElem(-a_, -b_, d_); }
  QuadElem operator+(const QuadElem& o) const {
    check(o);
    return QuadElem(a_ + o.a_, b_ + o.b_, d_);
  }
  QuadElem operator-(const QuadElem& o) const {
    check(o);
    return QuadElem(a_ - o.a_, b_ - o.b_, d_);
  }
  QuadElem operator*(const QuadElem& o) const {
    check(o);
    return QuadElem(a_ * o.a_ + Rat(d_) * b_ * o.b_, a_ * o.b_ + b_ * o.a_, d_);
  }
  QuadElem inv() const {
    Rat n = norm();
    if (n.is_zero()) throw std::domain_error("QuadElem: inverse of zero");
    return QuadElem(a_ / n, -b_ / n, d_);
  }
  QuadElem operator/(const QuadElem& o) const { return *this * o.inv(); }
  QuadElem div_long(long n) const { return QuadElem(a_.div_long(n), b_.div_long(n), d_); }
  QuadElem pow(long e) const {
    if (e < 0) return inv().pow(-e);
    QuadElem acc = one_like(), base = *this;
    for (unsigned long k = static_cast<unsigned long>(e); k; k >>= 1) {
      if (k & 1) acc = acc * base;
      base = base * base;
    }
    return acc;
  }

  QuadElem zero_like() const { return QuadElem(Rat(0), Rat(0), d_); }
  QuadElem one_like() const { return QuadElem(Rat(1), Rat(0), d_); }
  QuadElem from_long_like(long n) const { return QuadElem(Rat(n), Rat(0), d_); }
  QuadElem from_rat_like(const Rat& q) const { return QuadElem(q, Rat(0), d_); }
  std::uint64_t characteristic() const { return 0; }

  std::string to_string() const {
    if (b_.is_zero()) return a_.to_string();
    std::string s;
    if (!a_.is_zero()) s = a_.to_string();
    if (b_.sign() >= 0 && !s.empty()) s += "+";
    s += b_.to_string() + "*r" + std::to_string(d_);
    return s;
  }

  // Accepts "<rat>", "<rat>+<rat>*rD", "<rat>-<rat>*rD", "<rat>*rD".
  static QuadElem parse(const std::string& s, long d);

 private:
  void check(const QuadElem& o) const {
    if (d_ != o.d_) throw std::domain_error("QuadElem: mixed quadratic fields");
  }
  Rat a_, b_;
  long d_;
};

inline QuadElem QuadElem::parse(const std::string& s, long d) {
  // Split at the last '+' or '-' that is not the leading sign and not inside
  // a rational literal's '/'; literals here never contain exponents.
  auto parse_term = [d](const std::string& raw, Rat& a, Rat& b) {
    std::string term = raw;
    Rat sign(1);
    if (term.size() > 1 && term[0] == '-' && term[1] == 'r') {
      sign = Rat(-1);
      term = term.substr(1);
    }
    auto check_radicand = [d, &raw](const std::string& rd) {
      if (Rat::parse(rd) != Rat(d))
        throw std::invalid_argument("QuadElem::parse: wrong radicand in '" + raw + "'");
    };
    auto star = term.find("*r");
    if (star != std::string::npos) {
      b = b + sign * Rat::parse(term.substr(0, star));
      check_radicand(term.substr(star + 2));
    } else if (term.size() > 1 && term[0] == 'r') {
      b = b + sign;
      check_radicand(term.substr(1));
    } else {
      a = a + sign * Rat::parse(term);
    }
  };
  Rat a(0), b(0);
  std::size_t start = 0;
  for (std::size_t i = 1; i <= s.size(); ++i) {
    if (i == s.size() || ((s[i] == '+' || s[i] == '-') && s[i - 1] != '/')) {
      parse_term(s.substr(start, i - start), a, b);
      start = (i < s.size() && s[i] == '+') ? i + 1 : i;
    }
  }
  return QuadElem(a, b, d);
}

static_assert(CoefficientRing<QuadElem>);

}  // namespace dnmod
