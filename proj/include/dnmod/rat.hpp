#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace dnmod {

// Arbitrary-precision rational with plain value semantics.  Wraps mpq_class
// so the rest of the library never sees gmpxx expression templates, which
// interact badly with `auto` and with generic code.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(static_cast<signed long>(n)) {}  // NOLINT(runtime/explicit)
  Rat(long num, long den) : v_(num, den) { require_nonzero_den(); v_.canonicalize(); }
  explicit Rat(const mpz_class& n) : v_(n) {}
  Rat(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    require_nonzero_den();
    v_.canonicalize();
  }
  explicit Rat(mpq_class q) : v_(std::move(q)) { require_nonzero_den(); v_.canonicalize(); }

  // Accepts "p", "p/q", optional leading '-' or '+', no embedded spaces.
  static Rat parse(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rat::parse: bad literal '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("Rat::parse: zero denominator in '" + s + "'");
    q.canonicalize();
    return Rat(std::move(q));
  }

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat operator+(const Rat& o) const { return Rat(mpq_class(v_ + o.v_)); }
  Rat operator-(const Rat& o) const { return Rat(mpq_class(v_ - o.v_)); }
  Rat operator*(const Rat& o) const { return Rat(mpq_class(v_ * o.v_)); }
  Rat operator/(const Rat& o) const {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    return Rat(mpq_class(v_ / o.v_));
  }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

  bool operator==(const Rat& o) const { return v_ == o.v_; }
  bool operator!=(const Rat& o) const { return v_ != o.v_; }
  bool operator<(const Rat& o) const { return v_ < o.v_; }
  bool operator<=(const Rat& o) const { return v_ <= o.v_; }
  bool operator>(const Rat& o) const { return v_ > o.v_; }
  bool operator>=(const Rat& o) const { return v_ >= o.v_; }

  Rat inv() const {
    if (is_zero()) throw std::domain_error("Rat: inverse of zero");
    return Rat(mpq_class(1 / v_));
  }
  Rat div_long(long n) const {
    if (n == 0) throw std::domain_error("Rat: division by zero");
    return Rat(mpq_class(v_ / mpq_class(n)));
  }
  Rat pow(long e) const {
    if (e < 0) return inv().pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), static_cast<unsigned long>(e));
    return Rat(n, d);
  }
  Rat abs() const { return sign() < 0 ? -*this : *this; }

  // Uniform ring-context interface shared by all coefficient rings.
  Rat zero_like() const { return Rat(); }
  Rat one_like() const { return Rat(1); }
  Rat from_long_like(long n) const { return Rat(n); }
  Rat from_rat_like(const Rat& q) const { return q; }
  std::uint64_t characteristic() const { return 0; }

  std::string to_string() const { return v_.get_str(); }

 private:
  void require_nonzero_den() {
    if (v_.get_den() == 0) throw std::domain_error("Rat: zero denominator");
  }
  mpq_class v_;
};

inline Rat operator+(long a, const Rat& b) { return Rat(a) + b; }
inline Rat operator-(long a, const Rat& b) { return Rat(a) - b; }
inline Rat operator*(long a, const Rat& b) { return Rat(a) * b; }

}  // namespace dnmod
