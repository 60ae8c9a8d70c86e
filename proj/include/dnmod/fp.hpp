#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "dnmod/ring.hpp"

namespace dnmod {

// Prime-field element with a runtime modulus carried per value.  Moduli are
// expected to be odd primes below 2^62 (all products fit __int128).
class Fp {
 public:
  Fp() : r_(0), p_(0) {}
  Fp(std::uint64_t residue, std::uint64_t p) : r_(residue % p), p_(p) {
    if (p < 3) throw std::domain_error("Fp: modulus must be an odd prime >= 3");
  }
  static Fp from_long(long v, std::uint64_t p) {
    Fp x(0, p);
    x.r_ = reduce_long(v, p);
    return x;
  }
  static Fp from_rat(const Rat& q, std::uint64_t p) {
    Fp x(0, p);
    x.r_ = reduce_mpz(q.num(), p);
    std::uint64_t d = reduce_mpz(q.den(), p);
    if (d == 0) throw std::domain_error("Fp: denominator divisible by modulus");
    if (d != 1) x.r_ = mulmod(x.r_, inv_mod(d, p), p);
    return x;
  }

  std::uint64_t residue() const { return r_; }
  std::uint64_t modulus() const { return p_; }

  bool is_zero() const { return r_ == 0; }
  bool operator==(const Fp& o) const { return p_ == o.p_ && r_ == o.r_; }
  bool operator!=(const Fp& o) const { return !(*this == o); }

  Fp operator-() const { return with(r_ == 0 ? 0 : p_ - r_); }
  Fp operator+(const Fp& o) const {
    check(o);
    std::uint64_t s = r_ + o.r_;
    if (s >= p_) s -= p_;
    return with(s);
  }
  Fp operator-(const Fp& o) const {
    check(o);
    return with(r_ >= o.r_ ? r_ - o.r_ : r_ + p_ - o.r_);
  }
  Fp operator*(const Fp& o) const {
    check(o);
    return with(mulmod(r_, o.r_, p_));
  }
  Fp inv() const {
    if (r_ == 0) throw std::domain_error("Fp: inverse of zero");
    return with(inv_mod(r_, p_));
  }
  Fp operator/(const Fp& o) const { return *this * o.inv(); }
  Fp div_long(long n) const {
    std::uint64_t d = reduce_long(n, p_);
    if (d == 0)
      throw std::domain_error("Fp: division by " + std::to_string(n) +
                              " impossible mod " + std::to_string(p_));
    return with(mulmod(r_, inv_mod(d, p_), p_));
  }
  Fp pow(long e) const {
    if (e < 0) return inv().pow(-e);
    std::uint64_t base = r_, acc = 1 % p_;
    for (unsigned long k = static_cast<unsigned long>(e); k; k >>= 1) {
      if (k & 1) acc = mulmod(acc, base, p_);
      base = mulmod(base, base, p_);
    }
    return with(acc);
  }

  Fp zero_like() const { return with(0); }
  Fp one_like() const { return with(1 % p_); }
  Fp from_long_like(long n) const { return from_long(n, p_); }
  Fp from_rat_like(const Rat& q) const { return from_rat(q, p_); }
  std::uint64_t characteristic() const { return p_; }

  std::string to_string() const { return std::to_string(r_); }

  static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
  }
  static std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    // Extended Euclid; requires gcd(a, p) = 1.
    std::int64_t t = 0, nt = 1;
    std::uint64_t r = p, nr = a % p;
    while (nr != 0) {
      std::uint64_t q = r / nr;
      std::int64_t tmp_t = t - static_cast<std::int64_t>(q) * nt;
      t = nt;
      nt = tmp_t;
      std::uint64_t tmp_r = r - q * nr;
      r = nr;
      nr = tmp_r;
    }
    if (r != 1) throw std::domain_error("Fp: element not invertible");
    return t < 0 ? static_cast<std::uint64_t>(t + static_cast<std::int64_t>(p)) : static_cast<std::uint64_t>(t);
  }
  static std::uint64_t reduce_long(long v, std::uint64_t p) {
    long m = v % static_cast<long>(p);
    if (m < 0) m += static_cast<long>(p);
    return static_cast<std::uint64_t>(m);
  }
  static std::uint64_t reduce_mpz(const mpz_class& v, std::uint64_t p) {
    mpz_class m = v % mpz_class(static_cast<unsigned long>(p));
    if (m < 0) m += mpz_class(static_cast<unsigned long>(p));
    return m.get_ui();
  }

 private:
  Fp with(std::uint64_t r) const {
    Fp x;
    x.r_ = r;
    x.p_ = p_;
    return x;
  }
  void check(const Fp& o) const {
    if (p_ != o.p_) throw std::domain_error("Fp: modulus mismatch");
  }
  std::uint64_t r_, p_;
};

static_assert(CoefficientRing<Fp>);

}  // namespace dnmod
