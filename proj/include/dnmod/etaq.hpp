#pragma once

#include <string>
#include <vector>

#include "dnmod/pseries.hpp"
#include "dnmod/rat.hpp"

namespace dnmod {

struct EtaFactor {
  long m = 1;  // argument multiplier, m >= 1
  long e = 0;  // exponent, any integer
  bool operator==(const EtaFactor&) const = default;
};

// Finite product of eta(m tau)^e factors.  Expanded multiplicatively as
// q^offset * prod_{(m,e)} (prod_{n>=1} (1 - q^{m n}))^e with offset = sum(m e)/24;
// the fractional q-power is never carried symbolically.
struct EtaQuotient {
  std::vector<EtaFactor> factors;

  // sum(m e)/24; throws std::domain_error unless that is a non-negative integer.
  long offset() const;

  // Canonical text form: positive exponents as m^e joined by '*', negated
  // exponents after a single '/', e.g. "1^3*6^9/2^3*3^9".
  std::string to_string() const;

  // Inverse of to_string; accepts any m^e tokens (signed e) in either part.
  static EtaQuotient parse(const std::string& text);

  bool operator==(const EtaQuotient&) const = default;
};

// prod_{n>=1} (1 - q^n) truncated at the given order, via the pentagonal
// number expansion sum_k (-1)^k q^{k(3k-1)/2}.
PSeries<Rat> euler_product(int order);

// q-expansion of an eta quotient with its q^offset prefactor in place.
PSeries<Rat> etaq_series(const EtaQuotient& eq, int order);

// q * prod_{n>=1} (1 - q^n)^{5 chi(n)} where chi is the quadratic character
// mod 5 (chi(1)=chi(4)=1, chi(2)=chi(3)=-1, chi(5k)=0).
PSeries<Rat> legendre_eta(int order);

// Exact expansions of the rational closed forms q/(1-q^2), q/(1-q),
// q/(1+q+q^2) and q/(1-q)^2, keyed by name (q_over_1mq2, q_over_1mq,
// q_over_1pqpq2, q_over_1mq_sq).  Unknown names throw std::invalid_argument.
PSeries<Rat> closed_form_series(const std::string& name, int order);

// Dispatch for a table form cell: "q" itself, one of the closed-form names,
// or an eta quotient in m^e notation.
PSeries<Rat> form_series(const std::string& cell, int order);

}  // namespace dnmod
