#pragma once

#include <concepts>
#include <cstdint>
#include <string>

#include "dnmod/rat.hpp"

namespace dnmod {

// Every coefficient ring used by the series/polynomial engine models this
// concept.  Elements carry their own context (prime modulus, quadratic d,
// extension modulus, ...), so generic code spawns constants from an existing
// element rather than from a default constructor.
//
//   inv()       multiplicative inverse; throws std::domain_error on non-units
//   div_long(n) exact division by a small integer (the series-engine scalar
//               divisions); throws std::domain_error when impossible
//   characteristic()  0 for rings containing the rationals, p for prime fields
template <class R>
concept CoefficientRing = requires(const R& x, const R& y, long n, const Rat& q) {
  { x + y } -> std::same_as<R>;
  { x - y } -> std::same_as<R>;
  { x * y } -> std::same_as<R>;
  { -x } -> std::same_as<R>;
  { x == y } -> std::convertible_to<bool>;
  { x.is_zero() } -> std::convertible_to<bool>;
  { x.zero_like() } -> std::same_as<R>;
  { x.one_like() } -> std::same_as<R>;
  { x.from_long_like(n) } -> std::same_as<R>;
  { x.from_rat_like(q) } -> std::same_as<R>;
  { x.inv() } -> std::same_as<R>;
  { x.div_long(n) } -> std::same_as<R>;
  { x.characteristic() } -> std::convertible_to<std::uint64_t>;
  { x.to_string() } -> std::same_as<std::string>;
};

static_assert(CoefficientRing<Rat>);

}  // namespace dnmod
