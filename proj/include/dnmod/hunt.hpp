#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dnmod/mirror.hpp"
#include "dnmod/mpoly.hpp"
#include "dnmod/rat.hpp"

namespace dnmod {

// The coprime index pair (m, n) naming the identity c_{m n} = c_m c_n.
struct Relation {
  long m = 0;
  long n = 0;
  long product() const { return m * n; }
  // Unordered comparison: (4,3) names the same identity as (3,4).
  bool same_pair(const Relation& o) const {
    return (m == o.m && n == o.n) || (m == o.n && n == o.m);
  }
  std::string name() const {
    return "c" + std::to_string(product()) + "=c" + std::to_string(m) + "*c" +
           std::to_string(n);
  }
  friend bool operator==(const Relation&, const Relation&) = default;
};

// Which relations to use: the eight displayed pairs, or every coprime pair
// with product at most nmax.
struct HuntStage {
  static HuntStage first8() { return HuntStage{true, 0}; }
  static HuntStage extended(int nmax) { return HuntStage{false, nmax}; }
  bool use_first8 = true;
  int nmax = 0;
};

std::vector<Relation> relation_set(int op_order, const HuntStage& stage);

// Exact relation check of one parameter tuple: every extended relation with
// product <= nmax is evaluated on the exact c-series; an empty failure list
// means the tuple is a solution to that depth.
struct VerifyReport {
  int nmax = 0;
  std::vector<Relation> checked;
  std::vector<Relation> failures;
  bool ok() const { return failures.empty(); }
};

template <CoefficientRing R>
VerifyReport verify_params(const D2Params<R>& params, int nmax) {
  VerifyReport rep;
  rep.nmax = nmax;
  rep.checked = relation_set(2, HuntStage::extended(nmax));
  QExpansion<R> c = c_series_d2(params, nmax);
  for (const Relation& r : rep.checked)
    if (!(c.at(static_cast<int>(r.product())) ==
          c.at(static_cast<int>(r.m)) * c.at(static_cast<int>(r.n))))
      rep.failures.push_back(r);
  return rep;
}

template <CoefficientRing R>
VerifyReport verify_params(const D3Params<R>& params, int nmax) {
  VerifyReport rep;
  rep.nmax = nmax;
  rep.checked = relation_set(3, HuntStage::extended(nmax));
  QExpansion<R> c = c_series_d3(params, nmax);
  for (const Relation& r : rep.checked)
    if (!(c.at(static_cast<int>(r.product())) ==
          c.at(static_cast<int>(r.m)) * c.at(static_cast<int>(r.n))))
      rep.failures.push_back(r);
  return rep;
}

// --- finite-field enumeration ------------------------------------------------

// One parameter tuple over F_p, entries in [0, p): (alpha2, alpha1, alpha0)
// for order 2 (beta = 0) and (alpha3, alpha2, alpha1, alpha0, beta0) for
// order 3 (beta1 = 0).
using FpTuple = std::vector<int>;

// Engine choice.  `pipeline` runs the mirror pipeline per tuple with F_p
// coefficients and needs p > 2 * max(product); `reduced_model` evaluates
// primitive-integer models of the symbolic relation polynomials, the
// canonical reduction when p divides some c_n denominator.  `automatic`
// picks pipeline exactly when its precondition holds.
enum class FpRoute { automatic, pipeline, reduced_model };

// All tuples satisfying every relation over F_p, in lexicographic order.
// Cost guards: p <= 13 for order 3 (p^5 grid), p <= 101 for order 2 (p^3).
// jobs > 1 splits the outermost coordinate across threads; the merged output
// is identical to the single-threaded one.
std::vector<FpTuple> fp_enumerate(int op_order, std::uint64_t p,
                                  const std::vector<Relation>& relations,
                                  FpRoute route = FpRoute::automatic, int jobs = 1);

// Membership of exact table rows inside the mod-p solution set.  Solutions
// not hit by any row are reported as informational extras, never failures.
struct MembershipRow {
  std::vector<Rat> row;
  FpTuple reduced;
  bool member = false;
};
struct MembershipReport {
  std::uint64_t p = 0;
  std::vector<MembershipRow> rows;
  std::vector<FpTuple> extras;
  bool all_member() const {
    for (const MembershipRow& r : rows)
      if (!r.member) return false;
    return true;
  }
};
MembershipReport reduction_membership(int op_order,
                                      const std::vector<std::vector<Rat>>& rows,
                                      std::uint64_t p,
                                      const std::vector<Relation>& relations);

// --- building blocks (exposed for tests and tools) ---------------------------

// c_1..c_nmax as polynomials in the reduced parameter set: (a2, a1, a0) with
// beta = 0 for order 2, (a3, a2, a1, a0, b0) with beta1 = 0 for order 3.
QExpansion<MPoly> c_series_reduced(int op_order, int nmax);

// Primitive integer model of a rational-coefficient polynomial: multiply by
// the common denominator, divide by the coefficient gcd.  Reducing this model
// mod p is the canonical reduction of the (projective) equation even when p
// divides some original denominator.
struct IntTerm {
  std::vector<int> exp;  // exponents aligned with the polynomial's variable list
  mpz_class coeff;
};
std::vector<IntTerm> primitive_int_model(const MPoly& poly);

// c_1..c_nmax over F_p for one parameter tuple in the reduced chart, computed
// on flat residue arrays; index 0 of the result is an unused zero.  Requires
// p > 2 * nmax.
std::vector<std::uint32_t> fp_c_series(int op_order, std::uint64_t p,
                                       const FpTuple& tuple, int nmax);

// Chinese remainder combination of (residue, modulus) pairs with pairwise
// coprime moduli; the representative in [0, prod moduli).
mpz_class crt_combine(const std::vector<std::pair<mpz_class, mpz_class>>& parts);

// Rational reconstruction of v mod m: the fraction num/den with
// |num|, den <= floor(sqrt((m-1)/2)) congruent to v, when one exists.
std::optional<Rat> rat_reconstruct(const mpz_class& v, const mpz_class& m);

}  // namespace dnmod
