#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dnmod/dnop.hpp"
#include "dnmod/etaq.hpp"
#include "dnmod/quad.hpp"
#include "dnmod/rat.hpp"

namespace dnmod {

// One record of the checked-in solution-table data file.  Fields are kept as
// raw strings in file order; typed accessors parse on demand.
struct TableRow {
  std::string table;
  int row = 0;
  std::vector<std::pair<std::string, std::string>> fields;

  bool has(const std::string& key) const;
  // Throws std::out_of_range when the field is absent.
  const std::string& get(const std::string& key) const;

  Rat rat(const std::string& key) const;
  long integer(const std::string& key) const;
  std::vector<Rat> rat_list(const std::string& key) const;
  // Element of Q(sqrt 5) in a+b*r5 notation; plain rationals also accepted.
  QuadElem quad(const std::string& key) const;
  EtaQuotient eta(const std::string& key) const;
  // Rational instantiations of a value: {v} for a plain rational, {c, -c} for
  // the root-of-unity families written c*z4 / c*z6.
  std::vector<Rat> rational_members(const std::string& key) const;
  // Semicolon-joined parenthesised triples, e.g. "(7,-8,2);(10,9,3)".
  std::vector<std::array<Rat, 3>> triples(const std::string& key) const;
};

// Path of the data file: the DNMOD_REGISTRY environment variable when set,
// otherwise the compiled-in default.
std::string registry_path();

// Parse a data file; result maps table id -> rows in file order.
std::map<std::string, std::vector<TableRow>> load_registry_file(const std::string& path);

// Rows of one table from the file at registry_path(), parsed once per path.
// Throws std::invalid_argument for an id outside the known table set.
const std::vector<TableRow>& registry(const std::string& table_id);

inline const std::vector<std::string>& registry_table_ids() {
  static const std::vector<std::string> ids{
      "zagier_d2", "d2_solutions",      "d3_nondeg", "d3_twist_families",
      "d3_sqrt5",  "d3_degenerate", "bridge"};
  return ids;
}

// One (A,B,lambda) triple of the order-2 recurrence table together with its
// printed solution head u_0..u_5.  Each table row also yields a companion
// triple with u_n -> (-1)^n u_n: (-A,B,-lambda) in general, except the
// biquadratic row (0,-16,0) whose companion (0,16,0) flips B and sends
// u_n -> (-1)^{n/2} u_n on the even support.
struct ZagierTriple {
  Rat A, B, lambda;
  std::vector<Rat> u;
  int source_row = 0;
  bool companion = false;
};

std::vector<ZagierTriple> zagier_triples();

// The parameter chart embedding the recurrence triple into the order-2
// operator family: (alpha2, alpha1, alpha0; beta) = (-A, B, 0; lambda).
D2Params<Rat> d2_of_zagier(const Rat& A, const Rat& B, const Rat& lambda);

// All rational parameter points of the order-2 solution table with beta = 0,
// the two root-of-unity rows expanded into their rational members.
std::vector<D2Params<Rat>> d2_solution_points();

// Parameters of a rational order-3 table row (beta1 = 0 chart).
D3Params<Rat> d3_params_of_row(const TableRow& r);

// Parameters of the Q(sqrt 5) row.
D3Params<QuadElem> d3_params_quad(const TableRow& r);

}  // namespace dnmod
