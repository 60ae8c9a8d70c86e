#include "dnmod/registry.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

#ifndef DNMOD_REGISTRY_DEFAULT
#define DNMOD_REGISTRY_DEFAULT "data/registry.txt"
#endif

namespace dnmod {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string::npos ? pos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

bool TableRow::has(const std::string& key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return true;
  return false;
}

const std::string& TableRow::get(const std::string& key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return v;
  throw std::out_of_range("TableRow: no field '" + key + "' in " + table + " row " +
                          std::to_string(row));
}

Rat TableRow::rat(const std::string& key) const { return Rat::parse(get(key)); }

long TableRow::integer(const std::string& key) const {
  Rat v = rat(key);
  if (!v.is_integer() || !v.num().fits_slong_p())
    throw std::invalid_argument("TableRow: field '" + key + "' is not a machine integer");
  return v.num().get_si();
}

std::vector<Rat> TableRow::rat_list(const std::string& key) const {
  std::vector<Rat> out;
  for (const std::string& part : split(get(key), ',')) out.push_back(Rat::parse(trim(part)));
  return out;
}

QuadElem TableRow::quad(const std::string& key) const { return QuadElem::parse(get(key), 5); }

EtaQuotient TableRow::eta(const std::string& key) const { return EtaQuotient::parse(get(key)); }

std::vector<Rat> TableRow::rational_members(const std::string& key) const {
  const std::string& v = get(key);
  std::size_t star = v.find("*z");
  if (star == std::string::npos) return {Rat::parse(v)};
  std::string unit = v.substr(star + 1);
  if (unit != "z4" && unit != "z6")
    throw std::invalid_argument("TableRow: unknown unit factor in '" + v + "'");
  Rat c = Rat::parse(v.substr(0, star));
  return {c, -c};
}

std::vector<std::array<Rat, 3>> TableRow::triples(const std::string& key) const {
  std::vector<std::array<Rat, 3>> out;
  for (const std::string& part : split(get(key), ';')) {
    std::string p = trim(part);
    if (p.size() < 2 || p.front() != '(' || p.back() != ')')
      throw std::invalid_argument("TableRow: malformed triple '" + p + "'");
    std::vector<std::string> nums = split(p.substr(1, p.size() - 2), ',');
    if (nums.size() != 3) throw std::invalid_argument("TableRow: triple arity in '" + p + "'");
    out.push_back({Rat::parse(trim(nums[0])), Rat::parse(trim(nums[1])), Rat::parse(trim(nums[2]))});
  }
  return out;
}

std::string registry_path() {
  const char* env = std::getenv("DNMOD_REGISTRY");
  if (env != nullptr && *env != '\0') return env;
  return DNMOD_REGISTRY_DEFAULT;
}

std::map<std::string, std::vector<TableRow>> load_registry_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("registry: cannot open data file '" + path + "'");
  std::map<std::string, std::vector<TableRow>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    std::vector<std::string> cells = split(body, '|');
    if (cells.size() < 2)
      throw std::runtime_error("registry: malformed record at " + path + ":" +
                               std::to_string(lineno));
    TableRow r;
    r.table = trim(cells[0]);
    for (std::size_t i = 1; i < cells.size(); ++i) {
      std::string cell = trim(cells[i]);
      std::size_t eq = cell.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("registry: field without '=' at " + path + ":" +
                                 std::to_string(lineno));
      std::string key = trim(cell.substr(0, eq));
      std::string val = trim(cell.substr(eq + 1));
      if (key == "row") {
        r.row = static_cast<int>(std::stol(val));
      } else {
        r.fields.emplace_back(std::move(key), std::move(val));
      }
    }
    out[r.table].push_back(std::move(r));
  }
  return out;
}

const std::vector<TableRow>& registry(const std::string& table_id) {
  const auto& ids = registry_table_ids();
  if (std::find(ids.begin(), ids.end(), table_id) == ids.end())
    throw std::invalid_argument("registry: unknown table id '" + table_id + "'");
  static std::mutex mu;
  static std::map<std::string, std::map<std::string, std::vector<TableRow>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  std::string path = registry_path();
  auto it = cache.find(path);
  if (it == cache.end()) it = cache.emplace(path, load_registry_file(path)).first;
  auto jt = it->second.find(table_id);
  if (jt == it->second.end() || jt->second.empty())
    throw std::runtime_error("registry: data file '" + path + "' has no rows for table '" +
                             table_id + "'");
  return jt->second;
}

std::vector<ZagierTriple> zagier_triples() {
  std::vector<ZagierTriple> out;
  for (const TableRow& r : registry("zagier_d2")) {
    ZagierTriple t{r.rat("A"), r.rat("B"), r.rat("lambda"), r.rat_list("u"), r.row, false};
    if (t.u.size() != 6)
      throw std::runtime_error("registry: zagier_d2 row " + std::to_string(r.row) +
                               " must list u_0..u_5");
    bool biquadratic = t.A.is_zero() && t.lambda.is_zero();
    ZagierTriple c{-t.A, biquadratic ? -t.B : t.B, -t.lambda, t.u, r.row, true};
    for (std::size_t n = 0; n < c.u.size(); ++n) {
      bool flip = biquadratic ? (n / 2) % 2 == 1 : n % 2 == 1;
      if (flip) c.u[n] = -c.u[n];
    }
    out.push_back(std::move(t));
    out.push_back(std::move(c));
  }
  return out;
}

D2Params<Rat> d2_of_zagier(const Rat& A, const Rat& B, const Rat& lambda) {
  return {-A, B, Rat(0), lambda};
}

std::vector<D2Params<Rat>> d2_solution_points() {
  std::vector<D2Params<Rat>> out;
  for (const TableRow& r : registry("d2_solutions"))
    for (const Rat& a2 : r.rational_members("alpha2"))
      for (const Rat& a1 : r.rational_members("alpha1"))
        for (const Rat& a0 : r.rational_members("alpha0"))
          out.push_back({a2, a1, a0, Rat(0)});
  return out;
}

D3Params<Rat> d3_params_of_row(const TableRow& r) {
  return {r.rat("alpha3"), r.rat("alpha2"), r.rat("alpha1"),
          r.rat("alpha0"), Rat(0),          r.rat("beta0")};
}

D3Params<QuadElem> d3_params_quad(const TableRow& r) {
  QuadElem zero(Rat(0), Rat(0), 5);
  return {r.quad("alpha3"), r.quad("alpha2"), r.quad("alpha1"),
          r.quad("alpha0"), zero,             r.quad("beta0")};
}

}  // namespace dnmod
