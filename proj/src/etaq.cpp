#include "dnmod/etaq.hpp"

#include <cstdlib>
#include <stdexcept>

namespace dnmod {

namespace {

// a * b^e for integer e; b must have unit constant term when e < 0.
PSeries<Rat> mul_pow(PSeries<Rat> acc, const PSeries<Rat>& b, long e) {
  PSeries<Rat> base = e < 0 ? ps_div(ps_one(Rat(0), b.order()), b) : b;
  for (long i = 0; i < (e < 0 ? -e : e); ++i) acc = ps_mul(acc, base);
  return acc;
}

long parse_long(const std::string& s, const char* what) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("EtaQuotient::parse: bad ") + what + " '" + s + "'");
  }
  if (pos != s.size())
    throw std::invalid_argument(std::string("EtaQuotient::parse: bad ") + what + " '" + s + "'");
  return v;
}

}  // namespace

long EtaQuotient::offset() const {
  long sum = 0;
  for (const EtaFactor& f : factors) sum += f.m * f.e;
  if (sum < 0 || sum % 24 != 0)
    throw std::domain_error("EtaQuotient: offset " + std::to_string(sum) +
                            "/24 is not a non-negative integer");
  return sum / 24;
}

std::string EtaQuotient::to_string() const {
  std::string num, den;
  for (const EtaFactor& f : factors) {
    if (f.e == 0) continue;
    std::string& part = f.e > 0 ? num : den;
    if (!part.empty()) part += "*";
    part += std::to_string(f.m) + "^" + std::to_string(f.e > 0 ? f.e : -f.e);
  }
  if (num.empty()) num = "1^0";
  return den.empty() ? num : num + "/" + den;
}

EtaQuotient EtaQuotient::parse(const std::string& text) {
  std::size_t slash = text.find('/');
  if (slash != std::string::npos && text.find('/', slash + 1) != std::string::npos)
    throw std::invalid_argument("EtaQuotient::parse: more than one '/' in '" + text + "'");
  EtaQuotient out;
  auto scan_part = [&out, &text](const std::string& part, long sign) {
    if (part.empty())
      throw std::invalid_argument("EtaQuotient::parse: empty factor list in '" + text + "'");
    std::size_t start = 0;
    while (start <= part.size()) {
      std::size_t star = part.find('*', start);
      std::string tok = part.substr(start, star == std::string::npos ? star : star - start);
      std::size_t caret = tok.find('^');
      if (caret == std::string::npos)
        throw std::invalid_argument("EtaQuotient::parse: token '" + tok + "' lacks '^'");
      long m = parse_long(tok.substr(0, caret), "argument multiplier");
      long e = parse_long(tok.substr(caret + 1), "exponent");
      if (m < 1)
        throw std::invalid_argument("EtaQuotient::parse: multiplier must be positive in '" +
                                    tok + "'");
      out.factors.push_back({m, sign * e});
      if (star == std::string::npos) break;
      start = star + 1;
    }
  };
  scan_part(slash == std::string::npos ? text : text.substr(0, slash), 1);
  if (slash != std::string::npos) scan_part(text.substr(slash + 1), -1);
  return out;
}

PSeries<Rat> euler_product(int order) {
  PSeries<Rat> out(Rat(0), order);
  for (long k = 0; k * (3 * k - 1) / 2 <= order; ++k) {
    for (long s : {k, -k}) {
      long e = s * (3 * s - 1) / 2;
      if (e <= order) out.at(static_cast<int>(e)) = out.at(static_cast<int>(e)) + Rat(k % 2 ? -1 : 1);
      if (k == 0) break;
    }
  }
  return out;
}

PSeries<Rat> etaq_series(const EtaQuotient& eq, int order) {
  long off = eq.offset();
  PSeries<Rat> out(Rat(0), order);
  if (off > order) return out;
  int m_ord = order - static_cast<int>(off);
  PSeries<Rat> prod = ps_one(Rat(0), m_ord);
  for (const EtaFactor& f : eq.factors) {
    if (f.e == 0) continue;
    int inner = m_ord / static_cast<int>(f.m);
    PSeries<Rat> base = ps_inflate(euler_product(inner), static_cast<int>(f.m), m_ord);
    prod = mul_pow(prod, base, f.e);
  }
  for (int i = 0; i <= m_ord; ++i) out.at(i + static_cast<int>(off)) = prod.at(i);
  return out;
}

PSeries<Rat> legendre_eta(int order) {
  if (order < 1) throw std::invalid_argument("legendre_eta: order must be at least 1");
  static const int chi[5] = {0, 1, -1, -1, 1};
  int m_ord = order - 1;
  PSeries<Rat> base = ps_one(Rat(0), m_ord);
  for (int n = 1; n <= m_ord; ++n) {
    if (chi[n % 5] == 0) continue;
    PSeries<Rat> fac = ps_one(Rat(0), m_ord);
    fac.at(n) = Rat(-1);
    base = mul_pow(base, fac, chi[n % 5]);
  }
  PSeries<Rat> fifth = mul_pow(ps_one(Rat(0), m_ord), base, 5);
  PSeries<Rat> out(Rat(0), order);
  for (int i = 0; i <= m_ord; ++i) out.at(i + 1) = fifth.at(i);
  return out;
}

PSeries<Rat> closed_form_series(const std::string& name, int order) {
  PSeries<Rat> den = ps_one(Rat(0), order);
  if (name == "q_over_1mq2") {
    if (order >= 2) den.at(2) = Rat(-1);
  } else if (name == "q_over_1mq") {
    if (order >= 1) den.at(1) = Rat(-1);
  } else if (name == "q_over_1pqpq2") {
    if (order >= 1) den.at(1) = Rat(1);
    if (order >= 2) den.at(2) = Rat(1);
  } else if (name == "q_over_1mq_sq") {
    if (order >= 1) den.at(1) = Rat(-2);
    if (order >= 2) den.at(2) = Rat(1);
  } else {
    throw std::invalid_argument("closed_form_series: unknown name '" + name + "'");
  }
  return ps_div(ps_identity(Rat(0), order), den);
}

PSeries<Rat> form_series(const std::string& cell, int order) {
  if (cell == "q") return ps_identity(Rat(0), order);
  if (cell.rfind("q_over_", 0) == 0) return closed_form_series(cell, order);
  return etaq_series(EtaQuotient::parse(cell), order);
}

}  // namespace dnmod
