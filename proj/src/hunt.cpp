#include "dnmod/hunt.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "dnmod/fp.hpp"
#include "dnmod/hunt_kernel.hpp"

namespace dnmod {

namespace {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void check_op_order(int op_order, const char* who) {
  if (op_order != 2 && op_order != 3)
    throw std::invalid_argument(std::string(who) + ": order must be 2 or 3");
}

void check_relations(const std::vector<Relation>& rels, const char* who) {
  if (rels.empty()) throw std::invalid_argument(std::string(who) + ": empty relation set");
  for (const Relation& r : rels)
    if (r.m < 1 || r.n < 1 || std::gcd(r.m, r.n) != 1)
      throw std::invalid_argument(std::string(who) + ": invalid pair " + r.name());
}

long max_product(const std::vector<Relation>& rels) {
  long m = 0;
  for (const Relation& r : rels) m = std::max(m, r.product());
  return m;
}

int reduce_rat(const Rat& r, std::uint64_t p) {
  return static_cast<int>(Fp::from_rat(r, p).residue());
}

// Symbolic c-series in the reduced chart, cached per order; holders keep
// their snapshot alive if a larger request later replaces the cache entry.
std::shared_ptr<const QExpansion<MPoly>> reduced_c_cached(int op_order, int nmax) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const QExpansion<MPoly>>> cache;
  std::scoped_lock lk(mu);
  auto& slot = cache[op_order];
  if (!slot || slot->nmax() < nmax)
    slot = std::make_shared<const QExpansion<MPoly>>(c_series_reduced(op_order, nmax));
  return slot;
}

// ---- route B: primitive integer models evaluated on the F_p grid -----------

struct OuterTerm {
  std::uint32_t coeff;        // in [1, p)
  std::vector<int> exp;       // exponents of the outer variables
};

struct GridRelation {
  Relation rel;
  int inner_deg = 0;
  std::vector<std::vector<OuterTerm>> by_inner;  // index = innermost exponent
};

std::vector<GridRelation> grid_relations(int op_order, std::uint64_t p,
                                         const std::vector<Relation>& rels) {
  const int nmax = static_cast<int>(max_product(rels));
  std::shared_ptr<const QExpansion<MPoly>> c = reduced_c_cached(op_order, nmax);
  const int nvars = op_order == 2 ? 3 : 5;
  std::vector<GridRelation> out;
  for (const Relation& r : rels) {
    MPoly poly = c->at(static_cast<int>(r.product())) -
                 c->at(static_cast<int>(r.m)) * c->at(static_cast<int>(r.n));
    if (poly.is_zero()) continue;  // vacuous identity, no constraint
    GridRelation gr;
    gr.rel = r;
    for (IntTerm& t : primitive_int_model(poly)) {
      mpz_class m = t.coeff % mpz_class(static_cast<unsigned long>(p));
      if (m < 0) m += mpz_class(static_cast<unsigned long>(p));
      std::uint32_t cm = static_cast<std::uint32_t>(m.get_ui());
      if (cm == 0) continue;
      int e = t.exp[static_cast<std::size_t>(nvars - 1)];
      gr.inner_deg = std::max(gr.inner_deg, e);
      if (static_cast<int>(gr.by_inner.size()) <= e)
        gr.by_inner.resize(static_cast<std::size_t>(e) + 1);
      t.exp.pop_back();
      gr.by_inner[static_cast<std::size_t>(e)].push_back(OuterTerm{cm, std::move(t.exp)});
    }
    if (gr.by_inner.empty()) continue;  // model vanished mod p coefficientwise
    out.push_back(std::move(gr));
  }
  return out;
}

void enumerate_reduced_range(const std::vector<GridRelation>& rels, std::uint64_t p,
                             int nvars, int outer_lo, int outer_hi,
                             std::vector<FpTuple>& out) {
  const int pi = static_cast<int>(p);
  const int outer = nvars - 1;
  // Power tables per outer variable: pow[v][a][e] = a^e mod p.
  std::vector<int> max_exp(static_cast<std::size_t>(outer), 0);
  for (const GridRelation& gr : rels)
    for (const auto& bucket : gr.by_inner)
      for (const OuterTerm& t : bucket)
        for (int v = 0; v < outer; ++v)
          max_exp[static_cast<std::size_t>(v)] =
              std::max(max_exp[static_cast<std::size_t>(v)], t.exp[static_cast<std::size_t>(v)]);
  std::vector<std::vector<std::vector<std::uint32_t>>> pow(static_cast<std::size_t>(outer));
  for (int v = 0; v < outer; ++v) {
    auto& pv = pow[static_cast<std::size_t>(v)];
    pv.assign(p, {});
    for (int a = 0; a < pi; ++a) {
      auto& pa = pv[static_cast<std::size_t>(a)];
      pa.assign(static_cast<std::size_t>(max_exp[static_cast<std::size_t>(v)]) + 1, 1);
      for (int e = 1; e <= max_exp[static_cast<std::size_t>(v)]; ++e)
        pa[static_cast<std::size_t>(e)] = static_cast<std::uint32_t>(
            static_cast<std::uint64_t>(pa[static_cast<std::size_t>(e - 1)]) *
            static_cast<std::uint64_t>(a) % p);
    }
  }
  kernel::SweepFn sweep = kernel::active_sweep();
  std::vector<int> a(static_cast<std::size_t>(outer), 0);
  a[0] = outer_lo;
  std::vector<std::uint16_t> coeffs;
  std::vector<std::uint8_t> zeros(p), mask(p);
  while (a[0] < outer_hi) {
    std::fill(mask.begin(), mask.end(), static_cast<std::uint8_t>(1));
    int alive = pi;
    for (const GridRelation& gr : rels) {
      coeffs.assign(static_cast<std::size_t>(gr.inner_deg) + 1, 0);
      for (int e = 0; e <= gr.inner_deg; ++e) {
        std::uint64_t acc = 0;
        for (const OuterTerm& t : gr.by_inner[static_cast<std::size_t>(e)]) {
          std::uint64_t term = t.coeff;
          for (int v = 0; v < outer; ++v) {
            int ev = t.exp[static_cast<std::size_t>(v)];
            if (ev)
              term = term *
                     pow[static_cast<std::size_t>(v)][static_cast<std::size_t>(a[static_cast<std::size_t>(v)])]
                        [static_cast<std::size_t>(ev)] %
                     p;
          }
          acc += term;  // each term < p < 256; no overflow for any realistic size
        }
        coeffs[static_cast<std::size_t>(e)] = static_cast<std::uint16_t>(acc % p);
      }
      sweep(coeffs.data(), gr.inner_deg, static_cast<std::uint16_t>(p), zeros.data());
      alive = 0;
      for (int x = 0; x < pi; ++x) {
        mask[static_cast<std::size_t>(x)] &= zeros[static_cast<std::size_t>(x)];
        alive += mask[static_cast<std::size_t>(x)];
      }
      if (!alive) break;  // earliest-relation pruning
    }
    if (alive)
      for (int x = 0; x < pi; ++x)
        if (mask[static_cast<std::size_t>(x)]) {
          FpTuple t(a.begin(), a.end());
          t.push_back(x);
          out.push_back(std::move(t));
        }
    // lexicographic odometer over the outer coordinates
    int v = outer - 1;
    while (v >= 0) {
      if (++a[static_cast<std::size_t>(v)] < (v == 0 ? outer_hi : pi)) break;
      if (v == 0) return;
      a[static_cast<std::size_t>(v)] = 0;
      --v;
    }
    if (v < 0) return;
  }
}

// ---- route A: flat mod-p mirror pipeline per tuple --------------------------

// Evaluations of the normalized operator coefficients P_k and P_k' at the
// integers 0..tn, decomposed as constant + sum coeff_v * param_v; the
// families are linear in their parameters, which the builder asserts.
struct FlatTables {
  int op_order = 0, nvars = 0, kmax = 0, tn = 0;
  std::uint32_t p = 0;
  std::vector<std::vector<std::array<std::uint32_t, 6>>> pv, dpv;  // [k][x][v]
};

std::array<Rat, 6> linear_parts(const MPoly& e, int nvars) {
  std::array<Rat, 6> out{};
  for (const auto& [exp, coeff] : e.terms()) {
    int total = 0, which = -1;
    for (std::size_t i = 0; i < exp.size(); ++i) {
      total += exp[i];
      if (exp[i] == 1) which = static_cast<int>(i);
    }
    if (total == 0)
      out[static_cast<std::size_t>(nvars)] = coeff;
    else if (total == 1)
      out[static_cast<std::size_t>(which)] = coeff;
    else
      throw std::logic_error("fp pipeline: operator table is not linear in the parameters");
  }
  return out;
}

FlatTables build_flat_tables(int op_order, std::uint64_t p, int tn) {
  FlatTables ft;
  ft.op_order = op_order;
  ft.nvars = op_order == 2 ? 3 : 5;
  ft.tn = tn;
  ft.p = static_cast<std::uint32_t>(p);
  OperatorForm<MPoly> L = [&] {
    if (op_order == 2) {
      std::vector<Sym> v{Sym::a2, Sym::a1, Sym::a0};
      D2Params<MPoly> q{MPoly::var(v, Sym::a2), MPoly::var(v, Sym::a1),
                        MPoly::var(v, Sym::a0), MPoly(v)};
      return operator_form(q).t_side;
    }
    std::vector<Sym> v{Sym::a3, Sym::a2, Sym::a1, Sym::a0, Sym::b0};
    D3Params<MPoly> q{MPoly::var(v, Sym::a3), MPoly::var(v, Sym::a2),
                      MPoly::var(v, Sym::a1), MPoly::var(v, Sym::a0), MPoly(v),
                      MPoly::var(v, Sym::b0)};
    return operator_form(q).t_side;
  }();
  ft.kmax = static_cast<int>(L.dcoeff.size()) - 1;
  ft.pv.resize(static_cast<std::size_t>(ft.kmax) + 1);
  ft.dpv.resize(static_cast<std::size_t>(ft.kmax) + 1);
  for (int k = 0; k <= ft.kmax; ++k) {
    const UPoly<MPoly>& P = L.dcoeff[static_cast<std::size_t>(k)];
    UPoly<MPoly> dP = P.derivative();
    auto& pvk = ft.pv[static_cast<std::size_t>(k)];
    auto& dpvk = ft.dpv[static_cast<std::size_t>(k)];
    pvk.resize(static_cast<std::size_t>(tn) + 1);
    dpvk.resize(static_cast<std::size_t>(tn) + 1);
    for (int x = 0; x <= tn; ++x) {
      std::array<Rat, 6> lin = linear_parts(P.eval_long(x), ft.nvars);
      std::array<Rat, 6> dlin = linear_parts(dP.eval_long(x), ft.nvars);
      for (int v = 0; v <= ft.nvars; ++v) {
        pvk[static_cast<std::size_t>(x)][static_cast<std::size_t>(v)] =
            static_cast<std::uint32_t>(Fp::from_rat(lin[static_cast<std::size_t>(v)], p).residue());
        dpvk[static_cast<std::size_t>(x)][static_cast<std::size_t>(v)] =
            static_cast<std::uint32_t>(Fp::from_rat(dlin[static_cast<std::size_t>(v)], p).residue());
      }
    }
  }
  return ft;
}

struct FlatEngine {
  FlatTables ft;
  int nmax = 0;
  std::vector<std::uint32_t> inv;  // inverses of 1..max(nmax, tn)
  // per-tuple scratch
  std::vector<std::vector<std::uint32_t>> pkx, dpkx;  // [k][n] = P_k(n-k), P_k'(n-k)
  std::vector<std::uint32_t> u, psi, rat, es, kf, root, w, wp, pw, nxt, c;

  void init(int op_order, std::uint64_t p, int nmax_in) {
    nmax = nmax_in;
    int tn = op_order == 2 ? nmax / 2 + 1 : nmax;
    ft = build_flat_tables(op_order, p, tn);
    int top = std::max(nmax, tn);
    inv.assign(static_cast<std::size_t>(top) + 1, 0);
    if (top >= 1) inv[1] = 1;
    for (int i = 2; i <= top; ++i)
      inv[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(
          static_cast<std::uint64_t>(p - p / static_cast<std::uint64_t>(i)) *
          inv[static_cast<std::size_t>(p % static_cast<std::uint64_t>(i))] % p);
    pkx.assign(static_cast<std::size_t>(ft.kmax) + 1,
               std::vector<std::uint32_t>(static_cast<std::size_t>(tn) + 1, 0));
    dpkx = pkx;
    u.resize(static_cast<std::size_t>(tn) + 1);
    psi.resize(static_cast<std::size_t>(tn) + 1);
    rat.resize(static_cast<std::size_t>(tn) + 1);
    es.resize(static_cast<std::size_t>(tn) + 1);
    kf.resize(static_cast<std::size_t>(tn) + 1);
    root.resize(static_cast<std::size_t>(tn) + 1);
    w.resize(static_cast<std::size_t>(tn) + 1);
    wp.resize(static_cast<std::size_t>(tn) + 1);
    pw.resize(static_cast<std::size_t>(tn) + 1);
    nxt.resize(static_cast<std::size_t>(tn) + 1);
    c.resize(static_cast<std::size_t>(nmax) + 1);
  }

  // c_1..c_nmax mod p for the tuple (reduced chart); c[0] stays 0.
  const std::vector<std::uint32_t>& run(const int* a) {
    if (ft.p < (1u << 15))
      run_impl<std::uint64_t>(a);
    else
      run_impl<unsigned __int128>(a);
    return c;
  }

 private:
  template <class Acc>
  void run_impl(const int* a) {
    const std::uint64_t p = ft.p;
    const int tn = ft.tn, kmax = ft.kmax, ord = ft.op_order;
    auto mul = [p](std::uint32_t x, std::uint32_t y) {
      return static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * y % p);
    };
    // Per-tuple operator values: pkx[k][n] = P_k(n - k) etc.
    for (int k = 0; k <= kmax; ++k)
      for (int n = k == 0 ? 0 : k; n <= tn; ++n) {
        const auto& lv = ft.pv[static_cast<std::size_t>(k)][static_cast<std::size_t>(n - k)];
        const auto& dv = ft.dpv[static_cast<std::size_t>(k)][static_cast<std::size_t>(n - k)];
        Acc s = lv[static_cast<std::size_t>(ft.nvars)];
        Acc ds = dv[static_cast<std::size_t>(ft.nvars)];
        for (int v = 0; v < ft.nvars; ++v) {
          s += static_cast<Acc>(lv[static_cast<std::size_t>(v)]) *
               static_cast<std::uint32_t>(a[v]);
          ds += static_cast<Acc>(dv[static_cast<std::size_t>(v)]) *
                static_cast<std::uint32_t>(a[v]);
        }
        pkx[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)] =
            static_cast<std::uint32_t>(s % p);
        dpkx[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)] =
            static_cast<std::uint32_t>(ds % p);
      }
    // Frobenius recurrences: n^ord u_n = -sum P_k(n-k) u_{n-k}, psi likewise
    // with the derivative terms added.
    u[0] = 1;
    psi[0] = 0;
    for (int n = 1; n <= tn; ++n) {
      std::uint32_t hinv = inv[static_cast<std::size_t>(n)];
      for (int r = 1; r < ord; ++r) hinv = mul(hinv, inv[static_cast<std::size_t>(n)]);
      Acc su = 0;
      for (int k = 1; k <= std::min(n, kmax); ++k)
        su += static_cast<Acc>(pkx[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)]) *
              u[static_cast<std::size_t>(n - k)];
      std::uint32_t ru = static_cast<std::uint32_t>(su % p);
      u[static_cast<std::size_t>(n)] = mul(ru == 0 ? 0 : static_cast<std::uint32_t>(p) - ru, hinv);
      // The k = 0 derivative term reads u_n, so psi_n comes second.
      Acc sp = 0;
      for (int k = 1; k <= std::min(n, kmax); ++k)
        sp += static_cast<Acc>(pkx[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)]) *
              psi[static_cast<std::size_t>(n - k)];
      for (int k = 0; k <= std::min(n, kmax); ++k)
        sp += static_cast<Acc>(dpkx[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)]) *
              u[static_cast<std::size_t>(n - k)];
      std::uint32_t rp = static_cast<std::uint32_t>(sp % p);
      psi[static_cast<std::size_t>(n)] = mul(rp == 0 ? 0 : static_cast<std::uint32_t>(p) - rp, hinv);
    }
    // rat = psi / u (u_0 = 1)
    for (int n = 0; n <= tn; ++n) {
      Acc s = 0;
      for (int k = 1; k <= n; ++k)
        s += static_cast<Acc>(u[static_cast<std::size_t>(k)]) *
             rat[static_cast<std::size_t>(n - k)];
      std::uint32_t r = static_cast<std::uint32_t>(s % p);
      rat[static_cast<std::size_t>(n)] =
          (psi[static_cast<std::size_t>(n)] + static_cast<std::uint32_t>(p) - r) %
          static_cast<std::uint32_t>(p);
    }
    // es = exp(-rat / h) with h = 2 for the half-index chart, 1 otherwise.
    const std::uint32_t half = ord == 2 ? inv[2] : 1;
    for (int k = 1; k <= tn; ++k) {
      std::uint32_t v = mul(mul(rat[static_cast<std::size_t>(k)], half),
                            static_cast<std::uint32_t>(k % static_cast<int>(p)));
      kf[static_cast<std::size_t>(k)] = v == 0 ? 0 : static_cast<std::uint32_t>(p) - v;
    }
    es[0] = 1;
    for (int n = 1; n <= tn; ++n) {
      Acc s = 0;
      for (int k = 1; k <= n; ++k)
        s += static_cast<Acc>(kf[static_cast<std::size_t>(k)]) *
             es[static_cast<std::size_t>(n - k)];
      es[static_cast<std::size_t>(n)] =
          mul(static_cast<std::uint32_t>(s % p), inv[static_cast<std::size_t>(n)]);
    }
    if (ord == 2) {
      // root = sqrt(1 + a2 t + a1 t^2 + a0 t^3)
      root[0] = 1;
      for (int n = 1; n <= tn; ++n) {
        std::uint32_t g = 0;
        if (n == 1) g = static_cast<std::uint32_t>(a[0]);
        if (n == 2) g = static_cast<std::uint32_t>(a[1]);
        if (n == 3) g = static_cast<std::uint32_t>(a[2]);
        Acc s = 0;
        for (int k = 1; k < n; ++k)
          s += static_cast<Acc>(root[static_cast<std::size_t>(k)]) *
               root[static_cast<std::size_t>(n - k)];
        std::uint32_t r = static_cast<std::uint32_t>(s % p);
        root[static_cast<std::size_t>(n)] =
            mul((g + static_cast<std::uint32_t>(p) - r) % static_cast<std::uint32_t>(p), inv[2]);
      }
      // w = root * u * u in the t chart; W(s) = s w(s^2)
      series_mul<Acc>(root.data(), u.data(), nxt.data(), tn, p);
      series_mul<Acc>(nxt.data(), u.data(), w.data(), tn, p);
      for (int i = 0; i <= tn; ++i)
        wp[static_cast<std::size_t>(i)] =
            mul(w[static_cast<std::size_t>(i)],
                static_cast<std::uint32_t>((2 * i + 1) % static_cast<int>(p)));
      std::fill(pw.begin(), pw.end(), 0);
      pw[0] = 1;
      c[0] = 0;
      for (int n = 1; n <= nmax; ++n) {
        series_mul<Acc>(pw.data(), es.data(), nxt.data(), tn, p);
        pw.swap(nxt);
        if (n % 2 == 0) {
          c[static_cast<std::size_t>(n)] = 0;
          continue;
        }
        int h = (n - 1) / 2;
        Acc s = 0;
        for (int i = 0; i <= h; ++i)
          s += static_cast<Acc>(wp[static_cast<std::size_t>(i)]) *
               pw[static_cast<std::size_t>(h - i)];
        c[static_cast<std::size_t>(n)] =
            mul(static_cast<std::uint32_t>(s % p), inv[static_cast<std::size_t>(n)]);
      }
    } else {
      // h'(t) for h = t phi0: coefficients (i+1) u_i
      for (int i = 0; i <= tn; ++i)
        wp[static_cast<std::size_t>(i)] =
            mul(u[static_cast<std::size_t>(i)],
                static_cast<std::uint32_t>((i + 1) % static_cast<int>(p)));
      std::fill(pw.begin(), pw.end(), 0);
      pw[0] = 1;
      c[0] = 0;
      for (int n = 1; n <= nmax; ++n) {
        series_mul<Acc>(pw.data(), es.data(), nxt.data(), tn, p);
        pw.swap(nxt);
        Acc s = 0;
        for (int i = 0; i < n; ++i)
          s += static_cast<Acc>(wp[static_cast<std::size_t>(i)]) *
               pw[static_cast<std::size_t>(n - 1 - i)];
        c[static_cast<std::size_t>(n)] =
            mul(static_cast<std::uint32_t>(s % p), inv[static_cast<std::size_t>(n)]);
      }
    }
  }

  template <class Acc>
  static void series_mul(const std::uint32_t* x, const std::uint32_t* y, std::uint32_t* out,
                         int ord, std::uint64_t p) {
    for (int n = 0; n <= ord; ++n) {
      Acc s = 0;
      for (int k = 0; k <= n; ++k)
        s += static_cast<Acc>(x[k]) * y[n - k];
      out[n] = static_cast<std::uint32_t>(s % p);
    }
  }
};

void enumerate_pipeline_range(FlatEngine engine, const std::vector<Relation>& rels,
                              std::uint64_t p, int nvars, int outer_lo, int outer_hi,
                              std::vector<FpTuple>& out) {
  const int pi = static_cast<int>(p);
  std::vector<int> a(static_cast<std::size_t>(nvars), 0);
  a[0] = outer_lo;
  auto mul = [p](std::uint32_t x, std::uint32_t y) {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * y % p);
  };
  while (a[0] < outer_hi) {
    const std::vector<std::uint32_t>& c = engine.run(a.data());
    bool good = true;
    for (const Relation& r : rels)
      if (c[static_cast<std::size_t>(r.product())] !=
          mul(c[static_cast<std::size_t>(r.m)], c[static_cast<std::size_t>(r.n)])) {
        good = false;  // earliest-relation pruning
        break;
      }
    if (good) out.emplace_back(a.begin(), a.end());
    int v = nvars - 1;
    while (v >= 0) {
      if (++a[static_cast<std::size_t>(v)] < (v == 0 ? outer_hi : pi)) break;
      if (v == 0) return;
      a[static_cast<std::size_t>(v)] = 0;
      --v;
    }
    if (v < 0) return;
  }
}

std::vector<FpTuple> run_chunked(std::uint64_t p, int jobs,
                                 const std::function<void(int, int, std::vector<FpTuple>&)>& work) {
  const int pi = static_cast<int>(p);
  jobs = std::max(1, std::min(jobs, pi));
  if (jobs == 1) {
    std::vector<FpTuple> out;
    work(0, pi, out);
    return out;
  }
  std::vector<std::vector<FpTuple>> parts(static_cast<std::size_t>(jobs));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
  std::vector<std::thread> ts;
  ts.reserve(static_cast<std::size_t>(jobs));
  for (int j = 0; j < jobs; ++j) {
    int lo = pi * j / jobs, hi = pi * (j + 1) / jobs;
    ts.emplace_back([&, j, lo, hi] {
      try {
        work(lo, hi, parts[static_cast<std::size_t>(j)]);
      } catch (...) {
        errors[static_cast<std::size_t>(j)] = std::current_exception();
      }
    });
  }
  for (std::thread& t : ts) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<FpTuple> out;  // chunks are ascending in the outermost coordinate
  for (auto& part : parts)
    for (auto& t : part) out.push_back(std::move(t));
  return out;
}

}  // namespace

std::vector<Relation> relation_set(int op_order, const HuntStage& stage) {
  check_op_order(op_order, "relation_set");
  if (stage.use_first8)
    return {{2, 3}, {2, 5}, {4, 3}, {2, 7}, {3, 5}, {2, 9}, {3, 7}, {2, 11}};
  std::vector<Relation> out;
  for (long mn = 6; mn <= stage.nmax; ++mn)
    for (long m = 2; m * m < mn; ++m)
      if (mn % m == 0 && std::gcd(m, mn / m) == 1) out.push_back(Relation{m, mn / m});
  return out;
}

QExpansion<MPoly> c_series_reduced(int op_order, int nmax) {
  check_op_order(op_order, "c_series_reduced");
  if (nmax < 1 || nmax > 26)
    throw std::invalid_argument("c_series_reduced: nmax must be in [1, 26]");
  if (op_order == 2) {
    std::vector<Sym> v{Sym::a2, Sym::a1, Sym::a0};
    D2Params<MPoly> q{MPoly::var(v, Sym::a2), MPoly::var(v, Sym::a1), MPoly::var(v, Sym::a0),
                      MPoly(v)};
    return c_series_d2(q, nmax);
  }
  std::vector<Sym> v{Sym::a3, Sym::a2, Sym::a1, Sym::a0, Sym::b0};
  D3Params<MPoly> q{MPoly::var(v, Sym::a3), MPoly::var(v, Sym::a2), MPoly::var(v, Sym::a1),
                    MPoly::var(v, Sym::a0), MPoly(v), MPoly::var(v, Sym::b0)};
  return c_series_d3(q, nmax);
}

std::vector<IntTerm> primitive_int_model(const MPoly& poly) {
  std::vector<IntTerm> out;
  auto terms = poly.terms();
  if (terms.empty()) return out;
  mpz_class lcm_den(1);
  for (const auto& [e, c] : terms)
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.den().get_mpz_t());
  mpz_class content(0);
  out.reserve(terms.size());
  for (auto& [e, c] : terms) {
    mpz_class v = c.num() * (lcm_den / c.den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    out.push_back(IntTerm{std::move(e), std::move(v)});
  }
  if (content > 1)
    for (IntTerm& t : out) t.coeff /= content;
  return out;
}

std::vector<std::uint32_t> fp_c_series(int op_order, std::uint64_t p, const FpTuple& tuple,
                                       int nmax) {
  check_op_order(op_order, "fp_c_series");
  if (!is_prime_u64(p) || p < 3 || p >= (1ull << 31))
    throw std::invalid_argument("fp_c_series: p must be an odd prime below 2^31");
  if (nmax < 1 || p <= 2 * static_cast<std::uint64_t>(nmax))
    throw std::domain_error("fp_c_series: requires p > 2*nmax");
  const int nvars = op_order == 2 ? 3 : 5;
  if (static_cast<int>(tuple.size()) != nvars)
    throw std::invalid_argument("fp_c_series: wrong tuple size");
  std::vector<int> a(tuple);
  for (int& x : a) x = static_cast<int>(((x % static_cast<int>(p)) + static_cast<int>(p)) % static_cast<int>(p));
  FlatEngine eng;
  eng.init(op_order, p, nmax);
  return eng.run(a.data());
}

std::vector<FpTuple> fp_enumerate(int op_order, std::uint64_t p,
                                  const std::vector<Relation>& relations, FpRoute route,
                                  int jobs) {
  check_op_order(op_order, "fp_enumerate");
  check_relations(relations, "fp_enumerate");
  if (!is_prime_u64(p) || p < 3)
    throw std::invalid_argument("fp_enumerate: p must be an odd prime");
  if (op_order == 3 && p > 13)
    throw std::domain_error(
        "fp_enumerate: cost guard exceeded (order-3 enumeration requires p <= 13)");
  if (op_order == 2 && p > 101)
    throw std::domain_error(
        "fp_enumerate: cost guard exceeded (order-2 enumeration requires p <= 101)");
  const long maxidx = max_product(relations);
  if (route == FpRoute::automatic)
    route = p > 2 * static_cast<std::uint64_t>(maxidx) ? FpRoute::pipeline
                                                       : FpRoute::reduced_model;
  const int nvars = op_order == 2 ? 3 : 5;
  if (route == FpRoute::pipeline) {
    if (p <= 2 * static_cast<std::uint64_t>(maxidx))
      throw std::domain_error("fp_enumerate: pipeline route requires p > 2*max(m*n)");
    FlatEngine eng;
    eng.init(op_order, p, static_cast<int>(maxidx));
    return run_chunked(p, jobs, [&](int lo, int hi, std::vector<FpTuple>& out) {
      enumerate_pipeline_range(eng, relations, p, nvars, lo, hi, out);
    });
  }
  if (maxidx > 26)
    throw std::domain_error(
        "fp_enumerate: reduced-model route is capped at relation products <= 26");
  std::vector<GridRelation> rels = grid_relations(op_order, p, relations);
  return run_chunked(p, jobs, [&](int lo, int hi, std::vector<FpTuple>& out) {
    enumerate_reduced_range(rels, p, nvars, lo, hi, out);
  });
}

MembershipReport reduction_membership(int op_order, const std::vector<std::vector<Rat>>& rows,
                                      std::uint64_t p, const std::vector<Relation>& relations) {
  const int nvars = op_order == 2 ? 3 : 5;
  MembershipReport rep;
  rep.p = p;
  std::vector<FpTuple> sols = fp_enumerate(op_order, p, relations);
  for (const std::vector<Rat>& row : rows) {
    if (static_cast<int>(row.size()) != nvars)
      throw std::invalid_argument("reduction_membership: wrong row size");
    MembershipRow mr;
    mr.row = row;
    for (const Rat& r : row) mr.reduced.push_back(reduce_rat(r, p));
    mr.member = std::binary_search(sols.begin(), sols.end(), mr.reduced);
    rep.rows.push_back(std::move(mr));
  }
  for (const FpTuple& s : sols) {
    bool hit = false;
    for (const MembershipRow& mr : rep.rows)
      if (mr.reduced == s) {
        hit = true;
        break;
      }
    if (!hit) rep.extras.push_back(s);
  }
  return rep;
}

mpz_class crt_combine(const std::vector<std::pair<mpz_class, mpz_class>>& parts) {
  if (parts.empty()) throw std::invalid_argument("crt_combine: no parts");
  mpz_class r(0), m(1);
  for (const auto& [ri, mi] : parts) {
    if (mi < 2) throw std::invalid_argument("crt_combine: modulus must exceed 1");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), mi.get_mpz_t());
    if (g != 1) throw std::invalid_argument("crt_combine: moduli are not coprime");
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), m.get_mpz_t(), mi.get_mpz_t());
    mpz_class d = ((ri - r) * inv) % mi;
    if (d < 0) d += mi;
    r += m * d;
    m *= mi;
  }
  return r;
}

std::optional<Rat> rat_reconstruct(const mpz_class& v, const mpz_class& m) {
  if (m < 2) throw std::invalid_argument("rat_reconstruct: modulus must exceed 1");
  mpz_class bound = (m - 1) / 2;
  mpz_sqrt(bound.get_mpz_t(), bound.get_mpz_t());
  mpz_class r0 = m, r1 = v % m;
  if (r1 < 0) r1 += m;
  mpz_class t0(0), t1(1);
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    mpz_class t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  mpz_class num = r1, den = t1;
  if (den == 0) return std::nullopt;
  if (den < 0) {
    den = -den;
    num = -num;
  }
  if (den > bound) return std::nullopt;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g > 1) return std::nullopt;
  mpz_class check = (num - den * v) % m;
  if (check != 0) return std::nullopt;
  return Rat(num, den);
}

}  // namespace dnmod
