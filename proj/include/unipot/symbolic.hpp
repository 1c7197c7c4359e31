#ifndef UNIPOT_SYMBOLIC_HPP
#define UNIPOT_SYMBOLIC_HPP

// Symbolic collection: the Hall polynomial tables computed once as shared
// subexpression programs. The multiply family c_rs (r < s) rewrites
// (prod_{s>r} x_s(a_s)) x_r(b) = x_r(b) prod_{s>r} x_s(c_rs); the inversion
// family g_r gives u^{-1} = prod x_r(g_r(a)). Strategy CFL collects over the
// height-compatible ordering, CFO over the fixed additive (papi) ordering,
// and SD builds the programs from the classical closed-form recursions over
// the representation ordering.

#include <map>
#include <memory>
#include <mutex>

#include "unipot/collect.hpp"
#include "unipot/slp.hpp"

namespace unipot {

enum class TableStrategy { CFL, CFO, SD };

inline const char* strategy_name(TableStrategy s) {
  switch (s) {
    case TableStrategy::CFL: return "cfl";
    case TableStrategy::CFO: return "cfo";
    case TableStrategy::SD: return "sd";
  }
  return "?";
}

struct SymbolicTables {
  PresentationPtr pres;
  TableStrategy strategy;
  Ordering ord; // tables are relative to this ordering's positions
  std::shared_ptr<slp::Builder> builder;
  // inputs 0..N-1 are the coefficients at positions 1..N, input N is b
  std::vector<std::int32_t> mult; // [(r-1)*N + (s-1)] for 1 <= r < s <= N
  std::vector<std::int32_t> inv;  // [r-1] for 1 <= r <= N

  int n() const { return ord.size(); }
  std::int32_t mult_entry(int r, int s) const { return mult[(r - 1) * ord.size() + (s - 1)]; }
  std::size_t node_count() const { return builder->node_count(); }
  std::size_t mult_entry_count() const {
    std::size_t nn = ord.size();
    return nn * (nn - 1) / 2;
  }
};

// Dense univariate F_p[t] used for degree probing of large programs.
class UniPolyFp {
public:
  using Elem = std::vector<std::uint64_t>; // coefficients, no trailing zeros

  explicit UniPolyFp(std::uint64_t p) : f_(p) {}
  std::uint64_t characteristic() const { return f_.modulus(); }

  Elem zero() const { return {}; }
  Elem one() const { return {1}; }
  Elem from_int(std::int64_t v) const {
    auto x = f_.from_int(v);
    return x == 0 ? Elem{} : Elem{x};
  }
  Elem variable(std::uint64_t scale) const { return Elem{0, scale % f_.modulus()}; }
  Elem add(const Elem& a, const Elem& b) const {
    Elem r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = f_.add(r[i], b[i]);
    trim(r);
    return r;
  }
  Elem neg(const Elem& a) const {
    Elem r = a;
    for (auto& v : r) v = f_.neg(v);
    return r;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    if (a.empty() || b.empty()) return {};
    Elem r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        r[i + j] = f_.add(r[i + j], f_.mul(a[i], b[j]));
    trim(r);
    return r;
  }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  bool is_zero(const Elem& a) const { return a.empty(); }
  int degree(const Elem& a) const { return static_cast<int>(a.size()) - 1; } // -1 for zero
  std::string format(const Elem&) const { return "<unipoly>"; }
  Elem parse(const std::string&) const { throw UnsupportedError("UniPolyFp: no literal syntax"); }

private:
  static void trim(Elem& r) {
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  Fp f_;
};

namespace detail_sym {

// Inversion-program degrees for a candidate ordering, by a univariate probe
// (exact with probability 1 - O(deg/p) per entry).
inline std::vector<int> probe_inv_degrees(const SplitPresentation& pres, const Ordering& ord,
                                          std::uint64_t probe_seed) {
  const RootSystem& rs = *pres.rs;
  const int n = rs.num_positive();
  slp::Builder b(n + 1, 64 * kDefaultNodeCap);
  slp::SlpRing sring(b);
  Word<slp::SlpRing> w(sring);
  for (int k = n; k >= 1; --k) w.push_back(ord.root_at(k - 1), b.input(k - 1), -1);
  CollectedElement<slp::SlpRing> e = collect_from_left(pres, sring, w, ord);
  UniPolyFp up(2147483647);
  slp::Evaluator<UniPolyFp> ev(b);
  std::mt19937_64 rng(probe_seed);
  std::vector<UniPolyFp::Elem> in;
  for (int v = 0; v <= n; ++v) in.push_back(up.variable(1 + rng() % 2000000000));
  ev.begin(up, in);
  std::vector<int> degs(n);
  for (int r = 1; r <= n; ++r) degs[r - 1] = up.degree(ev.get(up, e.c[r - 1]));
  return degs;
}

} // namespace detail_sym

// Height-compatible ordering whose inversion polynomials have total degree
// equal to the root height (no leading-chain cancellation). Generic
// height-compatible orderings miss this for some roots, so the tie-break is
// found by a deterministic bounded local search: start from the 2-adic
// valuation arrangement of the row indices and greedily swap within height
// classes. The search insists the highest root reaches full degree and runs
// until every root does or the budget ends. Results are cached per
// (type, rank).
inline Ordering cfl_table_order(const SplitPresentation& pres, int budget = 400) {
  static std::map<std::pair<char, int>, std::vector<int>> cache;
  static std::mutex mu;
  const RootSystem& rs = *pres.rs;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({static_cast<char>(rs.type()), rs.rank()});
    if (it != cache.end()) return make_ordering(rs, "cfl", it->second);
  }
  const int n = rs.num_positive();
  int maxh = 0;
  for (int r = 1; r <= n; ++r) maxh = std::max(maxh, rs.height(r));

  std::vector<std::pair<int, int>> bounds;
  std::vector<int> roots;
  auto val2 = [](int x) {
    int v = 0;
    while (x % 2 == 0) { x /= 2; ++v; }
    return v;
  };
  for (int h = 1; h <= maxh; ++h) {
    int start = static_cast<int>(roots.size());
    for (int r = 1; r <= n; ++r)
      if (rs.height(r) == h) roots.push_back(r);
    std::stable_sort(roots.begin() + start, roots.end(),
                     [&](int a, int b) { return val2(rs.root(a).i) < val2(rs.root(b).i); });
    bounds.push_back({start, static_cast<int>(roots.size())});
  }

  auto score = [&](const std::vector<int>& cand, bool& top_ok) {
    Ordering ord = make_ordering(rs, "srch", cand);
    std::vector<int> degs = detail_sym::probe_inv_degrees(pres, ord, 0x9E3779B9u);
    int bad = 0;
    top_ok = true;
    for (int p = 0; p < n; ++p) {
      int h = rs.height(ord.root_at(p));
      if (degs[p] != h) {
        ++bad;
        if (h == maxh) top_ok = false;
      }
    }
    return bad;
  };

  bool top_ok;
  int best = score(roots, top_ok);
  std::vector<int> best_roots = roots;
  std::mt19937_64 rng(0x5EED0000u + static_cast<unsigned>(rs.type()) * 131 + rs.rank());
  for (int step = 0; step < budget && best > 0; ++step) {
    std::vector<int> cand = best_roots;
    auto [s, e] = bounds[rng() % bounds.size()];
    if (e - s < 2) continue;
    int a = s + static_cast<int>(rng() % (e - s));
    int b = s + static_cast<int>(rng() % (e - s));
    std::swap(cand[a], cand[b]);
    bool t2;
    int bad = score(cand, t2);
    // ties are accepted so the walk can drift off plateaus
    if (bad < best || (bad == best && (t2 || !top_ok))) {
      best = bad;
      best_roots = std::move(cand);
      top_ok = t2;
    }
  }
  if (!top_ok)
    throw std::logic_error("cfl_table_order: no ordering with a full-degree highest root found");
  {
    std::lock_guard<std::mutex> lock(mu);
    cache[{static_cast<char>(rs.type()), rs.rank()}] = best_roots;
  }
  return make_ordering(rs, "cfl", std::move(best_roots));
}

inline Ordering table_ordering(const SplitPresentation& pres, TableStrategy s) {
  switch (s) {
    case TableStrategy::CFL: return cfl_table_order(pres);
    case TableStrategy::CFO: return fixed_additive_order(*pres.rs);
    case TableStrategy::SD: return representation_order(*pres.rs);
  }
  throw std::logic_error("table_ordering: bad strategy");
}

inline SymbolicTables build_symbolic_tables(PresentationPtr pres, TableStrategy strategy,
                                            std::size_t node_cap = kDefaultNodeCap) {
  const RootSystem& rs = *pres->rs;
  const int n = rs.num_positive();
  SymbolicTables t;
  t.pres = pres;
  t.strategy = strategy;
  t.ord = table_ordering(*pres, strategy);
  t.builder = std::make_shared<slp::Builder>(n + 1, node_cap);
  slp::SlpRing sring(*t.builder);
  t.mult.assign(static_cast<std::size_t>(n) * n, t.builder->zero());
  t.inv.assign(n, t.builder->zero());

  auto collect_with = [&](Word<slp::SlpRing>& w) {
    return strategy == TableStrategy::CFO
               ? collect_from_outside(*pres, sring, w, t.ord, kDefaultStepBudget, false)
               : collect_from_left(*pres, sring, w, t.ord);
  };

  if (strategy == TableStrategy::SD) {
    // programs straight from the closed-form recursions (classical types)
    Tuple<slp::SlpRing> u = zero_tuple<slp::SlpRing>(sring, rs);
    for (int r = 1; r <= n; ++r) {
      // multiply tables: peel x_r(b) back off (prod_{s>r} x_s(a_s)) x_r(b)
      for (int s = 1; s <= n; ++s) u[s] = s > r ? t.builder->input(s - 1) : t.builder->zero();
      Tuple<slp::SlpRing> g = zero_tuple<slp::SlpRing>(sring, rs);
      g[r] = t.builder->input(n);
      Tuple<slp::SlpRing> p = direct_multiply(sring, rs, u, g);
      peel_apply_left(sring, rs, r, sring.neg(t.builder->input(n)), p);
      for (int s = r + 1; s <= n; ++s) t.mult[(r - 1) * n + (s - 1)] = p[s];
    }
    for (int s = 1; s <= n; ++s) u[s] = t.builder->input(s - 1);
    Tuple<slp::SlpRing> d = direct_invert(sring, rs, u);
    for (int r = 1; r <= n; ++r) t.inv[r - 1] = d[r];
    return t;
  }

  for (int r = 1; r <= n; ++r) {
    Word<slp::SlpRing> w(sring);
    for (int s = r + 1; s <= n; ++s) w.push_back(t.ord.root_at(s - 1), t.builder->input(s - 1), +1);
    w.push_back(t.ord.root_at(r - 1), t.builder->input(n), +1);
    CollectedElement<slp::SlpRing> e = collect_with(w);
    // collection never creates terms at or below position r here
    for (int k = 1; k < r; ++k)
      if (!sring.is_zero(e.c[k - 1]))
        throw std::logic_error("symbolic tables: term created below the collected letter");
    if (e.c[r - 1] != t.builder->input(n))
      throw std::logic_error("symbolic tables: collected letter coefficient is not b");
    for (int s = r + 1; s <= n; ++s) t.mult[(r - 1) * n + (s - 1)] = e.c[s - 1];
  }
  {
    // inversion: collect x_N(a_N)^{-1} ... x_1(a_1)^{-1}
    Word<slp::SlpRing> w(sring);
    for (int k = n; k >= 1; --k) w.push_back(t.ord.root_at(k - 1), t.builder->input(k - 1), -1);
    CollectedElement<slp::SlpRing> e = collect_with(w);
    for (int r = 1; r <= n; ++r) t.inv[r - 1] = e.c[r - 1];
  }
  return t;
}

inline void require_table_ring(const SymbolicTables& t, std::uint64_t characteristic) {
  // formula-built tables inherit the odd-characteristic restriction of type B
  if (t.strategy == TableStrategy::SD)
    require_odd_char_for_B(*t.pres->rs, characteristic);
}

// z = x * y by substituting into the c_rs programs, N(N-1)/2 evaluations.
// A reusable evaluator may be supplied to amortize buffer allocation.
template <Ring R>
CollectedElement<R> symbolic_multiply(const SymbolicTables& t, const R& ring,
                                      const CollectedElement<R>& x, const CollectedElement<R>& y,
                                      slp::Evaluator<R>* reuse = nullptr) {
  require_table_ring(t, ring.characteristic());
  if (x.ord_id != t.ord.id || y.ord_id != t.ord.id)
    throw std::invalid_argument("symbolic_multiply: element/table ordering mismatch");
  const int n = t.n();
  slp::Evaluator<R> local(*t.builder);
  slp::Evaluator<R>& ev = reuse ? *reuse : local;

  std::vector<typename R::Elem> cur(x.c);
  std::vector<typename R::Elem> inputs(n + 1, ring.zero());
  for (int k = 1; k <= n; ++k) {
    const typename R::Elem& bk = y.c[k - 1];
    if (ring.is_zero(bk)) continue;
    for (int s = 0; s < n; ++s) inputs[s] = cur[s];
    inputs[n] = bk;
    ev.begin(ring, inputs);
    for (int s = k + 1; s <= n; ++s) cur[s - 1] = ev.get(ring, t.mult_entry(k, s));
    cur[k - 1] = ring.add(cur[k - 1], bk);
  }
  CollectedElement<R> out;
  out.ord_id = t.ord.id;
  out.c = std::move(cur);
  return out;
}

// u^{-1} via the inversion programs, one evaluation pass.
template <Ring R>
CollectedElement<R> symbolic_invert(const SymbolicTables& t, const R& ring,
                                    const CollectedElement<R>& x,
                                    slp::Evaluator<R>* reuse = nullptr) {
  require_table_ring(t, ring.characteristic());
  if (x.ord_id != t.ord.id)
    throw std::invalid_argument("symbolic_invert: element/table ordering mismatch");
  const int n = t.n();
  slp::Evaluator<R> local(*t.builder);
  slp::Evaluator<R>& ev = reuse ? *reuse : local;
  std::vector<typename R::Elem> inputs(n + 1, ring.zero());
  for (int s = 0; s < n; ++s) inputs[s] = x.c[s];
  ev.begin(ring, inputs);
  CollectedElement<R> out;
  out.ord_id = t.ord.id;
  out.c.assign(n, ring.zero());
  for (int r = 1; r <= n; ++r) out.c[r - 1] = ev.get(ring, t.inv[r - 1]);
  return out;
}

// -- degree statistics --------------------------------------------------------

struct DegreeStats {
  // inversion family g_r: the polynomial set of Table-5 statistics
  int inv_max = -1;
  mpq_class inv_avg = 0; // over nonzero entries
  int inv_nonzero = 0;
  // multiply family c_rs
  int mult_max = -1;
  mpq_class mult_avg = 0;
  int mult_nonzero = 0;
  std::size_t nodes = 0;
  bool exact = true; // exact expansion vs randomized degree probe
};

// Exact expansion when the reachable program is small enough, otherwise a
// randomized univariate degree probe (degrees are exact with probability
// 1 - O(deg/p) per entry).
inline DegreeStats hall_degree_stats(const SymbolicTables& t,
                                     std::size_t exact_node_limit = 200000) {
  const int n = t.n();
  DegreeStats st;
  st.nodes = t.node_count();

  std::vector<std::int32_t> outputs;
  for (int r = 1; r <= n; ++r)
    for (int s = r + 1; s <= n; ++s) outputs.push_back(t.mult_entry(r, s));
  for (int r = 1; r <= n; ++r) outputs.push_back(t.inv[r - 1]);

  std::vector<int> degs(outputs.size(), -1);
  if (t.builder->reachable_count(outputs) <= exact_node_limit) {
    PolyRing pr(n + 1);
    slp::Evaluator<PolyRing> ev(*t.builder);
    std::vector<SparsePoly> inputs;
    for (int v = 0; v <= n; ++v) inputs.push_back(pr.variable(v));
    ev.begin(pr, inputs);
    for (std::size_t k = 0; k < outputs.size(); ++k) degs[k] = ev.get(pr, outputs[k]).total_degree();
  } else {
    st.exact = false;
    UniPolyFp up(1000003);
    std::mt19937_64 rng(0xC0FFEE);
    for (int probe = 0; probe < 2; ++probe) {
      slp::Evaluator<UniPolyFp> ev(*t.builder);
      std::vector<UniPolyFp::Elem> inputs;
      for (int v = 0; v <= n; ++v) inputs.push_back(up.variable(1 + rng() % 1000002));
      ev.begin(up, inputs);
      for (std::size_t k = 0; k < outputs.size(); ++k)
        degs[k] = std::max(degs[k], up.degree(ev.get(up, outputs[k])));
    }
  }

  const std::size_t mult_count = static_cast<std::size_t>(n) * (n - 1) / 2;
  long mult_sum = 0, inv_sum = 0;
  for (std::size_t k = 0; k < mult_count; ++k)
    if (degs[k] >= 0) {
      ++st.mult_nonzero;
      mult_sum += degs[k];
      st.mult_max = std::max(st.mult_max, degs[k]);
    }
  for (std::size_t k = mult_count; k < degs.size(); ++k)
    if (degs[k] >= 0) {
      ++st.inv_nonzero;
      inv_sum += degs[k];
      st.inv_max = std::max(st.inv_max, degs[k]);
    }
  if (st.mult_nonzero) st.mult_avg = mpq_class(mult_sum, st.mult_nonzero);
  if (st.inv_nonzero) st.inv_avg = mpq_class(inv_sum, st.inv_nonzero);
  st.mult_avg.canonicalize();
  st.inv_avg.canonicalize();
  return st;
}

// Per-entry metadata rows: family, r, s (0 for the inversion family), node
// count of the entry's program, total degree.
inline std::string dump_table_metadata_csv(const SymbolicTables& t) {
  const int n = t.n();
  PolyRing pr(n + 1);
  slp::Evaluator<PolyRing> ev(*t.builder);
  std::vector<SparsePoly> inputs;
  for (int v = 0; v <= n; ++v) inputs.push_back(pr.variable(v));
  ev.begin(pr, inputs);
  std::string out = "type,rank,strategy,family,r,s,nodes,degree\n";
  const RootSystem& rs = *t.pres->rs;
  auto row = [&](const char* family, int r, int s, std::int32_t prog) {
    std::int32_t one[1] = {prog};
    out += static_cast<char>(rs.type());
    out += "," + std::to_string(rs.rank()) + "," + strategy_name(t.strategy) + "," + family + "," +
           std::to_string(r) + "," + std::to_string(s) + "," +
           std::to_string(t.builder->reachable_count(one)) + "," +
           std::to_string(ev.get(pr, prog).total_degree()) + "\n";
  };
  for (int r = 1; r <= n; ++r)
    for (int s = r + 1; s <= n; ++s) row("mult", r, s, t.mult_entry(r, s));
  for (int r = 1; r <= n; ++r) row("inv", r, 0, t.inv[r - 1]);
  return out;
}

} // namespace unipot

#endif
