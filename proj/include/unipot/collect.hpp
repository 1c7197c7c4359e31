#ifndef UNIPOT_COLLECT_HPP
#define UNIPOT_COLLECT_HPP

// Collection strategies for split FC presentations: collection to the left,
// collection from the left, and collection from the outside, plus the element
// operations and separation primitives built on them.

#include <cassert>
#include <random>
#include <string>
#include <vector>

#include "unipot/classical.hpp"
#include "unipot/presentation.hpp"
#include "unipot/word.hpp"

namespace unipot {

// Normal form relative to a declared ordering: dense position-indexed tuple.
template <Ring R>
struct CollectedElement {
  std::string ord_id;
  std::vector<typename R::Elem> c; // [p] = coefficient at ordering position p

  int size() const { return static_cast<int>(c.size()); }
};

enum class CollectMethod { CTL, CFL, CFO };

namespace detail {

template <Ring R>
struct Cursor {
  std::int32_t node = -1;
  std::int64_t pos = 0; // 1-based; may point past the end (node = -1)
};

enum class StepCase { FixedInverse, FixedPrevInverse, Merged, MergedZero, Swapped, InPosition };

template <Ring R>
struct CollectCtx {
  const SplitPresentation& pres;
  const R& ring;
  const Ordering& ord;
  Word<R>& w;
  std::uint64_t budget = kDefaultStepBudget;
  std::uint64_t steps = 0;

  int opos(int root) const {
    int p = ord.position_of(root);
    if (p < 0) throw std::invalid_argument("collect: word contains a root outside the ordering");
    return p;
  }
  void bump() {
    if (++steps > budget)
      throw GuardError("collect: rewrite-step budget exceeded (presentation/table corruption?)");
  }
};

// Insert the commutator tail for moving x_r(a) past x_s(b) after node `after`,
// entries ascending by target position; returns the number of inserted
// (nonzero) terms.
template <Ring R>
int insert_tail(CollectCtx<R>& ctx, const CommutatorTable& table, int r_root, int s_root,
                const typename R::Elem& a, const typename R::Elem& b, std::int32_t after) {
  std::span<const TailEntry> tail = table.tail(r_root, s_root);
  if (tail.empty()) return 0;
  // ascending target position in the active ordering
  std::vector<const TailEntry*> order;
  order.reserve(tail.size());
  for (const TailEntry& e : tail) order.push_back(&e);
  std::sort(order.begin(), order.end(), [&](const TailEntry* x, const TailEntry* y) {
    return ctx.opos(x->t) < ctx.opos(y->t);
  });
  int inserted = 0;
  std::int32_t at = after;
  for (const TailEntry* e : order) {
    typename R::Elem t = ctx.ring.from_int(e->c);
    for (int k = 0; k < e->i; ++k) t = ctx.ring.mul(t, a);
    for (int k = 0; k < e->j; ++k) t = ctx.ring.mul(t, b);
    if (ctx.ring.is_zero(t)) continue; // eliminated as soon as it occurs
    at = ctx.w.insert_after(at, e->t, t, +1);
    ++inserted;
  }
  return inserted;
}

// The basic collection step at cursor j (examines eps_j, then the pair
// (j-1, j)); uses the reduced relation tails. Returns (j1, j2, case):
// j1 = where the examined term now lives, j2 = next position to examine
// under the from-the-left schedule.
template <Ring R>
void collect_subword_step(CollectCtx<R>& ctx, Cursor<R> j, Cursor<R>& j1, Cursor<R>& j2,
                          StepCase& what) {
  ctx.bump();
  Word<R>& w = ctx.w;
  auto& n = w.node(j.node);
  if (n.eps == -1) { // x_r(a)^{-1} = x_r(-a)
    n.a = ctx.ring.neg(n.a);
    n.eps = 1;
    j1 = j2 = j;
    what = StepCase::FixedInverse;
    return;
  }
  std::int32_t prev = n.prev;
  if (prev < 0) {
    j1 = j;
    j2 = {n.next, j.pos + 1};
    what = StepCase::InPosition;
    return;
  }
  auto& pn = w.node(prev);
  if (pn.eps == -1) { // normalize the left neighbour first (CTL schedules only)
    pn.a = ctx.ring.neg(pn.a);
    pn.eps = 1;
    j1 = j2 = {prev, j.pos - 1};
    what = StepCase::FixedPrevInverse;
    return;
  }
  if (pn.root == n.root) { // merge x_r(b) x_r(a) = x_r(b+a)
    typename R::Elem s = ctx.ring.add(pn.a, n.a);
    std::int32_t succ = n.next;
    w.erase(j.node);
    if (ctx.ring.is_zero(s)) {
      w.erase(prev);
      j1 = j2 = {succ, j.pos - 1};
      what = StepCase::MergedZero;
    } else {
      pn.a = s;
      j1 = j2 = {prev, j.pos - 1};
      what = StepCase::Merged;
    }
    return;
  }
  const int pos_prev = ctx.opos(pn.root), pos_n = ctx.opos(n.root);
  if (pos_prev > pos_n) {
    // x_s(b) x_r(a) = x_r(a) x_s(b) * tail
    const int r_root = n.root, s_root = pn.root;
    typename R::Elem a = n.a, b = pn.a;
    // swap contents; the moved term now lives in the prev handle
    std::swap(pn.root, n.root);
    std::swap(pn.a, n.a);
    int inserted = insert_tail(ctx, ctx.pres.redrs, r_root, s_root, a, b, /*after=*/j.node);
    j1 = {prev, j.pos - 1};
    what = StepCase::Swapped;
    // revisit while the moved term may still merge or swap; otherwise skip
    // past the tail when the tail provably needs no attention yet
    std::int32_t before = w.node(prev).prev;
    bool revisit = before >= 0 && (w.node(before).eps == -1 ||
                                   ctx.opos(w.node(before).root) >= ctx.opos(r_root));
    if (revisit) {
      j2 = j1;
    } else {
      bool safe_skip = true;
      for (const TailEntry& e : ctx.pres.redrs.tail(r_root, s_root))
        if (ctx.ord.contains(e.t) && ctx.opos(e.t) <= ctx.opos(s_root)) { safe_skip = false; break; }
      if (safe_skip) {
        std::int32_t h = j.node; // x_s
        for (int k = 0; k < inserted; ++k) h = w.node(h).next;
        j2 = {w.node(h).next, j.pos + 1 + inserted};
      } else {
        j2 = {j.node, j.pos}; // step through the tail one position at a time
      }
    }
    return;
  }
  j1 = j;
  j2 = {n.next, j.pos + 1};
  what = StepCase::InPosition;
}

template <Ring R>
CollectedElement<R> read_normal_form(CollectCtx<R>& ctx) {
  CollectedElement<R> out;
  out.ord_id = ctx.ord.id;
  out.c.assign(ctx.ord.size(), ctx.ring.zero());
  int last = -1;
  for (std::int32_t h = ctx.w.head(); h >= 0; h = ctx.w.node(h).next) {
    const auto& n = ctx.w.node(h);
    int p = ctx.opos(n.root);
    if (n.eps != 1 || p <= last)
      throw std::logic_error("collect: word is not in normal form after collection");
    last = p;
    out.c[p] = n.a;
  }
  return out;
}

} // namespace detail

// Exposed single rewriting step (Algorithm 1 specialization); `pos` is the
// 1-based position of the term to examine. Returns the positions (j1, j2).
template <Ring R>
std::pair<std::int64_t, std::int64_t> collect_subword(const SplitPresentation& pres, const R& ring,
                                                      const Ordering& ord, Word<R>& w,
                                                      std::int64_t pos) {
  if (pos < 1 || pos > w.length()) throw std::invalid_argument("collect_subword: position out of range");
  detail::CollectCtx<R> ctx{pres, ring, ord, w};
  std::int32_t h = w.head();
  for (std::int64_t k = 1; k < pos; ++k) h = w.node(h).next;
  detail::Cursor<R> j{h, pos}, j1, j2;
  detail::StepCase what;
  detail::collect_subword_step(ctx, j, j1, j2, what);
  return {j1.pos, j2.pos};
}

// Collection to the left: letters in ordering position order, rightmost
// occurrence first, bubbled left to its final place.
template <Ring R>
CollectedElement<R> collect_to_left(const SplitPresentation& pres, const R& ring, Word<R>& w,
                                    const Ordering& ord,
                                    std::uint64_t budget = kDefaultStepBudget) {
  detail::CollectCtx<R> ctx{pres, ring, ord, w, budget};
  for (int letter = 0; letter < ord.size(); ++letter) {
    bool rescan = true;
    while (rescan) {
      rescan = false;
      // rightmost occurrence of this letter
      std::int32_t cur = -1;
      std::int64_t pos = w.length();
      for (std::int32_t h = w.tail(); h >= 0; h = w.node(h).prev, --pos)
        if (ctx.opos(w.node(h).root) == letter) { cur = h; break; }
      if (cur < 0) break;
      // bubble it left; merges absorb every other occurrence en route
      for (;;) {
        detail::Cursor<R> j{cur, pos}, j1, j2;
        detail::StepCase what;
        detail::collect_subword_step(ctx, j, j1, j2, what);
        if (what == detail::StepCase::InPosition) break;
        if (what == detail::StepCase::MergedZero) { rescan = true; break; }
        if (what == detail::StepCase::Merged || what == detail::StepCase::Swapped) {
          cur = j1.node;
          pos = j1.pos;
        }
        // FixedInverse / FixedPrevInverse: re-examine the same spot
      }
    }
  }
  return detail::read_normal_form(ctx);
}

// Collection from the left: sweep j := j2.
template <Ring R>
CollectedElement<R> collect_from_left(const SplitPresentation& pres, const R& ring, Word<R>& w,
                                      const Ordering& ord,
                                      std::uint64_t budget = kDefaultStepBudget) {
  detail::CollectCtx<R> ctx{pres, ring, ord, w, budget};
  detail::Cursor<R> j{w.head(), 1};
  while (j.node >= 0 && j.pos <= w.length()) {
    detail::Cursor<R> j1, j2;
    detail::StepCase what;
    detail::collect_subword_step(ctx, j, j1, j2, what);
    j = j2;
  }
  return detail::read_normal_form(ctx);
}

// Collection from the outside: left and right cursors meet in the middle,
// applying the additive-ordering relation (tails inserted between the pair).
template <Ring R>
CollectedElement<R> collect_from_outside(const SplitPresentation& pres, const R& ring, Word<R>& w,
                                         const Ordering& ord,
                                         std::uint64_t budget = kDefaultStepBudget,
                                         bool check_ordering = true) {
  if (check_ordering && !check_additive(*pres.rs, ord))
    throw std::invalid_argument("collect_from_outside: ordering is not additive");
  detail::CollectCtx<R> ctx{pres, ring, ord, w, budget};

  // One pass of the two-cursor loop. The left cursor runs one position past
  // the meeting point so the junction pair is examined even when the cursors
  // cross (the pseudocode's strict i < j misses it on short words); the right
  // half-step stays guarded by i < j. A cheap scan afterwards re-runs the
  // pass if a junction case slipped through (no ring operations involved).
  auto two_cursor_pass = [&] {
  detail::Cursor<R> i{w.head(), 1}, j{w.tail(), w.length()};
  while (i.node >= 0 && i.pos <= j.pos + 1) {
    // left half-step at i
    {
      ctx.bump();
      auto& n = w.node(i.node);
      std::int64_t L = 0;
      if (n.eps == -1) {
        n.a = ring.neg(n.a);
        n.eps = 1;
      } else if (n.prev >= 0 && w.node(n.prev).eps == -1) {
        auto& pn = w.node(n.prev);
        pn.a = ring.neg(pn.a);
        pn.eps = 1;
        i = {n.prev, i.pos - 1};
      } else if (n.prev >= 0 && w.node(n.prev).root == n.root) {
        std::int32_t prev = n.prev, succ = n.next;
        typename R::Elem s = ring.add(w.node(prev).a, n.a);
        w.erase(i.node);
        if (ring.is_zero(s)) {
          w.erase(prev);
          i = {succ, i.pos - 1};
          L = -2;
        } else {
          w.node(prev).a = s;
          i = {prev, i.pos - 1};
          L = -1;
        }
      } else if (n.prev >= 0 && ctx.opos(w.node(n.prev).root) > ctx.opos(n.root)) {
        // x_s(b) x_r(a) = x_r(a) * tail * x_s(b)
        std::int32_t prev = n.prev;
        auto& pn = w.node(prev);
        const int r_root = n.root, s_root = pn.root;
        typename R::Elem a = n.a, b = pn.a;
        std::swap(pn.root, n.root);
        std::swap(pn.a, n.a);
        // tail goes between: after the moved x_r (prev handle)
        L = detail::insert_tail(ctx, pres.addrs, r_root, s_root, a, b, prev);
        i = {prev, i.pos - 1};
      } else {
        i = {n.next, i.pos + 1};
      }
      j.pos += L;
    }
    if (!(i.node >= 0 && j.node >= 0 && i.pos < j.pos)) continue;
    // right half-step at j
    {
      ctx.bump();
      auto& n = w.node(j.node);
      if (n.eps == -1) {
        n.a = ring.neg(n.a);
        n.eps = 1;
      } else if (n.next >= 0 && w.node(n.next).eps == -1) {
        auto& nn = w.node(n.next);
        nn.a = ring.neg(nn.a);
        nn.eps = 1;
      } else if (n.next >= 0 && w.node(n.next).root == n.root) {
        std::int32_t succ = n.next;
        typename R::Elem s = ring.add(n.a, w.node(succ).a);
        w.erase(succ);
        if (ring.is_zero(s)) {
          std::int32_t prev = n.prev;
          w.erase(j.node);
          j = {prev, j.pos - 1};
        } else {
          n.a = s;
        }
      } else if (n.next >= 0 && ctx.opos(n.root) > ctx.opos(w.node(n.next).root)) {
        // pair (x_s(b) at j, x_r(a) at j+1)
        std::int32_t succ = n.next;
        auto& nn = w.node(succ);
        const int s_root = n.root, r_root = nn.root;
        typename R::Elem b = n.a, a = nn.a;
        std::swap(n.root, nn.root);
        std::swap(n.a, nn.a);
        int L = detail::insert_tail(ctx, pres.addrs, r_root, s_root, a, b, j.node);
        j = {succ, j.pos + 1 + L};
      } else {
        j = {n.prev, j.pos - 1};
      }
    }
  }
  };

  auto is_collected = [&] {
    int last = -1;
    for (std::int32_t h = w.head(); h >= 0; h = w.node(h).next) {
      const auto& n = w.node(h);
      int p = ctx.opos(n.root);
      if (n.eps != 1 || p <= last) return false;
      last = p;
    }
    return true;
  };

  do {
    two_cursor_pass();
  } while (!is_collected());
  return detail::read_normal_form(ctx);
}

template <Ring R>
CollectedElement<R> collect(const SplitPresentation& pres, const R& ring, Word<R>& w,
                            const Ordering& ord, CollectMethod m,
                            std::uint64_t budget = kDefaultStepBudget) {
  switch (m) {
    case CollectMethod::CTL: return collect_to_left(pres, ring, w, ord, budget);
    case CollectMethod::CFL: return collect_from_left(pres, ring, w, ord, budget);
    case CollectMethod::CFO: return collect_from_outside(pres, ring, w, ord, budget);
  }
  throw std::logic_error("collect: bad method");
}

// -- element operations -------------------------------------------------------

template <Ring R>
Word<R> word_from_element(const R& ring, const Ordering& ord, const CollectedElement<R>& x) {
  Word<R> w(ring);
  for (int p = 0; p < ord.size(); ++p)
    if (!ring.is_zero(x.c[p])) w.push_back(ord.root_at(p), x.c[p], +1);
  return w;
}

template <Ring R>
void require_same_ordering(const CollectedElement<R>& x, const CollectedElement<R>& y) {
  if (x.ord_id != y.ord_id)
    throw std::invalid_argument("elements are relative to different orderings");
}

template <Ring R>
CollectedElement<R> u_multiply(const SplitPresentation& pres, const R& ring, const Ordering& ord,
                               const CollectedElement<R>& x, const CollectedElement<R>& y,
                               CollectMethod m, std::uint64_t budget = kDefaultStepBudget) {
  require_same_ordering(x, y);
  if (x.ord_id != ord.id) throw std::invalid_argument("u_multiply: ordering mismatch");
  Word<R> w(ring);
  for (int p = 0; p < ord.size(); ++p)
    if (!ring.is_zero(x.c[p])) w.push_back(ord.root_at(p), x.c[p], +1);
  for (int p = 0; p < ord.size(); ++p)
    if (!ring.is_zero(y.c[p])) w.push_back(ord.root_at(p), y.c[p], +1);
  return collect(pres, ring, w, ord, m, budget);
}

// builds the reversed word of x_r(a_r)^{-1} terms and collects
template <Ring R>
CollectedElement<R> u_invert(const SplitPresentation& pres, const R& ring, const Ordering& ord,
                             const CollectedElement<R>& x, CollectMethod m,
                             std::uint64_t budget = kDefaultStepBudget) {
  if (x.ord_id != ord.id) throw std::invalid_argument("u_invert: ordering mismatch");
  Word<R> w(ring);
  for (int p = ord.size() - 1; p >= 0; --p)
    if (!ring.is_zero(x.c[p])) w.push_back(ord.root_at(p), x.c[p], -1);
  return collect(pres, ring, w, ord, m, budget);
}

// componentwise; at most N equality tests, early exit on the first mismatch
template <Ring R>
bool u_equal(const R& ring, const CollectedElement<R>& x, const CollectedElement<R>& y) {
  require_same_ordering(x, y);
  for (std::size_t p = 0; p < x.c.size(); ++p)
    if (!ring.eq(x.c[p], y.c[p])) return false;
  return true;
}

// Re-express in another ordering by re-collecting (from the left, which
// terminates for arbitrary target orderings).
template <Ring R>
CollectedElement<R> reorder(const SplitPresentation& pres, const R& ring, const Ordering& from,
                            const CollectedElement<R>& x, const Ordering& to,
                            std::uint64_t budget = kDefaultStepBudget) {
  if (x.ord_id != from.id) throw std::invalid_argument("reorder: ordering mismatch");
  if (from.id == to.id) return x;
  Word<R> w = word_from_element(ring, from, x);
  return collect_from_left(pres, ring, w, to, budget);
}

// -- separation ----------------------------------------------------------------

// u' = x_alpha(a_alpha) * v with v supported away from alpha. u' must be given
// in an additive ordering of its support containing alpha.
template <Ring R>
struct Separated {
  typename R::Elem coeff;
  Ordering sub_order;
  CollectedElement<R> rest;
};

template <Ring R>
Separated<R> single_term_separate(const SplitPresentation& pres, const R& ring,
                                  const Ordering& ord_w, const CollectedElement<R>& u,
                                  int alpha, std::uint64_t budget = kDefaultStepBudget) {
  if (u.ord_id != ord_w.id) throw std::invalid_argument("single_term_separate: ordering mismatch");
  if (!ord_w.contains(alpha))
    throw std::invalid_argument("single_term_separate: root is not in the support ordering");

  std::vector<int> sub_roots;
  for (int p = 0; p < ord_w.size(); ++p)
    if (ord_w.root_at(p) != alpha) sub_roots.push_back(ord_w.root_at(p));
  Ordering sub = make_ordering(*pres.rs, ord_w.id + "\\" + std::to_string(alpha), sub_roots);

  Word<R> w = word_from_element(ring, ord_w, u);
  // locate the alpha node
  std::int32_t an = -1;
  for (std::int32_t h = w.head(); h >= 0; h = w.node(h).next)
    if (w.node(h).root == alpha) { an = h; break; }

  typename R::Elem coeff = ring.zero();
  if (an >= 0) {
    // bubble x_alpha to the front with reduced-relation swaps; only roots
    // higher than alpha are created, so no new alpha terms appear
    detail::CollectCtx<R> bctx{pres, ring, ord_w, w, budget};
    while (w.node(an).prev >= 0) {
      bctx.bump();
      std::int32_t prev = w.node(an).prev;
      auto& pn = w.node(prev);
      auto& n = w.node(an);
      const int r_root = n.root, s_root = pn.root;
      typename R::Elem a = n.a, b = pn.a;
      std::swap(pn.root, n.root);
      std::swap(pn.a, n.a);
      detail::insert_tail(bctx, pres.redrs, r_root, s_root, a, b, an);
      an = prev;
    }
    coeff = w.node(an).a;
    w.erase(an);
  }
  CollectedElement<R> rest = collect_from_outside(pres, ring, w, sub, budget, false);
  return {coeff, std::move(sub), std::move(rest)};
}

// u (over the fixed additive ordering) = v'' * v', supports split across
// Phi+ \ Phi_w and Phi_w.
template <Ring R>
struct WeylSeparated {
  Ordering comp_order; // leading block of the separation ordering
  CollectedElement<R> complement;
  Ordering inv_order; // papi ordering of Phi_w
  CollectedElement<R> inversion;
};

template <Ring R>
WeylSeparated<R> weyl_separate(const SplitPresentation& pres, const R& ring, const Ordering& fixed,
                               const CollectedElement<R>& u, const WeylElt& wv,
                               std::uint64_t budget = kDefaultStepBudget) {
  const RootSystem& rs = *pres.rs;
  Ordering sep = separation_ordering(rs, wv);
  CollectedElement<R> moved = reorder(pres, ring, fixed, u, sep, budget);
  const int m = weyl_length(rs, wv);
  const int nc = sep.size() - m;

  std::vector<int> comp_roots(sep.roots.begin(), sep.roots.begin() + nc);
  std::vector<int> inv_roots(sep.roots.begin() + nc, sep.roots.end());
  WeylSeparated<R> out{make_ordering(rs, sep.id + ":comp", comp_roots), {},
                       make_ordering(rs, sep.id + ":inv", inv_roots), {}};
  out.complement.ord_id = out.comp_order.id;
  out.complement.c.assign(nc, ring.zero());
  for (int p = 0; p < nc; ++p) out.complement.c[p] = moved.c[p];
  out.inversion.ord_id = out.inv_order.id;
  out.inversion.c.assign(m, ring.zero());
  for (int p = 0; p < m; ++p) out.inversion.c[p] = moved.c[nc + p];
  return out;
}

// -- presentation validation ----------------------------------------------------

struct ValidationReport {
  int trials = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

template <Ring R, typename RandomElem>
ValidationReport validate_presentation(const SplitPresentation& pres, const R& ring, int trials,
                                       RandomElem&& random_elem, std::uint64_t seed = 1) {
  const RootSystem& rs = *pres.rs;
  ValidationReport rep;
  rep.trials = trials;
  Ordering ord = height_order(rs); // left-additive in every type
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(1, rs.num_positive());

  auto random_element = [&] {
    CollectedElement<R> x;
    x.ord_id = ord.id;
    x.c.assign(ord.size(), ring.zero());
    for (int p = 0; p < ord.size(); ++p) x.c[p] = random_elem(rng);
    return x;
  };

  for (int t = 0; t < trials; ++t) {
    auto u = random_element(), v = random_element(), w = random_element();
    try {
      auto uv_w = u_multiply(pres, ring, ord, u_multiply(pres, ring, ord, u, v, CollectMethod::CFL),
                             w, CollectMethod::CFL);
      auto u_vw = u_multiply(pres, ring, ord, u,
                             u_multiply(pres, ring, ord, v, w, CollectMethod::CFL),
                             CollectMethod::CFL);
      if (!u_equal(ring, uv_w, u_vw)) rep.failures.push_back("associativity failure (CFL)");
      auto ui = u_invert(pres, ring, ord, u, CollectMethod::CFL);
      auto prod = u_multiply(pres, ring, ord, u, ui, CollectMethod::CFL);
      bool ident = true;
      for (auto& cc : prod.c)
        if (!ring.is_zero(cc)) ident = false;
      if (!ident) rep.failures.push_back("u * u^-1 != 1 (CFL)");
      auto via_ctl = u_multiply(pres, ring, ord, u, v, CollectMethod::CTL);
      auto via_cfl = u_multiply(pres, ring, ord, u, v, CollectMethod::CFL);
      if (!u_equal(ring, via_ctl, via_cfl)) rep.failures.push_back("CTL/CFL disagree");
    } catch (const std::exception& e) {
      rep.failures.push_back(std::string("exception: ") + e.what());
    }
    if (rep.failures.size() > 8) break;
  }
  return rep;
}

} // namespace unipot

#endif
