#ifndef UNIPOT_BRUHAT_HPP
#define UNIPOT_BRUHAT_HPP

// Bruhat normal form g = u t wdot u' and its word problem. Torus elements are
// coordinate tuples of verified units; u' is a collected word supported on
// Phi_w in the papi ordering of w's reduced word. Full reductive-group
// arithmetic is out of scope; the separation primitives live in collect.

#include "unipot/collect.hpp"

namespace unipot {

template <Ring R>
struct TorusElement {
  std::vector<typename R::Elem> t; // length = reductive rank (= rank here)
};

template <Ring R>
TorusElement<R> make_torus(const R& ring, std::vector<typename R::Elem> entries) {
  for (const auto& e : entries) {
    if constexpr (requires(const R r, typename R::Elem x) { r.is_unit(x); }) {
      if (!ring.is_unit(e)) throw std::invalid_argument("torus entry is not a unit");
    }
    // verified inverse
    (void)ring.inv(e);
  }
  return {std::move(entries)};
}

template <Ring R>
struct BruhatForm {
  CollectedElement<R> u;   // over the fixed additive ordering of Phi+
  TorusElement<R> t;
  WeylElt w;
  std::vector<int> word;   // stored reduced word for w
  Ordering u1_order;       // papi ordering of Phi_w
  CollectedElement<R> u1;  // supported on Phi_w
};

template <Ring R>
BruhatForm<R> bruhat_create(const SplitPresentation& pres, const R& ring,
                            CollectedElement<R> u, TorusElement<R> t, const WeylElt& w,
                            std::vector<int> word, CollectedElement<R> u1) {
  const RootSystem& rs = *pres.rs;
  if (static_cast<int>(t.t.size()) != rs.rank())
    throw std::invalid_argument("bruhat_create: torus tuple has wrong length");
  for (const auto& e : t.t)
    if (ring.is_zero(e)) throw std::invalid_argument("bruhat_create: torus entry is not a unit");
  WeylElt check = weyl_from_word(rs, word);
  if (!(check == w) || static_cast<int>(word.size()) != weyl_length(rs, w))
    throw std::invalid_argument("bruhat_create: stored word is not a reduced word for w");
  Ordering fixed = fixed_additive_order(rs);
  if (u.ord_id != fixed.id || u.size() != fixed.size())
    throw std::invalid_argument("bruhat_create: u must be over the fixed ordering");
  Ordering u1o = word.empty() ? make_ordering(rs, "papi:", {}) : papi_ordering(rs, word);
  if (u1.ord_id != u1o.id || u1.size() != u1o.size())
    throw std::invalid_argument("bruhat_create: u' must be over the papi ordering of w's word");
  // support condition: the papi ordering covers exactly Phi_w, so a tuple of
  // the right length cannot carry coefficients outside Phi_w; double-check
  // the roots against the inversion set anyway
  std::vector<int> inv = inversion_set(rs, w);
  std::vector<char> in_inv(rs.num_positive() + 1, 0);
  for (int r : inv) in_inv[r] = 1;
  for (int p = 0; p < u1o.size(); ++p)
    if (!in_inv[u1o.root_at(p)])
      throw std::invalid_argument("bruhat_create: u' support leaves Phi_w");
  return {std::move(u), std::move(t), w, std::move(word), std::move(u1o), std::move(u1)};
}

// Support-violation entry point for tests: a tuple over the full ordering
// with a nonzero coefficient outside Phi_w must be rejected.
template <Ring R>
BruhatForm<R> bruhat_create_checked(const SplitPresentation& pres, const R& ring,
                                    CollectedElement<R> u, TorusElement<R> t, const WeylElt& w,
                                    std::vector<int> word, const CollectedElement<R>& u1_full) {
  const RootSystem& rs = *pres.rs;
  Ordering fixed = fixed_additive_order(rs);
  if (u1_full.ord_id != fixed.id)
    throw std::invalid_argument("bruhat_create_checked: u' must be over the fixed ordering");
  std::vector<int> inv = inversion_set(rs, w);
  std::vector<char> in_inv(rs.num_positive() + 1, 0);
  for (int r : inv) in_inv[r] = 1;
  for (int p = 0; p < fixed.size(); ++p)
    if (!in_inv[fixed.root_at(p)] && !ring.is_zero(u1_full.c[p]))
      throw std::invalid_argument("bruhat_create: u' has a nonzero coefficient outside Phi_w");
  Ordering u1o = word.empty() ? make_ordering(rs, "papi:", {}) : papi_ordering(rs, word);
  CollectedElement<R> u1;
  u1.ord_id = u1o.id;
  u1.c.assign(u1o.size(), ring.zero());
  for (int p = 0; p < u1o.size(); ++p)
    u1.c[p] = u1_full.c[fixed.position_of(u1o.root_at(p))];
  return bruhat_create(pres, ring, std::move(u), std::move(t), w, std::move(word), std::move(u1));
}

// Componentwise comparison: at most N + n + length(w) ring equality tests
// plus the (ring-free) Weyl comparison.
template <Ring R>
bool bruhat_equal(const R& ring, const BruhatForm<R>& x, const BruhatForm<R>& y) {
  if (x.u.size() != y.u.size() || x.t.t.size() != y.t.t.size())
    throw std::invalid_argument("bruhat_equal: parameter mismatch");
  if (!(x.w == y.w)) return false;
  for (std::size_t k = 0; k < x.t.t.size(); ++k)
    if (!ring.eq(x.t.t[k], y.t.t[k])) return false;
  if (!u_equal(ring, x.u, y.u)) return false;
  return u_equal(ring, x.u1, y.u1);
}

} // namespace unipot

#endif
