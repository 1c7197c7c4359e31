#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "unipot/bruhat.hpp"

using namespace unipot;

namespace {

BruhatForm<Fp> random_form(const SplitPresentation& pres, const Fp& f, std::mt19937_64& rng) {
  const RootSystem& rs = *pres.rs;
  Ordering fixed = fixed_additive_order(rs);
  CollectedElement<Fp> u{fixed.id, {}};
  u.c.assign(fixed.size(), 0);
  for (auto& c : u.c) c = f.from_int(static_cast<int>(rng() % f.modulus()));
  std::vector<Fp::Elem> tt(rs.rank());
  for (auto& e : tt) e = f.from_int(1 + static_cast<int>(rng() % (f.modulus() - 1)));
  std::uniform_int_distribution<int> pick(1, rs.rank());
  WeylElt w = weyl_identity(rs);
  for (int k = 0; k < 2 * rs.num_positive(); ++k) w = weyl_compose(w, weyl_simple(rs, pick(rng)));
  auto word = reduced_word(rs, w);
  Ordering u1o = word.empty() ? make_ordering(rs, "papi:", {}) : papi_ordering(rs, word);
  CollectedElement<Fp> u1{u1o.id, {}};
  u1.c.assign(u1o.size(), 0);
  for (auto& c : u1.c) c = f.from_int(static_cast<int>(rng() % f.modulus()));
  return bruhat_create(pres, f, std::move(u), make_torus(f, std::move(tt)), w, word,
                       std::move(u1));
}

} // namespace

TEST_CASE("identity form is valid; invalid inputs are rejected") {
  auto rs = build_root_system(CartanType::A, 2);
  auto pres = derive_presentation(rs);
  Fp f(17);
  Ordering fixed = fixed_additive_order(*rs);

  CollectedElement<Fp> u{fixed.id, std::vector<Fp::Elem>(fixed.size(), 0)};
  CollectedElement<Fp> u1{"papi:", {}};
  auto id = bruhat_create(*pres, f, u, make_torus(f, {1ull, 1ull}), weyl_identity(*rs), {}, u1);
  CHECK(bruhat_equal(f, id, id));

  // non-invertible torus entry
  CHECK_THROWS_AS(make_torus(f, {0ull, 1ull}), std::invalid_argument);
  CHECK_THROWS_AS(bruhat_create(*pres, f, u, TorusElement<Fp>{{0, 1}}, weyl_identity(*rs), {}, u1),
                  std::invalid_argument);

  // non-reduced stored word
  WeylElt s1 = weyl_simple(*rs, 1);
  CHECK_THROWS_AS(bruhat_create(*pres, f, u, make_torus(f, {1ull, 1ull}), s1,
                                std::vector<int>{1, 2, 2, 1}, u1),
                  std::invalid_argument);

  // u' support violation: nonzero coefficient outside Phi_{s1} = {a12}
  CollectedElement<Fp> bad{fixed.id, std::vector<Fp::Elem>(fixed.size(), 0)};
  bad.c[fixed.position_of(rs->index_of_label(1, 3))] = 5;
  CHECK_THROWS_AS(bruhat_create_checked(*pres, f, u, make_torus(f, {1ull, 1ull}), s1,
                                        std::vector<int>{1}, bad),
                  std::invalid_argument);

  // valid s1 form with u' supported on {a12}
  CollectedElement<Fp> ok{fixed.id, std::vector<Fp::Elem>(fixed.size(), 0)};
  ok.c[fixed.position_of(rs->index_of_label(1, 2))] = 5;
  auto form = bruhat_create_checked(*pres, f, u, make_torus(f, {1ull, 1ull}), s1, {1}, ok);
  CHECK(f.eq(form.u1.c[0], 5));
}

TEST_CASE("bruhat_equal is an equivalence and rejects fuzzed invalid forms") {
  auto rs = build_root_system(CartanType::B, 3);
  auto pres = derive_presentation(rs);
  Fp f(17);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    auto x = random_form(*pres, f, rng);
    auto y = random_form(*pres, f, rng);
    auto z = random_form(*pres, f, rng);
    CHECK(bruhat_equal(f, x, x));
    CHECK(bruhat_equal(f, x, y) == bruhat_equal(f, y, x));
    if (bruhat_equal(f, x, y) && bruhat_equal(f, y, z)) CHECK(bruhat_equal(f, x, z));
  }
  // fuzz: random support violations always rejected
  Ordering fixed = fixed_additive_order(*rs);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<int> pick(1, rs->rank());
    WeylElt w = weyl_identity(*rs);
    for (int k = 0; k < 6; ++k) w = weyl_compose(w, weyl_simple(*rs, pick(rng)));
    auto inv = inversion_set(*rs, w);
    if (static_cast<int>(inv.size()) == rs->num_positive()) continue;
    std::vector<char> in_inv(rs->num_positive() + 1, 0);
    for (int r : inv) in_inv[r] = 1;
    int outside = 0;
    for (int r = 1; r <= rs->num_positive(); ++r)
      if (!in_inv[r]) { outside = r; break; }
    CollectedElement<Fp> u{fixed.id, std::vector<Fp::Elem>(fixed.size(), 0)};
    CollectedElement<Fp> bad = u;
    bad.c[fixed.position_of(outside)] = 3;
    std::vector<Fp::Elem> tt(rs->rank(), 1);
    CHECK_THROWS_AS(bruhat_create_checked(*pres, f, u, make_torus(f, std::move(tt)), w,
                                          reduced_word(*rs, w), bad),
                    std::invalid_argument);
  }
}

TEST_CASE("word problem op-count bound: <= n + 2N + length(w) equality ops") {
  for (int l : {4, 8}) {
    auto rs = build_root_system(CartanType::A, l);
    auto pres = derive_presentation(rs);
    Fp base(17);
    OpCounter ctr;
    Counted<Fp> f(base, ctr);
    std::mt19937_64 rng(13 + l);

    // build a random valid form over the counted ring (construction not counted)
    Ordering fixed = fixed_additive_order(*rs);
    CollectedElement<Counted<Fp>> u{fixed.id, {}};
    u.c.assign(fixed.size(), 0);
    for (auto& c : u.c) c = base.from_int(static_cast<int>(rng() % 17));
    std::vector<Fp::Elem> tt(rs->rank());
    for (auto& e : tt) e = base.from_int(1 + static_cast<int>(rng() % 16));
    std::uniform_int_distribution<int> pick(1, rs->rank());
    WeylElt w = weyl_identity(*rs);
    for (int k = 0; k < 2 * rs->num_positive(); ++k)
      w = weyl_compose(w, weyl_simple(*rs, pick(rng)));
    auto word = reduced_word(*rs, w);
    Ordering u1o = papi_ordering(*rs, word);
    CollectedElement<Counted<Fp>> u1{u1o.id, {}};
    u1.c.assign(u1o.size(), 0);
    for (auto& c : u1.c) c = base.from_int(static_cast<int>(rng() % 17));

    BruhatForm<Counted<Fp>> x{u, {tt}, w, word, u1o, u1};
    BruhatForm<Counted<Fp>> y = x;
    OpCounter snap = count_ops(ctr, [&] { CHECK(bruhat_equal(f, x, y)); });
    const std::uint64_t n = rs->rank(), N = rs->num_positive(), m = word.size();
    CHECK(snap.eq <= n + 2 * N + m);
    CHECK(snap.total() == snap.eq);

    // differing torus entry: detected within n comparisons
    y.t.t[rs->rank() - 1] = base.add(y.t.t[rs->rank() - 1], 1);
    snap = count_ops(ctr, [&] { CHECK_FALSE(bruhat_equal(f, x, y)); });
    CHECK(snap.eq <= n);
  }
}
