#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "unipot/rings.hpp"

using namespace unipot;

namespace {

template <Ring R>
typename R::Elem random_elem(const R&, std::mt19937_64&);

template <>
Fp::Elem random_elem(const Fp& f, std::mt19937_64& rng) {
  return std::uniform_int_distribution<std::uint64_t>(0, f.modulus() - 1)(rng);
}

template <>
Rationals::Elem random_elem(const Rationals&, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> num(-1000000, 1000000);
  std::uniform_int_distribution<std::int64_t> den(1, 1000000);
  return rat_normalize(num(rng), den(rng));
}

template <>
PolyRing::Elem random_elem(const PolyRing& pr, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(0, 3), expo(0, 2), coef(-5, 5);
  SparsePoly p;
  PolyRing::Elem acc = pr.zero();
  for (int t = nterms(rng); t > 0; --t) {
    SparsePoly mono;
    std::vector<std::uint16_t> e(pr.nvars(), 0);
    for (int i = 0; i < pr.nvars(); ++i) e[i] = static_cast<std::uint16_t>(expo(rng));
    int c = coef(rng);
    if (c == 0) continue;
    mono.terms.push_back({e, mpq_class(c)});
    acc = pr.add(acc, mono);
  }
  return acc;
}

template <Ring R>
void check_axioms(const R& ring, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    auto x = random_elem(ring, rng);
    auto y = random_elem(ring, rng);
    auto z = random_elem(ring, rng);
    CHECK(ring.eq(ring.add(ring.add(x, y), z), ring.add(x, ring.add(y, z))));
    CHECK(ring.eq(ring.mul(ring.mul(x, y), z), ring.mul(x, ring.mul(y, z))));
    CHECK(ring.eq(ring.mul(x, ring.add(y, z)), ring.add(ring.mul(x, y), ring.mul(x, z))));
    CHECK(ring.eq(ring.mul(x, y), ring.mul(y, x)));
    CHECK(ring.eq(ring.mul(x, ring.one()), x));
    CHECK(ring.is_zero(ring.add(x, ring.neg(x))));
    CHECK(ring.eq(ring.add(x, ring.zero()), x));
  }
}

} // namespace

TEST_CASE("ring axioms on 1000 random triples per ring") {
  check_axioms(Fp(17), 1000, 1);
  check_axioms(Fp(2), 200, 2);
  check_axioms(Fp(1000003), 200, 3);
  check_axioms(Rationals{}, 300, 4);
  check_axioms(PolyRing(3), 150, 5);
}

TEST_CASE("fp_reduce") {
  CHECK(fp_reduce(17, 0) == 0);
  CHECK(fp_reduce(17, -1) == 16);
  CHECK(fp_reduce(17, 34) == 0);
  CHECK_THROWS_AS(Fp(15), std::invalid_argument);
  CHECK_THROWS_AS(Fp(std::uint64_t{1} << 32), std::invalid_argument);
}

TEST_CASE("Fermat: x^p = x in F_p") {
  Fp f(1000003);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    auto x = random_elem(f, rng);
    Fp::Elem acc = x;
    // square-and-multiply through the ring interface
    std::uint64_t e = f.modulus() - 1;
    Fp::Elem r = f.one(), b = x;
    while (e) {
      if (e & 1) r = f.mul(r, b);
      b = f.mul(b, b);
      e >>= 1;
    }
    acc = f.mul(r, x);
    CHECK(f.eq(acc, x));
  }
}

TEST_CASE("rat_normalize") {
  Rationals q;
  CHECK(q.format(rat_normalize(2, 4)) == "1/2");
  CHECK(q.format(rat_normalize(3, -6)) == "-1/2");
  CHECK(q.format(rat_normalize(0, 7)) == "0");
  CHECK_THROWS_AS(rat_normalize(1, 0), std::invalid_argument);
}

TEST_CASE("rational inverse and units") {
  Rationals q;
  auto x = rat_normalize(-6, 4);
  CHECK(q.eq(q.mul(x, q.inv(x)), q.one()));
  CHECK_THROWS_AS(q.inv(q.zero()), UnsupportedError);
}

TEST_CASE("poly degree is additive for nonzero factors over Q") {
  PolyRing pr(4);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    auto f = random_elem(pr, rng);
    auto g = random_elem(pr, rng);
    if (pr.is_zero(f) || pr.is_zero(g)) continue;
    CHECK(pr.mul(f, g).total_degree() == f.total_degree() + g.total_degree());
  }
}

TEST_CASE("poly terms stay strictly ordered with no zero coefficients") {
  PolyRing pr(3);
  std::mt19937_64 rng(13);
  for (int t = 0; t < 200; ++t) {
    auto f = random_elem(pr, rng);
    auto g = random_elem(pr, rng);
    for (const auto& h : {pr.add(f, g), pr.mul(f, g), pr.neg(f)}) {
      for (const auto& [e, c] : h.terms) CHECK(sgn(c) != 0);
      for (std::size_t i = 1; i < h.terms.size(); ++i) {
        // descending graded-lex
        int d0 = 0, d1 = 0;
        for (auto v : h.terms[i - 1].first) d0 += v;
        for (auto v : h.terms[i].first) d1 += v;
        CHECK(d0 >= d1);
        if (d0 == d1) CHECK(h.terms[i - 1].first > h.terms[i].first);
      }
    }
  }
}

TEST_CASE("counted wrapper delegates bit-exactly and counts calls") {
  Fp f(17);
  OpCounter c;
  Counted<Fp> cf(f, c);
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    auto x = random_elem(f, rng);
    auto y = random_elem(f, rng);
    CHECK(cf.add(x, y) == f.add(x, y));
    CHECK(cf.mul(x, y) == f.mul(x, y));
    CHECK(cf.neg(x) == f.neg(x));
    CHECK(cf.eq(x, y) == f.eq(x, y));
  }
  CHECK(c.add == 100);
  CHECK(c.mul == 100);
  CHECK(c.neg == 100);
  CHECK(c.eq == 100);
  CHECK(c.inv == 0);

  OpCounter snap = count_ops(c, [] {});
  CHECK(snap == OpCounter{});
  snap = count_ops(c, [&] { cf.mul(3, 5); cf.inv(3); });
  CHECK(snap.mul == 1);
  CHECK(snap.inv == 1);
  CHECK(snap.total() == 2);
}

TEST_CASE("coefficient text round-trips") {
  Fp f(17);
  for (Fp::Elem v : {0ull, 1ull, 16ull}) CHECK(f.parse(f.format(v)) == v);
  CHECK(f.parse("-1") == 16);
  CHECK_THROWS_AS(f.parse("x"), std::invalid_argument);

  Rationals q;
  std::mt19937_64 rng(23);
  for (int t = 0; t < 50; ++t) {
    auto x = random_elem(q, rng);
    CHECK(q.eq(q.parse(q.format(x)), x));
  }

  PolyRing pr(3);
  for (int t = 0; t < 50; ++t) {
    auto x = random_elem(pr, rng);
    CHECK(pr.eq(pr.parse(pr.format(x)), x));
  }
  CHECK(pr.eq(pr.parse("2*a1^2*b+1/3*a2"),
              pr.add(pr.mul(pr.from_int(2), pr.mul(pr.mul(pr.variable(0), pr.variable(0)), pr.variable(2))),
                     pr.mul(pr.parse("1/3"), pr.variable(1)))));
  CHECK_THROWS_AS(pr.parse("2*zz"), std::invalid_argument);
}

TEST_CASE("poly eval matches substitution over F_p") {
  PolyRing pr(2);
  Fp f(1000003);
  auto p = pr.parse("3*a1^2*b+1/2*a1+7");
  std::mt19937_64 rng(29);
  for (int t = 0; t < 20; ++t) {
    Fp::Elem x = random_elem(f, rng), y = random_elem(f, rng);
    Fp::Elem want = f.add(f.add(f.mul(f.from_int(3), f.mul(f.mul(x, x), y)),
                                f.mul(f.inv(f.from_int(2)), x)),
                          f.from_int(7));
    CHECK(pr.eval(p, f, {x, y}) == want);
  }
}
