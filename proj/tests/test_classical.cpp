#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "unipot/classical.hpp"

using namespace unipot;

namespace {

const CartanType kTypes[] = {CartanType::A, CartanType::B, CartanType::C, CartanType::D};

template <Ring R>
Tuple<R> random_tuple(const R& ring, const RootSystem& rs, std::mt19937_64& rng, int span = 9) {
  Tuple<R> a = zero_tuple<R>(ring, rs);
  std::uniform_int_distribution<int> d(-(span / 2), span / 2);
  for (int r = 1; r <= rs.num_positive(); ++r) a[r] = ring.from_int(d(rng));
  return a;
}

template <Ring R>
bool tuples_eq(const R& ring, const Tuple<R>& a, const Tuple<R>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 1; k < a.size(); ++k)
    if (!ring.eq(a[k], b[k])) return false;
  return true;
}

} // namespace

TEST_CASE("recursion-built embedding equals the factor-product oracle") {
  Rationals q;
  std::mt19937_64 rng(101);
  for (auto t : kTypes)
    for (int l = (t == CartanType::D ? 2 : 1); l <= 5; ++l) {
      auto rs = build_root_system(t, l);
      for (int trial = 0; trial < 8; ++trial) {
        auto a = random_tuple(q, *rs, rng);
        Mat<Rationals> lhs = embed_matrix(q, *rs, a);
        Mat<Rationals> rhs = embed_by_factors(q, *rs, a);
        REQUIRE(mat_equal(q, lhs, rhs));
        CHECK(is_lower_unitriangular(q, lhs));
        CHECK(preserves_form(q, *rs, lhs));
      }
    }
}

TEST_CASE("A2 pinned values") {
  Rationals q;
  auto rs = build_root_system(CartanType::A, 2);
  int a12 = rs->label_index(1, 2), a13 = rs->label_index(1, 3), a23 = rs->label_index(2, 3);

  // embed (a, c, b) -> rows [1,0,0],[a,1,0],[c,b,1]
  Tuple<Rationals> x = zero_tuple<Rationals>(q, *rs);
  x[a12] = q.from_int(3); x[a13] = q.from_int(5); x[a23] = q.from_int(7);
  Mat<Rationals> m = embed_matrix(q, *rs, x);
  CHECK(q.eq(m.at(2, 1), q.from_int(3)));
  CHECK(q.eq(m.at(3, 1), q.from_int(5)));
  CHECK(q.eq(m.at(3, 2), q.from_int(7)));

  // c13 = a13 + b12 a23 + b13
  std::mt19937_64 rng(5);
  auto a = random_tuple(q, *rs, rng), b = random_tuple(q, *rs, rng);
  auto c = direct_multiply(q, *rs, a, b);
  CHECK(q.eq(c[a13], q.add(q.add(a[a13], q.mul(b[a12], a[a23])), b[a13])));

  // inverse of (a, 0, b) is (-a, ab, -b); d12 = -a12, d13 = -a13 + a12 a23
  Tuple<Rationals> y = zero_tuple<Rationals>(q, *rs);
  y[a12] = q.from_int(4); y[a23] = q.from_int(9);
  auto d = direct_invert(q, *rs, y);
  CHECK(q.eq(d[a12], q.from_int(-4)));
  CHECK(q.eq(d[a13], q.from_int(36)));
  CHECK(q.eq(d[a23], q.from_int(-9)));
  auto d2 = direct_invert(q, *rs, a);
  CHECK(q.eq(d2[a12], q.neg(a[a12])));
  CHECK(q.eq(d2[a13], q.add(q.neg(a[a13]), q.mul(a[a12], a[a23]))));

  // zero cases
  auto z = zero_tuple<Rationals>(q, *rs);
  CHECK(tuples_eq(q, direct_multiply(q, *rs, a, z), a));
  CHECK(tuples_eq(q, direct_invert(q, *rs, z), z));
  CHECK(mat_equal(q, embed_matrix(q, *rs, z), Mat<Rationals>::identity(q, 3)));
}

TEST_CASE("B2 doubled middle-row entry") {
  Rationals q;
  auto rs = build_root_system(CartanType::B, 2);
  std::mt19937_64 rng(7);
  auto a = random_tuple(q, *rs, rng);
  Mat<Rationals> m = embed_matrix(q, *rs, a);
  // entry (l+1, 1) is 2*a10; extraction halves it
  CHECK(q.eq(m.at(3, 1), q.mul(q.from_int(2), a[rs->label_index(1, 0)])));
  auto back = extract_coeffs(q, *rs, m, /*validate=*/true);
  CHECK(tuples_eq(q, back, a));
}

TEST_CASE("direct formulas match the matrix oracle, all types, Q and F17") {
  std::mt19937_64 rng(11);
  for (auto t : kTypes)
    for (int l = (t == CartanType::D ? 2 : 1); l <= 6; ++l) {
      auto rs = build_root_system(t, l);
      Rationals q;
      Fp f(17);
      for (int trial = 0; trial < 6; ++trial) {
        auto a = random_tuple(q, *rs, rng);
        auto b = random_tuple(q, *rs, rng);
        auto c = direct_multiply(q, *rs, a, b);
        Mat<Rationals> prod =
            mat_mul(q, embed_by_factors(q, *rs, a), embed_by_factors(q, *rs, b));
        CHECK(mat_equal(q, embed_matrix(q, *rs, c), prod));
        // inverse round trip and oracle
        auto d = direct_invert(q, *rs, a);
        CHECK(tuples_eq(q, direct_multiply(q, *rs, a, d), zero_tuple<Rationals>(q, *rs)));
        CHECK(tuples_eq(q, direct_invert(q, *rs, d), a));
        // method D agrees
        CHECK(tuples_eq(q, matrix_method_multiply(q, *rs, a, b), c));
        CHECK(tuples_eq(q, matrix_method_invert(q, *rs, a), d));

        // F17 route
        auto af = random_tuple(f, *rs, rng, 17);
        auto bf = random_tuple(f, *rs, rng, 17);
        auto cf = direct_multiply(f, *rs, af, bf);
        Mat<Fp> prodf = mat_mul(f, embed_by_factors(f, *rs, af), embed_by_factors(f, *rs, bf));
        CHECK(mat_equal(f, embed_matrix(f, *rs, cf), prodf));
        CHECK(tuples_eq(f, matrix_method_multiply(f, *rs, af, bf), cf));
        CHECK(preserves_form(f, *rs, embed_matrix(f, *rs, af)));
      }
    }
}

TEST_CASE("extract rejects matrices outside the image") {
  Rationals q;
  auto rs = build_root_system(CartanType::C, 2);
  Mat<Rationals> m = Mat<Rationals>::identity(q, 4);
  m.at(4, 2) = q.from_int(1); // breaks the symplectic form
  CHECK_THROWS_AS(extract_coeffs(q, *rs, m, true), std::invalid_argument);
}

TEST_CASE("type B rejects characteristic 2; A, C, D accept it") {
  Fp f2(2);
  auto rsB = build_root_system(CartanType::B, 3);
  auto a = zero_tuple<Fp>(f2, *rsB);
  CHECK_THROWS_AS(direct_multiply(f2, *rsB, a, a), UnsupportedError);
  CHECK_THROWS_AS(direct_invert(f2, *rsB, a), UnsupportedError);
  CHECK_THROWS_AS(embed_matrix(f2, *rsB, a), UnsupportedError);
  std::mt19937_64 rng(13);
  for (auto t : {CartanType::A, CartanType::C, CartanType::D}) {
    auto rs = build_root_system(t, 3);
    auto x = random_tuple(f2, *rs, rng, 2);
    auto y = random_tuple(f2, *rs, rng, 2);
    auto c = direct_multiply(f2, *rs, x, y);
    Mat<Fp> prod = mat_mul(f2, embed_by_factors(f2, *rs, x), embed_by_factors(f2, *rs, y));
    CHECK(mat_equal(f2, embed_matrix(f2, *rs, c), prod));
    CHECK(tuples_eq(f2, direct_multiply(f2, *rs, x, direct_invert(f2, *rs, x)),
                    zero_tuple<Fp>(f2, *rs)));
  }
}

TEST_CASE("sparse peel equals a single-term direct multiply") {
  Rationals q;
  std::mt19937_64 rng(17);
  for (auto t : kTypes)
    for (int l = (t == CartanType::D ? 2 : 2); l <= 5; ++l) {
      auto rs = build_root_system(t, l);
      for (int alpha = 1; alpha <= rs->num_positive(); ++alpha)
        for (int trial = 0; trial < 3; ++trial) {
          auto v = random_tuple(q, *rs, rng);
          Tuple<Rationals> g = zero_tuple<Rationals>(q, *rs);
          auto tval = q.from_int(static_cast<int>(rng() % 13) - 6);
          g[alpha] = tval;
          auto want = direct_multiply(q, *rs, g, v);
          auto got = v;
          peel_apply_left(q, *rs, alpha, tval, got);
          CHECK(tuples_eq(q, got, want));
        }
    }
}

TEST_CASE("direct multiply op-count is input-independent over a field") {
  auto rs = build_root_system(CartanType::C, 4);
  Fp f(17);
  OpCounter ctr;
  Counted<Fp> cf(f, ctr);
  std::mt19937_64 rng(19);
  auto a = random_tuple(cf, *rs, rng, 17);
  auto b = random_tuple(cf, *rs, rng, 17);
  auto z = zero_tuple<Counted<Fp>>(cf, *rs);
  OpCounter c1 = count_ops(ctr, [&] { direct_multiply(cf, *rs, a, b); });
  OpCounter c2 = count_ops(ctr, [&] { direct_multiply(cf, *rs, z, z); });
  CHECK(c1 == c2);
  OpCounter i1 = count_ops(ctr, [&] { direct_invert(cf, *rs, a); });
  OpCounter i2 = count_ops(ctr, [&] { direct_invert(cf, *rs, z); });
  CHECK(i1 == i2);
}

TEST_CASE("peel cost scales with the row of the peeled root") {
  auto rs = build_root_system(CartanType::A, 8);
  Fp f(17);
  OpCounter ctr;
  Counted<Fp> cf(f, ctr);
  std::mt19937_64 rng(23);
  auto v = random_tuple(cf, *rs, rng, 17);
  // alpha = a[p, l+1]: 2(p-1) + 1 ops
  for (int p = 1; p <= 8; ++p) {
    auto w = v;
    OpCounter c = count_ops(ctr, [&] {
      peel_apply_left(cf, *rs, rs->label_index(p, 9), f.from_int(3), w);
    });
    CHECK(c.total() == 2 * (p - 1) + 1);
  }
}
