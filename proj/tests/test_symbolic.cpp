#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "unipot/symbolic.hpp"

using namespace unipot;

namespace {

const CartanType kTypes[] = {CartanType::A, CartanType::B, CartanType::C, CartanType::D};

template <Ring R>
CollectedElement<R> random_element(const R& ring, const Ordering& ord, std::mt19937_64& rng,
                                   auto&& rand_elem) {
  CollectedElement<R> x;
  x.ord_id = ord.id;
  x.c.clear();
  for (int p = 0; p < ord.size(); ++p) x.c.push_back(rand_elem(rng));
  return x;
}

} // namespace

TEST_CASE("A1 tables are empty; entry count is (N-1)N/2") {
  auto pres1 = derive_presentation(build_root_system(CartanType::A, 1));
  auto t1 = build_symbolic_tables(pres1, TableStrategy::CFO);
  CHECK(t1.mult_entry_count() == 0);

  auto presB3 = derive_presentation(build_root_system(CartanType::B, 3));
  auto tB3 = build_symbolic_tables(presB3, TableStrategy::CFL);
  CHECK(tB3.mult_entry_count() == 36);
}

TEST_CASE("A2 CFO table values: c12 = a2 + b a3, c13 = a3") {
  auto rs = build_root_system(CartanType::A, 2);
  auto pres = derive_presentation(rs);
  auto t = build_symbolic_tables(pres, TableStrategy::CFO);
  // expand over the polynomial ring and compare
  PolyRing pr(4); // a1, a2, a3, b
  slp::Evaluator<PolyRing> ev(*t.builder);
  std::vector<SparsePoly> vars = {pr.variable(0), pr.variable(1), pr.variable(2), pr.variable(3)};
  ev.begin(pr, vars);
  SparsePoly c12 = ev.get(pr, t.mult_entry(1, 2));
  SparsePoly c13 = ev.get(pr, t.mult_entry(1, 3));
  SparsePoly c23 = ev.get(pr, t.mult_entry(2, 3));
  CHECK(pr.eq(c12, pr.add(vars[1], pr.mul(vars[3], vars[2]))));
  CHECK(pr.eq(c13, vars[2]));
  CHECK(pr.eq(c23, vars[2]));
}

TEST_CASE("evaluation soundness: table evaluation equals direct collection") {
  Fp f(1000003);
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> d(0, 1000002);
  for (auto ty : kTypes)
    for (int l = 2; l <= 4; l += 2) {
      auto rs = build_root_system(ty, l);
      auto pres = derive_presentation(rs);
      for (auto strat : {TableStrategy::CFL, TableStrategy::CFO}) {
        auto t = build_symbolic_tables(pres, strat);
        const int n = t.n();
        slp::Evaluator<Fp> ev(*t.builder);
        for (int r = 1; r <= n; ++r)
          for (int trial = 0; trial < (l == 2 ? 20 : 4); ++trial) {
            std::vector<Fp::Elem> inputs(n + 1, 0);
            for (int s = r; s <= n; ++s) inputs[s - 1] = f.from_int(d(rng));
            inputs[n] = f.from_int(d(rng));
            // direct collection of (prod_{s>r} x_s(a_s)) x_r(b) over F_p
            Word<Fp> w(f);
            for (int s = r + 1; s <= n; ++s)
              if (inputs[s - 1]) w.push_back(t.ord.root_at(s - 1), inputs[s - 1], +1);
            if (inputs[n]) w.push_back(t.ord.root_at(r - 1), inputs[n], +1);
            auto e = strat == TableStrategy::CFO
                         ? collect_from_outside(*pres, f, w, t.ord)
                         : collect_from_left(*pres, f, w, t.ord);
            ev.begin(f, inputs);
            for (int s = r + 1; s <= n; ++s)
              CHECK(ev.get(f, t.mult_entry(r, s)) == e.c[s - 1]);
          }
      }
    }
}

TEST_CASE("symbolic multiply and invert agree with collection, all strategies") {
  Fp f17(17);
  Rationals q;
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<int> d17(0, 16), dq(-5, 5);
  auto rand17 = [&](std::mt19937_64& g) { return f17.from_int(d17(g)); };
  auto randq = [&](std::mt19937_64& g) { return q.from_int(dq(g)); };

  for (auto ty : kTypes)
    for (int l = 2; l <= 4; ++l) {
      auto rs = build_root_system(ty, l);
      auto pres = derive_presentation(rs);
      for (auto strat : {TableStrategy::CFL, TableStrategy::CFO, TableStrategy::SD}) {
        auto t = build_symbolic_tables(pres, strat);
        slp::Evaluator<Fp> ev(*t.builder);
        for (int trial = 0; trial < 25; ++trial) {
          auto x = random_element(f17, t.ord, rng, rand17);
          auto y = random_element(f17, t.ord, rng, rand17);
          auto z = symbolic_multiply(t, f17, x, y, &ev);
          auto want = u_multiply(*pres, f17, t.ord, x, y,
                                 strat == TableStrategy::CFO ? CollectMethod::CFO
                                                             : CollectMethod::CFL);
          CHECK(u_equal(f17, z, want));
          auto zi = symbolic_invert(t, f17, x, &ev);
          auto wanti = u_invert(*pres, f17, t.ord, x,
                                strat == TableStrategy::CFO ? CollectMethod::CFO
                                                            : CollectMethod::CFL);
          CHECK(u_equal(f17, zi, wanti));
          // identity operand
          CollectedElement<Fp> id{t.ord.id, std::vector<Fp::Elem>(t.n(), 0)};
          CHECK(u_equal(f17, symbolic_multiply(t, f17, x, id, &ev), x));
          CHECK(u_equal(f17, symbolic_multiply(t, f17, id, x, &ev), x));
        }
        // over Q with 32-bit-sized rationals, a small sample
        if (l <= 3) {
          slp::Evaluator<Rationals> evq(*t.builder);
          for (int trial = 0; trial < 5; ++trial) {
            auto x = random_element(q, t.ord, rng, randq);
            auto y = random_element(q, t.ord, rng, randq);
            auto z = symbolic_multiply(t, q, x, y, &evq);
            auto want = u_multiply(*pres, q, t.ord, x, y,
                                   strat == TableStrategy::CFO ? CollectMethod::CFO
                                                               : CollectMethod::CFL);
            CHECK(u_equal(q, z, want));
          }
        }
      }
    }
}

TEST_CASE("hash consing: rebuilding twice gives identical node counts") {
  auto rs = build_root_system(CartanType::C, 3);
  auto pres = derive_presentation(rs);
  auto t1 = build_symbolic_tables(pres, TableStrategy::CFO);
  auto t2 = build_symbolic_tables(pres, TableStrategy::CFO);
  CHECK(t1.node_count() == t2.node_count());
  CHECK(t1.mult == t2.mult);
  CHECK(t1.inv == t2.inv);
}

TEST_CASE("node cap trips as a guard error") {
  auto rs = build_root_system(CartanType::B, 4);
  auto pres = derive_presentation(rs);
  CHECK_THROWS_AS(build_symbolic_tables(pres, TableStrategy::CFL, /*node_cap=*/64), GuardError);
}

TEST_CASE("Table-5 degrees at small rank") {
  // CFL column: inversion family, max = highest root height, type-A average
  // (l+2)/3 exactly; CFO column: multiply family, max 2/4/3/3
  for (int l = 3; l <= 5; ++l) {
    auto pres = derive_presentation(build_root_system(CartanType::A, l));
    auto cfl = hall_degree_stats(build_symbolic_tables(pres, TableStrategy::CFL));
    CHECK(cfl.exact);
    CHECK(cfl.inv_max == l);
    mpq_class want(l + 2, 3);
    want.canonicalize();
    CHECK(cfl.inv_avg == want);
    auto cfo = hall_degree_stats(build_symbolic_tables(pres, TableStrategy::CFO));
    CHECK(cfo.mult_max == 2);
  }
  {
    auto presB = derive_presentation(build_root_system(CartanType::B, 3));
    CHECK(hall_degree_stats(build_symbolic_tables(presB, TableStrategy::CFL)).inv_max == 5);
    CHECK(hall_degree_stats(build_symbolic_tables(presB, TableStrategy::CFO)).mult_max == 4);
    auto presC = derive_presentation(build_root_system(CartanType::C, 3));
    CHECK(hall_degree_stats(build_symbolic_tables(presC, TableStrategy::CFL)).inv_max == 5);
    CHECK(hall_degree_stats(build_symbolic_tables(presC, TableStrategy::CFO)).mult_max == 3);
    auto presD = derive_presentation(build_root_system(CartanType::D, 4));
    CHECK(hall_degree_stats(build_symbolic_tables(presD, TableStrategy::CFL)).inv_max == 5);
    CHECK(hall_degree_stats(build_symbolic_tables(presD, TableStrategy::CFO)).mult_max == 3);
  }
  // B2 average root height check: (2l + 3/2 - 1/(2l))/3 = 7/4 at l = 2
  {
    auto presB2 = derive_presentation(build_root_system(CartanType::B, 2));
    auto st = hall_degree_stats(build_symbolic_tables(presB2, TableStrategy::CFL));
    CHECK(st.inv_avg == mpq_class(7, 4));
  }
}

TEST_CASE("degree probe agrees with exact expansion") {
  auto pres = derive_presentation(build_root_system(CartanType::B, 3));
  auto t = build_symbolic_tables(pres, TableStrategy::CFL);
  auto exact = hall_degree_stats(t);
  auto probed = hall_degree_stats(t, /*exact_node_limit=*/0);
  CHECK(exact.exact);
  CHECK_FALSE(probed.exact);
  CHECK(exact.inv_max == probed.inv_max);
  CHECK(exact.mult_max == probed.mult_max);
  CHECK(exact.inv_avg == probed.inv_avg);
}

TEST_CASE("SD tables reject characteristic 2 for type B at evaluation") {
  auto pres = derive_presentation(build_root_system(CartanType::B, 2));
  auto t = build_symbolic_tables(pres, TableStrategy::SD);
  Fp f2(2);
  CollectedElement<Fp> x{t.ord.id, std::vector<Fp::Elem>(t.n(), 1)};
  CHECK_THROWS_AS(symbolic_multiply(t, f2, x, x), UnsupportedError);
}

TEST_CASE("metadata csv has one row per table entry") {
  auto pres = derive_presentation(build_root_system(CartanType::A, 3));
  auto t = build_symbolic_tables(pres, TableStrategy::CFO);
  std::string csv = dump_table_metadata_csv(t);
  std::size_t rows = std::count(csv.begin(), csv.end(), '\n') - 1;
  CHECK(rows == t.mult_entry_count() + t.n());
  CHECK(csv.find("A,3,cfo,mult,1,2,") != std::string::npos);
}
