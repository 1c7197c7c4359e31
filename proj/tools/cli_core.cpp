#include "cli_core.hpp"

#include <chrono>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "unipot/bruhat.hpp"
#include "unipot/symbolic.hpp"
#include "unipot/textio.hpp"

namespace unipot::cli {

namespace {

enum class Method { CTL, CFL, CFO, SCFL, SCFO, SD, Direct, Matrix };

const std::map<std::string, Method> kMethods = {
    {"ctl", Method::CTL},   {"cfl", Method::CFL},   {"cfo", Method::CFO},
    {"scfl", Method::SCFL}, {"scfo", Method::SCFO}, {"sd", Method::SD},
    {"direct", Method::Direct}, {"matrix", Method::Matrix}};

std::string method_name(Method m) {
  for (const auto& [k, v] : kMethods)
    if (v == m) return k;
  return "?";
}

struct RingSpec {
  enum Kind { FpK, QK, PolyK } kind = FpK;
  std::uint64_t p = 17;
  int nvars = 1;
  int bits = 32; // random rational component size
};

RingSpec parse_ring_spec(const std::string& s, int bits) {
  RingSpec spec;
  spec.bits = bits;
  if (s == "q") {
    spec.kind = RingSpec::QK;
  } else if (s.rfind("fp:", 0) == 0) {
    spec.kind = RingSpec::FpK;
    spec.p = std::stoull(s.substr(3));
  } else if (s.rfind("poly:", 0) == 0) {
    spec.kind = RingSpec::PolyK;
    spec.nvars = std::stoi(s.substr(5));
  } else {
    throw std::invalid_argument("--field expects fp:<p>, q, or poly:<nvars>");
  }
  return spec;
}

template <Ring R>
typename R::Elem random_elem(const R&, const RingSpec&, std::mt19937_64&);

template <>
Fp::Elem random_elem(const Fp& f, const RingSpec&, std::mt19937_64& rng) {
  return static_cast<Fp::Elem>(rng() % f.modulus());
}

template <>
Rationals::Elem random_elem(const Rationals&, const RingSpec& spec, std::mt19937_64& rng) {
  // random numerator and denominator of up to `bits` bits and a random sign
  mpz_class num = 0, den = 0;
  for (int b = 0; b < spec.bits; b += 32) {
    int take = std::min(32, spec.bits - b);
    std::uint64_t mask = take >= 64 ? ~0ull : ((1ull << take) - 1);
    num = (num << take) + static_cast<unsigned long>(rng() & mask);
    den = (den << take) + static_cast<unsigned long>(rng() & mask);
  }
  if (den == 0) den = 1;
  if (rng() & 1) num = -num;
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

template <>
SparsePoly random_elem(const PolyRing& pr, const RingSpec&, std::mt19937_64& rng) {
  PolyRing::Elem acc = pr.zero();
  int terms = 1 + static_cast<int>(rng() % 2);
  for (int t = 0; t < terms; ++t) {
    SparsePoly mono;
    std::vector<std::uint16_t> e(pr.nvars(), 0);
    e[rng() % pr.nvars()] = static_cast<std::uint16_t>(rng() % 2);
    int c = static_cast<int>(rng() % 7) - 3;
    if (c == 0) c = 1;
    mono.terms.push_back({std::move(e), mpq_class(c)});
    acc = pr.add(acc, mono);
  }
  return acc;
}

Ordering default_collect_order(const RootSystem& rs, Method m) {
  if (m == Method::CFO) return fixed_additive_order(rs);
  // CTL/CFL default to the representation order; type C uses the fixed
  // additive order (its representation order is not additive)
  if (rs.type() == CartanType::C) return fixed_additive_order(rs);
  return representation_order(rs);
}

CollectMethod to_collect_method(Method m) {
  switch (m) {
    case Method::CTL: return CollectMethod::CTL;
    case Method::CFL: return CollectMethod::CFL;
    case Method::CFO: return CollectMethod::CFO;
    default: throw std::logic_error("not a collector");
  }
}

TableStrategy to_strategy(Method m) {
  switch (m) {
    case Method::SCFL: return TableStrategy::CFL;
    case Method::SCFO: return TableStrategy::CFO;
    case Method::SD: return TableStrategy::SD;
    default: throw std::logic_error("not a symbolic method");
  }
}

bool is_symbolic(Method m) {
  return m == Method::SCFL || m == Method::SCFO || m == Method::SD;
}

// Symbolic tables cached per (type, rank, strategy) for the process.
const SymbolicTables& tables_for(PresentationPtr pres, TableStrategy s, std::size_t cap) {
  static std::map<std::tuple<char, int, int>, SymbolicTables> cache;
  auto key = std::make_tuple(static_cast<char>(pres->rs->type()), pres->rs->rank(),
                             static_cast<int>(s));
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_symbolic_tables(pres, s, cap)).first;
  return it->second;
}

template <Ring R>
Tuple<R> element_to_tuple(const R& ring, const RootSystem& rs, const Ordering& ord,
                          const CollectedElement<R>& x) {
  Tuple<R> a = zero_tuple<R>(ring, rs);
  for (int p = 0; p < ord.size(); ++p) a[ord.root_at(p)] = x.c[p];
  return a;
}

template <Ring R>
CollectedElement<R> tuple_to_element(const R& ring, const RootSystem& rs, const Ordering& ord,
                                     const Tuple<R>& a) {
  CollectedElement<R> x;
  x.ord_id = ord.id;
  x.c.assign(ord.size(), ring.zero());
  for (int p = 0; p < ord.size(); ++p) x.c[p] = a[ord.root_at(p)];
  return x;
}

// change of normal-form coordinates between orderings (re-collection)
template <Ring R>
CollectedElement<R> convert_ordering(const SplitPresentation& pres, const R& ring,
                                     const Ordering& from, const CollectedElement<R>& x,
                                     const Ordering& to) {
  return reorder(pres, ring, from, x, to);
}

template <Ring R>
Tuple<R> run_multiply(const SplitPresentation& pres, const R& ring, Method m, const Tuple<R>& a,
                      const Tuple<R>& b) {
  const RootSystem& rs = *pres.rs;
  Ordering rep = representation_order(rs);
  switch (m) {
    case Method::Direct: return direct_multiply(ring, rs, a, b);
    case Method::Matrix: return matrix_method_multiply(ring, rs, a, b);
    case Method::CTL:
    case Method::CFL:
    case Method::CFO: {
      Ordering ord = default_collect_order(rs, m);
      auto xa = convert_ordering(pres, ring, rep, tuple_to_element(ring, rs, rep, a), ord);
      auto xb = convert_ordering(pres, ring, rep, tuple_to_element(ring, rs, rep, b), ord);
      auto z = u_multiply(pres, ring, ord, xa, xb, to_collect_method(m));
      return element_to_tuple(ring, rs, rep, convert_ordering(pres, ring, ord, z, rep));
    }
    default:
      throw std::logic_error("run_multiply: symbolic methods go through the table cache");
  }
}

template <Ring R>
Tuple<R> run_invert(const SplitPresentation& pres, const R& ring, Method m, const Tuple<R>& a) {
  const RootSystem& rs = *pres.rs;
  Ordering rep = representation_order(rs);
  switch (m) {
    case Method::Direct: return direct_invert(ring, rs, a);
    case Method::Matrix: return matrix_method_invert(ring, rs, a);
    case Method::CTL:
    case Method::CFL:
    case Method::CFO: {
      Ordering ord = default_collect_order(rs, m);
      auto xa = convert_ordering(pres, ring, rep, tuple_to_element(ring, rs, rep, a), ord);
      auto z = u_invert(pres, ring, ord, xa, to_collect_method(m));
      return element_to_tuple(ring, rs, rep, convert_ordering(pres, ring, ord, z, rep));
    }
    default:
      throw std::logic_error("run_invert: symbolic methods go through the table cache");
  }
}

struct TableEmitter {
  std::string format; // csv | markdown
  std::ostream& out;
  std::size_t ncols = 0;

  void head(const std::vector<std::string>& cols) {
    ncols = cols.size();
    if (format == "markdown") {
      out << "|";
      for (auto& c : cols) out << " " << c << " |";
      out << "\n|";
      for (std::size_t k = 0; k < ncols; ++k) out << "---|";
      out << "\n";
    } else {
      for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << cols[k];
      out << "\n";
    }
  }
  void row(const std::vector<std::string>& cols) {
    if (format == "markdown") {
      out << "|";
      for (auto& c : cols) out << " " << c << " |";
      out << "\n";
    } else {
      for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << cols[k];
      out << "\n";
    }
  }
};

struct CommonOpts {
  std::string type = "A";
  int rank = 2;
  std::string field = "fp:17";
  std::string method = "cfo";
  std::uint64_t seed = 1;
  int trials = 100;
  std::string format = "csv";
  int bits = 32;
  std::size_t node_cap = kDefaultNodeCap;
};

template <typename F>
int with_ring(const RingSpec& spec, F&& f) {
  switch (spec.kind) {
    case RingSpec::FpK: { Fp ring(spec.p); return f(ring); }
    case RingSpec::QK: { Rationals ring; return f(ring); }
    case RingSpec::PolyK: { PolyRing ring(spec.nvars); return f(ring); }
  }
  return 2;
}

template <Ring R>
int cmd_collect_impl(const SplitPresentation& pres, const R& ring, Method m,
                     const std::string& word_text, std::ostream& out) {
  const RootSystem& rs = *pres.rs;
  if (m != Method::CTL && m != Method::CFL && m != Method::CFO)
    throw std::invalid_argument("collect accepts methods ctl, cfl, cfo");
  Ordering rep = representation_order(rs);
  Word<R> w = parse_word(rs, ring, word_text);
  Ordering ord = default_collect_order(rs, m);
  auto e = collect(pres, ring, w, ord, to_collect_method(m));
  out << format_element(ring, reorder(pres, ring, ord, e, rep)) << "\n";
  return 0;
}

template <Ring R>
int cmd_mulinv_impl(PresentationPtr pres, const R& ring, Method m, bool invert,
                    const std::string& elem_a, const std::string& elem_b, std::ostream& out,
                    std::size_t node_cap) {
  const RootSystem& rs = *pres->rs;
  Ordering rep = representation_order(rs);
  Tuple<R> a = element_to_tuple(ring, rs, rep, parse_element(ring, rep, elem_a));
  Tuple<R> z;
  if (is_symbolic(m)) {
    const SymbolicTables& t = tables_for(pres, to_strategy(m), node_cap);
    auto ta = convert_ordering(*pres, ring, rep, tuple_to_element(ring, rs, rep, a), t.ord);
    CollectedElement<R> tz;
    if (invert) {
      tz = symbolic_invert(t, ring, ta);
    } else {
      auto xb = parse_element(ring, rep, elem_b);
      auto tb = convert_ordering(*pres, ring, rep, xb, t.ord);
      tz = symbolic_multiply(t, ring, ta, tb);
    }
    z = element_to_tuple(ring, rs, rep, convert_ordering(*pres, ring, t.ord, tz, rep));
  } else if (invert) {
    z = run_invert(*pres, ring, m, a);
  } else {
    Tuple<R> b = element_to_tuple(ring, rs, rep, parse_element(ring, rep, elem_b));
    z = run_multiply(*pres, ring, m, a, b);
  }
  out << format_element(ring, tuple_to_element(ring, rs, rep, z)) << "\n";
  return 0;
}

template <Ring R>
int cmd_bench_impl(PresentationPtr pres, const R& ring, const RingSpec& spec,
                   const std::vector<Method>& methods, const CommonOpts& o, std::ostream& out) {
  const RootSystem& rs = *pres->rs;
  std::mt19937_64 rng(o.seed);

  // the same random elements are used for every method
  std::vector<Tuple<R>> as, bs;
  for (int t = 0; t < o.trials; ++t) {
    Tuple<R> a = zero_tuple<R>(ring, rs), b = zero_tuple<R>(ring, rs);
    for (int r = 1; r <= rs.num_positive(); ++r) {
      a[r] = random_elem(ring, spec, rng);
      b[r] = random_elem(ring, spec, rng);
    }
    as.push_back(std::move(a));
    bs.push_back(std::move(b));
  }

  TableEmitter tbl{o.format, out};
  tbl.head({"method", "op", "trials", "adds", "negs", "muls", "eqs", "invs", "total_ops",
            "avg_us"});

  Ordering rep = representation_order(rs);
  for (Method m : methods) {
    // inputs converted to the method's ordering outside the counted region,
    // so the op-count columns measure only the operation itself
    std::string conv_error;
    std::vector<CollectedElement<R>> xs, ys;
    Ordering mord = rep;
    try {
      if (is_symbolic(m)) mord = tables_for(pres, to_strategy(m), o.node_cap).ord;
      else if (m != Method::Direct && m != Method::Matrix) mord = default_collect_order(rs, m);
      for (int k = 0; k < o.trials; ++k) {
        xs.push_back(convert_ordering(*pres, ring, rep, tuple_to_element(ring, rs, rep, as[k]), mord));
        ys.push_back(convert_ordering(*pres, ring, rep, tuple_to_element(ring, rs, rep, bs[k]), mord));
      }
    } catch (const GuardError&) {
      conv_error = "guard";
    } catch (const UnsupportedError&) {
      conv_error = "unsupported";
    }
    for (int which = 0; which < 2; ++which) { // multiply, then invert
      OpCounter ctr;
      Counted<R> cring(ring, ctr);
      std::string cell_error = conv_error;
      auto t0 = std::chrono::steady_clock::now();
      try {
        if (!cell_error.empty()) {
        } else if (is_symbolic(m)) {
          const SymbolicTables& t = tables_for(pres, to_strategy(m), o.node_cap);
          slp::Evaluator<Counted<R>> ev(*t.builder);
          for (int k = 0; k < o.trials; ++k) {
            CollectedElement<Counted<R>> ta{xs[k].ord_id, xs[k].c};
            if (which == 0) {
              CollectedElement<Counted<R>> tb{ys[k].ord_id, ys[k].c};
              (void)symbolic_multiply(t, cring, ta, tb, &ev);
            } else {
              (void)symbolic_invert(t, cring, ta, &ev);
            }
          }
        } else if (m == Method::Direct || m == Method::Matrix) {
          for (int k = 0; k < o.trials; ++k) {
            if (which == 0) {
              if (m == Method::Direct) (void)direct_multiply(cring, rs, as[k], bs[k]);
              else (void)matrix_method_multiply(cring, rs, as[k], bs[k]);
            } else {
              if (m == Method::Direct) (void)direct_invert(cring, rs, as[k]);
              else (void)matrix_method_invert(cring, rs, as[k]);
            }
          }
        } else {
          for (int k = 0; k < o.trials; ++k) {
            CollectedElement<Counted<R>> ta{xs[k].ord_id, xs[k].c};
            if (which == 0) {
              CollectedElement<Counted<R>> tb{ys[k].ord_id, ys[k].c};
              (void)u_multiply(*pres, cring, mord, ta, tb, to_collect_method(m));
            } else {
              (void)u_invert(*pres, cring, mord, ta, to_collect_method(m));
            }
          }
        }
      } catch (const GuardError&) {
        cell_error = "guard";
      } catch (const UnsupportedError&) {
        cell_error = "unsupported";
      }
      auto t1 = std::chrono::steady_clock::now();
      double us =
          std::chrono::duration<double, std::micro>(t1 - t0).count() / std::max(1, o.trials);
      if (!cell_error.empty()) {
        tbl.row({method_name(m), which ? "invert" : "multiply", std::to_string(o.trials),
                 cell_error, cell_error, cell_error, cell_error, cell_error, cell_error,
                 cell_error});
      } else {
        tbl.row({method_name(m), which ? "invert" : "multiply", std::to_string(o.trials),
                 std::to_string(ctr.add), std::to_string(ctr.neg), std::to_string(ctr.mul),
                 std::to_string(ctr.eq), std::to_string(ctr.inv), std::to_string(ctr.total()),
                 std::to_string(us)});
      }
    }
  }
  return 0;
}

int cmd_halldeg_impl(PresentationPtr pres, const std::string& strategy, const CommonOpts& o,
                     std::ostream& out) {
  std::vector<TableStrategy> strats;
  if (strategy == "all")
    strats = {TableStrategy::CFL, TableStrategy::CFO, TableStrategy::SD};
  else if (strategy == "cfl")
    strats = {TableStrategy::CFL};
  else if (strategy == "cfo")
    strats = {TableStrategy::CFO};
  else if (strategy == "sd")
    strats = {TableStrategy::SD};
  else
    throw std::invalid_argument("--strategy expects cfl, cfo, sd, or all");

  Rationals q;
  TableEmitter tbl{o.format, out};
  tbl.head({"type", "rank", "strategy", "family", "entries", "nonzero", "max_degree",
            "avg_degree", "nodes", "exact"});
  const std::string ty(1, static_cast<char>(pres->rs->type()));
  for (TableStrategy s : strats) {
    const SymbolicTables& t = tables_for(pres, s, o.node_cap);
    DegreeStats st = hall_degree_stats(t);
    tbl.row({ty, std::to_string(pres->rs->rank()), strategy_name(s), "inv",
             std::to_string(pres->rs->num_positive()), std::to_string(st.inv_nonzero),
             std::to_string(st.inv_max), q.format(st.inv_avg), std::to_string(st.nodes),
             st.exact ? "yes" : "probe"});
    tbl.row({ty, std::to_string(pres->rs->rank()), strategy_name(s), "mult",
             std::to_string(t.mult_entry_count()), std::to_string(st.mult_nonzero),
             std::to_string(st.mult_max), q.format(st.mult_avg), std::to_string(st.nodes),
             st.exact ? "yes" : "probe"});
  }
  return 0;
}

int cmd_selftest_impl(bool quick, bool mutate, std::uint64_t seed, std::ostream& out) {
  int failures = 0;
  auto suite = [&](const std::string& name, bool ok) {
    out << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
    if (!ok) ++failures;
  };

  Fp f17(17);
  std::mt19937_64 seeder(seed);
  const int maxrank = quick ? 3 : 4;
  const int trials = quick ? 12 : 40;
  std::uniform_int_distribution<int> d17(0, 16);
  auto re = [&](std::mt19937_64& g) { return f17.from_int(d17(g)); };

  for (CartanType t : {CartanType::A, CartanType::B, CartanType::C, CartanType::D}) {
    for (int l = 2; l <= maxrank; ++l) {
      auto rs = build_root_system(t, l);
      auto pres = derive_presentation(rs);
      std::string tag = std::string(1, static_cast<char>(t)) + std::to_string(l);
      auto rep = validate_presentation(*pres, f17, trials, re, seeder());
      suite("presentation validation " + tag, rep.ok());

      bool agree = true, oracle = true;
      std::mt19937_64 rng(seeder());
      for (int k = 0; k < trials && agree && oracle; ++k) {
        Tuple<Fp> a = zero_tuple<Fp>(f17, *rs), b = zero_tuple<Fp>(f17, *rs);
        for (int r = 1; r <= rs->num_positive(); ++r) {
          a[r] = f17.from_int(d17(rng));
          b[r] = f17.from_int(d17(rng));
        }
        Tuple<Fp> want = direct_multiply(f17, *rs, a, b);
        for (Method m : {Method::CTL, Method::CFL, Method::CFO, Method::Matrix}) {
          Tuple<Fp> got = run_multiply(*pres, f17, m, a, b);
          for (int r = 1; r <= rs->num_positive(); ++r)
            if (!f17.eq(got[r], want[r])) agree = false;
        }
        Mat<Fp> prod =
            mat_mul(f17, embed_by_factors(f17, *rs, a), embed_by_factors(f17, *rs, b));
        Tuple<Fp> ext = extract_coeffs(f17, *rs, prod);
        for (int r = 1; r <= rs->num_positive(); ++r)
          if (!f17.eq(ext[r], want[r])) oracle = false;
        // group axioms: u u^{-1} = 1, (u^{-1})^{-1} = u
        Tuple<Fp> ai = direct_invert(f17, *rs, a);
        Tuple<Fp> prod0 = direct_multiply(f17, *rs, a, ai);
        for (int r = 1; r <= rs->num_positive(); ++r)
          if (!f17.is_zero(prod0[r])) agree = false;
      }
      suite("cross-method agreement " + tag, agree);
      suite("matrix-oracle equivalence " + tag, oracle);
    }
  }

  if (mutate) {
    // inject a sign flip; validation must detect the broken associativity
    auto rs = build_root_system(CartanType::B, 2);
    auto good = derive_presentation(rs);
    CommutatorTable bad(rs->num_positive());
    CommutatorTable addrs(rs->num_positive());
    for (int r = 1; r <= rs->num_positive(); ++r)
      for (int s = 1; s <= rs->num_positive(); ++s) {
        if (r == s) continue;
        auto sp = good->redrs.tail(r, s);
        bad.set(r, s, std::vector<TailEntry>(sp.begin(), sp.end()));
        auto sp2 = good->addrs.tail(r, s);
        addrs.set(r, s, std::vector<TailEntry>(sp2.begin(), sp2.end()));
      }
    bad.mutate_flip_sign(1, 4, 0);
    auto mutated = presentation_from_tables(rs, std::move(bad), std::move(addrs));
    auto rep = validate_presentation(*mutated, f17, 60, re, seeder());
    suite("mutated table associativity failure detected", !rep.ok());
  }

  out << (failures == 0 ? "selftest: all suites passed\n"
                        : "selftest: " + std::to_string(failures) + " suite(s) FAILED\n");
  return failures == 0 ? 0 : 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"element arithmetic in full unipotent subgroups of classical groups"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string word_text, elem_a, elem_b, methods_csv = "all", strategy = "all";
  bool quick = false, mutate = false;

  auto add_common = [&](CLI::App* cmd, bool with_method) {
    cmd->add_option("--type", o.type, "Cartan type A|B|C|D")->capture_default_str();
    cmd->add_option("--rank", o.rank, "rank")->capture_default_str();
    cmd->add_option("--field", o.field, "coefficient ring: fp:<p>, q, poly:<nvars>")
        ->capture_default_str();
    cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
    cmd->add_option("--format", o.format, "output format: csv|markdown")->capture_default_str();
    cmd->add_option("--bits", o.bits, "random rational component bits")->capture_default_str();
    cmd->add_option("--node-cap", o.node_cap, "symbolic-table node cap")->capture_default_str();
    if (with_method)
      cmd->add_option("--method", o.method, "ctl|cfl|cfo|scfl|scfo|sd|direct|matrix")
          ->capture_default_str();
  };

  CLI::App* c_collect = app.add_subcommand("collect", "collect a word into normal form");
  add_common(c_collect, true);
  c_collect->add_option("word", word_text, "word, e.g. \"x[3](5) x[1](2)^-1\"")->required();

  CLI::App* c_mul = app.add_subcommand("mul", "multiply two collected elements");
  add_common(c_mul, true);
  c_mul->add_option("a", elem_a, "left element, rep|c1,...,cN")->required();
  c_mul->add_option("b", elem_b, "right element")->required();

  CLI::App* c_inv = app.add_subcommand("inv", "invert a collected element");
  add_common(c_inv, true);
  c_inv->add_option("a", elem_a, "element, rep|c1,...,cN")->required();

  CLI::App* c_bench = app.add_subcommand("bench", "op-count benchmark across methods");
  add_common(c_bench, false);
  c_bench->add_option("--methods", methods_csv, "comma list or 'all'")->capture_default_str();
  c_bench->add_option("--trials", o.trials, "trial count")->capture_default_str();

  CLI::App* c_hall = app.add_subcommand("halldeg", "Hall polynomial degree report");
  add_common(c_hall, false);
  c_hall->add_option("--strategy", strategy, "cfl|cfo|sd|all")->capture_default_str();

  CLI::App* c_self = app.add_subcommand("selftest", "run the invariant suites");
  add_common(c_self, false);
  c_self->add_flag("--quick", quick, "reduced scale");
  c_self->add_flag("--mutate-table", mutate, "verify that a corrupted table is detected");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    CartanType ty = cartan_type_from_char(o.type.at(0));
    RingSpec spec = parse_ring_spec(o.field, o.bits);

    if (app.got_subcommand(c_self)) return cmd_selftest_impl(quick, mutate, o.seed, out);

    auto rs = build_root_system(ty, o.rank);
    auto pres = derive_presentation(rs);

    if (app.got_subcommand(c_hall)) return cmd_halldeg_impl(pres, strategy, o, out);

    Method m = Method::CFO;
    if (app.got_subcommand(c_collect) || app.got_subcommand(c_mul) || app.got_subcommand(c_inv)) {
      auto it = kMethods.find(o.method);
      if (it == kMethods.end()) {
        err << "usage error: unknown method '" << o.method << "'\n";
        return 2;
      }
      m = it->second;
    }

    if (app.got_subcommand(c_collect))
      return with_ring(spec, [&](const auto& ring) {
        return cmd_collect_impl(*pres, ring, m, word_text, out);
      });
    if (app.got_subcommand(c_mul))
      return with_ring(spec, [&](const auto& ring) {
        return cmd_mulinv_impl(pres, ring, m, false, elem_a, elem_b, out, o.node_cap);
      });
    if (app.got_subcommand(c_inv))
      return with_ring(spec, [&](const auto& ring) {
        return cmd_mulinv_impl(pres, ring, m, true, elem_a, "", out, o.node_cap);
      });
    if (app.got_subcommand(c_bench)) {
      std::vector<Method> methods;
      if (methods_csv == "all") {
        methods = {Method::CTL, Method::CFL, Method::CFO,   Method::SCFL,
                   Method::SCFO, Method::SD, Method::Direct, Method::Matrix};
      } else {
        std::stringstream ss(methods_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
          auto it = kMethods.find(tok);
          if (it == kMethods.end()) {
            err << "usage error: unknown method '" << tok << "'\n";
            return 2;
          }
          methods.push_back(it->second);
        }
      }
      return with_ring(spec, [&](const auto& ring) {
        return cmd_bench_impl(pres, ring, spec, methods, o, out);
      });
    }
    err << "usage error: no subcommand\n";
    return 2;
  } catch (const GuardError& e) {
    err << "resource guard: " << e.what() << "\n";
    return 3;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
}

} // namespace unipot::cli
