#include "unipot/presentation.hpp"

#include <algorithm>
#include <sstream>

#include "unipot/matrices.hpp"

namespace unipot {

void CommutatorTable::set(int r, int s, const std::vector<TailEntry>& entries) {
  if (cnt_.empty()) cnt_.assign(static_cast<std::size_t>(n_) * n_, 0);
  std::size_t key = static_cast<std::size_t>(r - 1) * n_ + (s - 1);
  if (off_[key] >= 0) throw std::logic_error("CommutatorTable::set: pair already set");
  if (entries.empty()) return;
  off_[key] = static_cast<std::int32_t>(pool_.size());
  cnt_[key] = static_cast<std::int32_t>(entries.size());
  pool_.insert(pool_.end(), entries.begin(), entries.end());
}

void CommutatorTable::mutate_flip_sign(int r, int s, int entry_index) {
  std::int32_t o = off_[static_cast<std::size_t>(r - 1) * n_ + (s - 1)];
  if (o < 0 || entry_index >= cnt_[static_cast<std::size_t>(r - 1) * n_ + (s - 1)])
    throw std::invalid_argument("mutate_flip_sign: no such entry");
  pool_[o + entry_index].c = -pool_[o + entry_index].c;
}

namespace {

struct Candidate {
  int t, i, j;
};

std::vector<Candidate> tail_candidates(const RootSystem& rs, int r, int s) {
  std::vector<Candidate> out;
  std::vector<int> e(rs.dim());
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      if (i + j > 4) continue;
      for (int k = 0; k < rs.dim(); ++k) e[k] = i * rs.root(r).e[k] + j * rs.root(s).e[k];
      int t = rs.index_of_coords(e);
      if (t != 0) out.push_back({t, i, j});
    }
  std::sort(out.begin(), out.end(),
            [&](const Candidate& x, const Candidate& y) { return rs.height(x.t) < rs.height(y.t); });
  return out;
}

// Strip the factors x_t(C a^i b^j) off M (which must be such a product) and
// return the nonzero entries; M must reduce to the identity.
std::vector<TailEntry> peel(const PolyRing& pr, const RootSystem& rs, Mat<PolyRing>& m,
                            const std::vector<Candidate>& cands) {
  std::vector<TailEntry> out;
  for (const Candidate& cd : cands) {
    RootMap rm = root_map(rs, cd.t);
    const MapEntry& primary = rm.lin.front();
    const SparsePoly& entry = m.at(primary.row, primary.col);
    mpq_class coef(0);
    for (const auto& [exps, c] : entry.terms)
      if (exps[0] == cd.i && exps[1] == cd.j) { coef = c; break; }
    mpq_class cval = coef / primary.coef;
    if (sgn(cval) == 0) continue;
    if (cval.get_den() != 1 || abs(cval.get_num()) > 3)
      throw std::logic_error("presentation derivation: non-integral or oversized constant");
    int c = static_cast<int>(cval.get_num().get_si());
    out.push_back({cd.t, cd.i, cd.j, c});
    // remove the factor: M := x_t(-C a^i b^j) M
    SparsePoly mono;
    std::vector<std::uint16_t> ex = {static_cast<std::uint16_t>(cd.i),
                                     static_cast<std::uint16_t>(cd.j)};
    mono.terms.push_back({ex, mpq_class(-c)});
    apply_root_factor_left(pr, rs, cd.t, mono, m);
  }
  for (int r2 = 1; r2 <= m.n; ++r2)
    for (int c2 = 1; c2 <= m.n; ++c2)
      if (!pr.eq(m.at(r2, c2), r2 == c2 ? pr.one() : pr.zero()))
        throw std::logic_error("presentation derivation: residual factor after peeling");
  return out;
}

} // namespace

PresentationPtr derive_presentation(RootSystemPtr rsp) {
  const RootSystem& rs = *rsp;
  const int n = rs.num_positive();
  PolyRing pr(2, {"a", "b"});
  SparsePoly a = pr.variable(0), b = pr.variable(1);
  SparsePoly na = pr.neg(a), nb = pr.neg(b);

  auto pres = std::make_shared<SplitPresentation>();
  pres->rs = rsp;
  pres->redrs = CommutatorTable(n);
  pres->addrs = CommutatorTable(n);

  for (int r = 1; r <= n; ++r)
    for (int s = 1; s <= n; ++s) {
      if (r == s) continue;
      std::vector<Candidate> cands = tail_candidates(rs, r, s);
      if (cands.empty()) continue;

      // redrs: T = x_s(-b) x_r(-a) x_s(b) x_r(a)
      Mat<PolyRing> m = Mat<PolyRing>::identity(pr, rs.matrix_dim());
      apply_root_factor_left(pr, rs, r, a, m);
      apply_root_factor_left(pr, rs, s, b, m);
      apply_root_factor_left(pr, rs, r, na, m);
      apply_root_factor_left(pr, rs, s, nb, m);
      pres->redrs.set(r, s, peel(pr, rs, m, cands));

      // addrs: T' = x_r(-a) x_s(b) x_r(a) x_s(-b)
      Mat<PolyRing> m2 = Mat<PolyRing>::identity(pr, rs.matrix_dim());
      apply_root_factor_left(pr, rs, s, nb, m2);
      apply_root_factor_left(pr, rs, r, a, m2);
      apply_root_factor_left(pr, rs, s, b, m2);
      apply_root_factor_left(pr, rs, r, na, m2);
      pres->addrs.set(r, s, peel(pr, rs, m2, cands));
    }
  return pres;
}

PresentationPtr presentation_from_tables(RootSystemPtr rs, CommutatorTable redrs,
                                         CommutatorTable addrs) {
  if (redrs.size() != rs->num_positive() || addrs.size() != rs->num_positive())
    throw std::invalid_argument("presentation_from_tables: table size mismatch");
  auto pres = std::make_shared<SplitPresentation>();
  pres->rs = std::move(rs);
  pres->redrs = std::move(redrs);
  pres->addrs = std::move(addrs);
  return pres;
}

std::string dump_table_csv(const SplitPresentation& pres) {
  const RootSystem& rs = *pres.rs;
  std::ostringstream out;
  out << "type,rank,r,s,t,i,j,C\n";
  for (int r = 1; r <= rs.num_positive(); ++r)
    for (int s = 1; s <= rs.num_positive(); ++s) {
      if (r == s) continue;
      for (const TailEntry& e : pres.redrs.tail(r, s))
        out << static_cast<char>(rs.type()) << ',' << rs.rank() << ',' << r << ',' << s << ','
            << e.t << ',' << e.i << ',' << e.j << ',' << e.c << '\n';
    }
  return out.str();
}

CommutatorTable parse_table_csv(const RootSystem& rs, const std::string& csv) {
  CommutatorTable table(rs.num_positive());
  std::istringstream in(csv);
  std::string line;
  int cur_r = 0, cur_s = 0;
  std::vector<TailEntry> acc;
  auto flush = [&] {
    if (cur_r) table.set(cur_r, cur_s, acc);
    acc.clear();
  };
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line.empty() || line[0] == 't') continue; // header
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> f;
    while (std::getline(ls, tok, ',')) f.push_back(tok);
    if (f.size() != 8) throw std::invalid_argument("table csv: bad row '" + line + "'");
    if (cartan_type_from_char(f[0][0]) != rs.type() || std::stoi(f[1]) != rs.rank())
      throw std::invalid_argument("table csv: type/rank mismatch");
    int r = std::stoi(f[2]), s = std::stoi(f[3]);
    if (r != cur_r || s != cur_s) {
      flush();
      cur_r = r;
      cur_s = s;
    }
    acc.push_back({std::stoi(f[4]), std::stoi(f[5]), std::stoi(f[6]), std::stoi(f[7])});
  }
  flush();
  return table;
}

} // namespace unipot
