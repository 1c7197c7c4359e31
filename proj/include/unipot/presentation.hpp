#ifndef UNIPOT_PRESENTATION_HPP
#define UNIPOT_PRESENTATION_HPP

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "unipot/rootsystem.hpp"

namespace unipot {

// One tail factor x_t(C a^i b^j) of a commutator relation, where a is the
// coefficient of the term being moved left (root r) and b the coefficient of
// the term being passed (root s).
struct TailEntry {
  int t;  // canonical root index of the target, alpha_t = i alpha_r + j alpha_s
  int i, j;
  int c;
  bool operator==(const TailEntry&) const = default;
};

class CommutatorTable {
public:
  explicit CommutatorTable(int n = 0) : n_(n), off_(static_cast<std::size_t>(n) * n, -1) {}

  // moved root r past root s
  std::span<const TailEntry> tail(int r, int s) const {
    std::int32_t o = off_[static_cast<std::size_t>(r - 1) * n_ + (s - 1)];
    if (o < 0) return {};
    return {pool_.data() + o, static_cast<std::size_t>(cnt_[static_cast<std::size_t>(r - 1) * n_ + (s - 1)])};
  }

  void set(int r, int s, const std::vector<TailEntry>& entries);
  int size() const { return n_; }

  // test hook: flip the sign of one stored constant
  void mutate_flip_sign(int r, int s, int entry_index);

private:
  int n_;
  std::vector<std::int32_t> off_;
  std::vector<std::int32_t> cnt_;
  std::vector<TailEntry> pool_;
};

// Split FC presentation data for the full unipotent subgroup: the reduced
// commutator relation tails (x_s(b) x_r(a) = x_r(a) x_s(b) * tail) and the
// additive-ordering variant (x_s(b) x_r(a) = x_r(a) * tail * x_s(b)).
struct SplitPresentation {
  RootSystemPtr rs;
  CommutatorTable redrs;
  CommutatorTable addrs;
};

using PresentationPtr = std::shared_ptr<const SplitPresentation>;

// Derives both tables from the minimal matrix representation over a two
// variable polynomial ring; inconsistency with the oracle is fatal.
PresentationPtr derive_presentation(RootSystemPtr rs);

// Extension point: adopt externally supplied tables (gated by
// validate_presentation before trusting them).
PresentationPtr presentation_from_tables(RootSystemPtr rs, CommutatorTable redrs,
                                         CommutatorTable addrs);

// CSV dump "type,rank,r,s,t,i,j,C" of the reduced-relation table, and the
// matching parser (golden-file regression format).
std::string dump_table_csv(const SplitPresentation& pres);
CommutatorTable parse_table_csv(const RootSystem& rs, const std::string& csv);

} // namespace unipot

#endif
