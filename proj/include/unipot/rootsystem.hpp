#ifndef UNIPOT_ROOTSYSTEM_HPP
#define UNIPOT_ROOTSYSTEM_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "unipot/common.hpp"

namespace unipot {

enum class CartanType : char { A = 'A', B = 'B', C = 'C', D = 'D' };

CartanType cartan_type_from_char(char c);

// A positive root carries its pair label (i, j) — j positive, zero, or
// negative per the classical conventions — together with its expansion in the
// e-basis and in the simple roots.
struct Root {
  int i = 0, j = 0;
  std::vector<int> e;      // e-basis coordinates
  std::vector<int> simple; // simple-root coefficients
  int height = 0;
};

// Signed permutation acting on the e-basis from the right: e_k -> sign * e_m
// is stored as img[k-1] = ±m. Type A uses plain permutations of 1..rank+1.
struct WeylElt {
  std::vector<int> img;
  bool operator==(const WeylElt&) const = default;
  bool is_identity() const;
};

// A sequence of distinct canonical root indices; a full ordering of Phi+ when
// size() == N, or an ordering of a subset (e.g. an inversion set).
struct Ordering {
  std::string id;
  std::vector<int> roots; // position (0-based) -> canonical root index (1-based)
  std::vector<int> pos;   // canonical root index (1-based) -> position, -1 if absent

  int size() const { return static_cast<int>(roots.size()); }
  int root_at(int p) const { return roots[p]; }
  int position_of(int r) const { return pos[r]; }
  bool contains(int r) const { return pos[r] >= 0; }
};

// Canonical root indices are 1..N in representation order (lexicographic on
// pair labels with the per-type column sequences).
class RootSystem {
public:
  RootSystem(CartanType type, int rank);

  CartanType type() const { return type_; }
  int rank() const { return rank_; }
  int dim() const { return dim_; }            // e-space dimension
  int matrix_dim() const { return mat_dim_; } // minimal representation degree
  int num_positive() const { return static_cast<int>(roots_.size()); }

  const Root& root(int r) const { return roots_[r - 1]; } // 1-based
  int height(int r) const { return root(r).height; }
  bool is_simple(int r) const { return root(r).height == 1; }

  // index of alpha_r + alpha_s, or 0 when the sum is not a (positive) root
  int root_sum(int r, int s) const { return sum_[(r - 1) * roots_.size() + (s - 1)]; }

  int index_of_label(int i, int j) const; // 0 if absent
  // O(1) variant used by the formula inner loops; 0 if absent
  int label_index(int i, int j) const {
    if (i < 1 || i > rank_ || j < -rank_ || j > dim_) return 0;
    return label_idx_[static_cast<std::size_t>(i - 1) * (dim_ + rank_ + 1) + (j + rank_)];
  }
  // 0 if not a positive root
  int index_of_coords(const std::vector<int>& e) const;
  // {sign, index}: sign = 0 when not a root at all
  std::pair<int, int> signed_index(const std::vector<int>& e) const;

  std::string root_name(int r) const; // "a[i,j]" / "a[i,0]" / "a[i,-j]"

private:
  CartanType type_;
  int rank_, dim_, mat_dim_;
  std::vector<Root> roots_;
  std::map<std::vector<int>, int> coord_index_;
  std::vector<std::int32_t> sum_;
  std::vector<std::int32_t> label_idx_; // [(i-1) * (dim+rank+1) + (j+rank)]
};

using RootSystemPtr = std::shared_ptr<const RootSystem>;

RootSystemPtr build_root_system(CartanType type, int rank);

// -- orderings ---------------------------------------------------------------

Ordering make_ordering(const RootSystem& rs, std::string id, std::vector<int> roots);
Ordering representation_order(const RootSystem& rs);
Ordering height_order(const RootSystem& rs);

bool check_left_additive(const RootSystem& rs, const Ordering& o);
bool check_additive(const RootSystem& rs, const Ordering& o);

std::string format_ordering(const RootSystem& rs, const Ordering& o);

// -- Weyl group --------------------------------------------------------------

WeylElt weyl_identity(const RootSystem& rs);
WeylElt weyl_simple(const RootSystem& rs, int k); // k in 1..rank
// apply u, then v
WeylElt weyl_compose(const WeylElt& u, const WeylElt& v);
WeylElt weyl_inverse(const WeylElt& w);

std::vector<int> weyl_act_coords(const WeylElt& w, const std::vector<int>& e);
// alpha_r * w as {sign, index}
std::pair<int, int> weyl_act(const RootSystem& rs, const WeylElt& w, int r);
// alpha_r * s_beta as {sign, index}
std::pair<int, int> reflect_root(const RootSystem& rs, int r, int beta);
// reflection s_{alpha_r} as a Weyl element
WeylElt root_reflection(const RootSystem& rs, int r);

std::vector<int> inversion_set(const RootSystem& rs, const WeylElt& w); // Phi_w
int weyl_length(const RootSystem& rs, const WeylElt& w);

WeylElt weyl_from_word(const RootSystem& rs, const std::vector<int>& word);
// greedy least-descent reduced word; recomposes to w
std::vector<int> reduced_word(const RootSystem& rs, const WeylElt& w);
WeylElt longest_element(const RootSystem& rs);
std::vector<int> lex_least_w0_word(const RootSystem& rs);

// Additive ordering on Phi_w from a reduced word (rejects non-reduced input).
Ordering papi_ordering(const RootSystem& rs, const std::vector<int>& word);

// Fixed papi ordering of the lex-least w0 word, the collection order for CFO.
Ordering fixed_additive_order(const RootSystem& rs);

// Fixed order restricted to Phi+ \ Phi_w transformed by w, then fixed order
// restricted to Phi_w. The first length(w0) - length(w) positions form the
// complement block.
Ordering separation_ordering(const RootSystem& rs, const WeylElt& w);

} // namespace unipot

#endif
