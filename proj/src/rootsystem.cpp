#include "unipot/rootsystem.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace unipot {

CartanType cartan_type_from_char(char c) {
  switch (c) {
    case 'A': case 'a': return CartanType::A;
    case 'B': case 'b': return CartanType::B;
    case 'C': case 'c': return CartanType::C;
    case 'D': case 'd': return CartanType::D;
  }
  throw std::invalid_argument("unknown Cartan type");
}

bool WeylElt::is_identity() const {
  for (std::size_t k = 0; k < img.size(); ++k)
    if (img[k] != static_cast<int>(k) + 1) return false;
  return true;
}

namespace {

// simple-root coefficients from e-coordinates, per type
std::vector<int> simple_coeffs(CartanType t, int rank, const std::vector<int>& v) {
  std::vector<int> c(rank, 0);
  std::vector<int> prefix(v.size() + 1, 0);
  for (std::size_t m = 0; m < v.size(); ++m) prefix[m + 1] = prefix[m] + v[m];
  switch (t) {
    case CartanType::A:
      for (int k = 1; k <= rank; ++k) c[k - 1] = prefix[k];
      break;
    case CartanType::B:
      for (int k = 1; k <= rank; ++k) c[k - 1] = prefix[k];
      break;
    case CartanType::C: {
      for (int k = 1; k < rank; ++k) c[k - 1] = prefix[k];
      int num = v[rank - 1] + (rank >= 2 ? c[rank - 2] : 0);
      if (num % 2 != 0) throw std::logic_error("C: non-integral simple coefficient");
      c[rank - 1] = num / 2;
      break;
    }
    case CartanType::D: {
      for (int k = 1; k <= rank - 2; ++k) c[k - 1] = prefix[k];
      int p = rank >= 2 ? prefix[rank - 2] : 0;
      int s1 = p + v[rank - 2] - v[rank - 1];
      int s2 = p + v[rank - 2] + v[rank - 1];
      if (s1 % 2 != 0 || s2 % 2 != 0) throw std::logic_error("D: non-integral simple coefficient");
      c[rank - 2] = s1 / 2;
      c[rank - 1] = s2 / 2;
      break;
    }
  }
  return c;
}

std::vector<int> coords_of_label(CartanType t, int dim, int i, int j) {
  std::vector<int> e(dim, 0);
  (void)t;
  if (j > 0) {          // e_i - e_j
    e[i - 1] += 1;
    e[j - 1] -= 1;
  } else if (j == 0) {  // e_i
    e[i - 1] += 1;
  } else {              // e_i + e_{-j} (j = -i gives 2e_i)
    e[i - 1] += 1;
    e[-j - 1] += 1;
  }
  return e;
}

} // namespace

RootSystem::RootSystem(CartanType type, int rank) : type_(type), rank_(rank) {
  if (rank < 1) throw std::invalid_argument("root system: rank must be >= 1");
  if (type == CartanType::D && rank < 2)
    throw std::invalid_argument("root system: type D requires rank >= 2");
  dim_ = type == CartanType::A ? rank + 1 : rank;
  switch (type) {
    case CartanType::A: mat_dim_ = rank + 1; break;
    case CartanType::B: mat_dim_ = 2 * rank + 1; break;
    case CartanType::C: mat_dim_ = 2 * rank; break;
    case CartanType::D: mat_dim_ = 2 * rank; break;
  }

  // representation order: rows i ascending, columns per the type's J-sequence
  for (int i = 1; i <= (type == CartanType::A ? rank : rank); ++i) {
    std::vector<int> cols;
    if (type == CartanType::A) {
      for (int j = i + 1; j <= rank + 1; ++j) cols.push_back(j);
    } else {
      for (int j = i + 1; j <= rank; ++j) cols.push_back(j);
      if (type == CartanType::B) cols.push_back(0);
      for (int j = rank; j >= i + 1; --j) cols.push_back(-j);
      if (type == CartanType::C) cols.push_back(-i);
    }
    for (int j : cols) {
      Root r;
      r.i = i;
      r.j = j;
      r.e = coords_of_label(type, dim_, i, j);
      r.simple = simple_coeffs(type, rank, r.e);
      r.height = std::accumulate(r.simple.begin(), r.simple.end(), 0);
      if (r.height <= 0) throw std::logic_error("root with nonpositive height");
      roots_.push_back(std::move(r));
    }
  }

  const int n = static_cast<int>(roots_.size());
  label_idx_.assign(static_cast<std::size_t>(rank_) * (dim_ + rank_ + 1), 0);
  for (int r = 0; r < n; ++r) {
    auto [it, fresh] = coord_index_.insert({roots_[r].e, r + 1});
    if (!fresh) throw std::logic_error("duplicate root coordinates");
    label_idx_[static_cast<std::size_t>(roots_[r].i - 1) * (dim_ + rank_ + 1) +
               (roots_[r].j + rank_)] = r + 1;
  }

  sum_.assign(static_cast<std::size_t>(n) * n, 0);
  std::vector<int> e(dim_);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      if (r == s) continue;
      for (int k = 0; k < dim_; ++k) e[k] = roots_[r].e[k] + roots_[s].e[k];
      auto it = coord_index_.find(e);
      if (it != coord_index_.end()) sum_[static_cast<std::size_t>(r) * n + s] = it->second;
    }
}

int RootSystem::index_of_label(int i, int j) const { return label_index(i, j); }

int RootSystem::index_of_coords(const std::vector<int>& e) const {
  auto it = coord_index_.find(e);
  return it == coord_index_.end() ? 0 : it->second;
}

std::pair<int, int> RootSystem::signed_index(const std::vector<int>& e) const {
  auto it = coord_index_.find(e);
  if (it != coord_index_.end()) return {1, it->second};
  std::vector<int> m(e.size());
  for (std::size_t k = 0; k < e.size(); ++k) m[k] = -e[k];
  it = coord_index_.find(m);
  if (it != coord_index_.end()) return {-1, it->second};
  return {0, 0};
}

std::string RootSystem::root_name(int r) const {
  const Root& rt = root(r);
  return "a[" + std::to_string(rt.i) + "," + std::to_string(rt.j) + "]";
}

RootSystemPtr build_root_system(CartanType type, int rank) {
  return std::make_shared<RootSystem>(type, rank);
}

// -- orderings ---------------------------------------------------------------

Ordering make_ordering(const RootSystem& rs, std::string id, std::vector<int> roots) {
  Ordering o;
  o.id = std::move(id);
  o.roots = std::move(roots);
  o.pos.assign(rs.num_positive() + 1, -1);
  for (int p = 0; p < o.size(); ++p) {
    int r = o.roots[p];
    if (r < 1 || r > rs.num_positive() || o.pos[r] >= 0)
      throw std::invalid_argument("ordering: not a sequence of distinct roots");
    o.pos[r] = p;
  }
  return o;
}

Ordering representation_order(const RootSystem& rs) {
  std::vector<int> roots(rs.num_positive());
  std::iota(roots.begin(), roots.end(), 1);
  return make_ordering(rs, "rep", std::move(roots));
}

Ordering height_order(const RootSystem& rs) {
  std::vector<int> roots(rs.num_positive());
  std::iota(roots.begin(), roots.end(), 1);
  std::stable_sort(roots.begin(), roots.end(),
                   [&](int a, int b) { return rs.height(a) < rs.height(b); });
  return make_ordering(rs, "height", std::move(roots));
}

bool check_left_additive(const RootSystem& rs, const Ordering& o) {
  for (int r : o.roots)
    for (int s : o.roots) {
      if (r == s) continue;
      int t = rs.root_sum(r, s);
      if (t == 0 || !o.contains(t)) continue;
      if (o.position_of(t) <= o.position_of(r) || o.position_of(t) <= o.position_of(s))
        return false;
    }
  return true;
}

bool check_additive(const RootSystem& rs, const Ordering& o) {
  for (int r : o.roots)
    for (int s : o.roots) {
      if (r == s) continue;
      int t = rs.root_sum(r, s);
      if (t == 0 || !o.contains(t)) continue;
      int pr = o.position_of(r), ps = o.position_of(s), pt = o.position_of(t);
      int lo = std::min(pr, ps), hi = std::max(pr, ps);
      if (!(lo < pt && pt < hi)) return false;
    }
  return true;
}

std::string format_ordering(const RootSystem& rs, const Ordering& o) {
  std::string out;
  for (int p = 0; p < o.size(); ++p) {
    if (p) out += ",";
    out += rs.root_name(o.root_at(p));
  }
  return out;
}

// -- Weyl group --------------------------------------------------------------

WeylElt weyl_identity(const RootSystem& rs) {
  WeylElt w;
  w.img.resize(rs.dim());
  std::iota(w.img.begin(), w.img.end(), 1);
  return w;
}

WeylElt weyl_simple(const RootSystem& rs, int k) {
  if (k < 1 || k > rs.rank()) throw std::invalid_argument("weyl_simple: bad index");
  WeylElt w = weyl_identity(rs);
  const int l = rs.rank();
  switch (rs.type()) {
    case CartanType::A:
      std::swap(w.img[k - 1], w.img[k]);
      break;
    case CartanType::B:
    case CartanType::C:
      if (k < l) std::swap(w.img[k - 1], w.img[k]);
      else w.img[l - 1] = -l;
      break;
    case CartanType::D:
      if (k < l) {
        std::swap(w.img[k - 1], w.img[k]);
      } else {
        w.img[l - 2] = -l;
        w.img[l - 1] = -(l - 1);
      }
      break;
  }
  return w;
}

WeylElt weyl_compose(const WeylElt& u, const WeylElt& v) {
  WeylElt w;
  w.img.resize(u.img.size());
  for (std::size_t k = 0; k < u.img.size(); ++k) {
    int m = u.img[k];
    int t = v.img[std::abs(m) - 1];
    w.img[k] = m < 0 ? -t : t;
  }
  return w;
}

WeylElt weyl_inverse(const WeylElt& w) {
  WeylElt r;
  r.img.resize(w.img.size());
  for (std::size_t k = 0; k < w.img.size(); ++k) {
    int m = w.img[k];
    r.img[std::abs(m) - 1] = m < 0 ? -(static_cast<int>(k) + 1) : static_cast<int>(k) + 1;
  }
  return r;
}

std::vector<int> weyl_act_coords(const WeylElt& w, const std::vector<int>& e) {
  std::vector<int> r(e.size(), 0);
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) continue;
    int m = w.img[k];
    r[std::abs(m) - 1] += m < 0 ? -e[k] : e[k];
  }
  return r;
}

std::pair<int, int> weyl_act(const RootSystem& rs, const WeylElt& w, int r) {
  auto si = rs.signed_index(weyl_act_coords(w, rs.root(r).e));
  if (si.first == 0) throw std::logic_error("weyl_act: image is not a root");
  return si;
}

WeylElt root_reflection(const RootSystem& rs, int r) {
  const std::vector<int>& b = rs.root(r).e;
  long bb = 0;
  for (int v : b) bb += static_cast<long>(v) * v;
  WeylElt w;
  w.img.resize(rs.dim());
  std::vector<int> e(rs.dim(), 0);
  for (int k = 0; k < rs.dim(); ++k) {
    std::fill(e.begin(), e.end(), 0);
    e[k] = 1;
    long num = 2L * b[k]; // 2 (e_k, b)
    if ((num % bb) != 0) throw std::logic_error("root_reflection: non-integral Cartan pairing");
    long c = num / bb;
    std::vector<int> img = e;
    for (int m = 0; m < rs.dim(); ++m) img[m] -= static_cast<int>(c) * b[m];
    int target = 0, sign = 0;
    for (int m = 0; m < rs.dim(); ++m) {
      if (img[m] == 0) continue;
      if (target != 0) throw std::logic_error("root_reflection: basis image not a signed basis vector");
      target = m + 1;
      sign = img[m];
    }
    if (std::abs(sign) != 1) throw std::logic_error("root_reflection: bad basis image");
    w.img[k] = sign * target;
  }
  return w;
}

std::pair<int, int> reflect_root(const RootSystem& rs, int r, int beta) {
  return weyl_act(rs, root_reflection(rs, beta), r);
}

std::vector<int> inversion_set(const RootSystem& rs, const WeylElt& w) {
  WeylElt wi = weyl_inverse(w);
  std::vector<int> out;
  for (int r = 1; r <= rs.num_positive(); ++r)
    if (weyl_act(rs, wi, r).first < 0) out.push_back(r);
  return out;
}

int weyl_length(const RootSystem& rs, const WeylElt& w) {
  return static_cast<int>(inversion_set(rs, w).size());
}

WeylElt weyl_from_word(const RootSystem& rs, const std::vector<int>& word) {
  WeylElt w = weyl_identity(rs);
  for (int k : word) w = weyl_compose(w, weyl_simple(rs, k));
  return w;
}

namespace {

std::vector<int> simple_root_coords(const RootSystem& rs, int k) {
  std::vector<int> e(rs.dim(), 0);
  const int l = rs.rank();
  switch (rs.type()) {
    case CartanType::A: e[k - 1] = 1; e[k] = -1; break;
    case CartanType::B:
      if (k < l) { e[k - 1] = 1; e[k] = -1; } else e[l - 1] = 1;
      break;
    case CartanType::C:
      if (k < l) { e[k - 1] = 1; e[k] = -1; } else e[l - 1] = 2;
      break;
    case CartanType::D:
      if (k < l) { e[k - 1] = 1; e[k] = -1; } else { e[l - 2] = 1; e[l - 1] = 1; }
      break;
  }
  return e;
}

int simple_root_index(const RootSystem& rs, int k) {
  int idx = rs.index_of_coords(simple_root_coords(rs, k));
  if (idx == 0) throw std::logic_error("simple_root_index: missing simple root");
  return idx;
}

// alpha_k * w negative <=> stripping s_k from the front shortens w
bool strip_descent(const RootSystem& rs, const WeylElt& w, int k) {
  std::vector<int> img = weyl_act_coords(w, simple_root_coords(rs, k));
  for (int v : img) {
    if (v > 0) return false;
    if (v < 0) return true;
  }
  throw std::logic_error("strip_descent: zero image");
}

} // namespace

std::vector<int> reduced_word(const RootSystem& rs, const WeylElt& w) {
  std::vector<int> word;
  WeylElt cur = w;
  while (!cur.is_identity()) {
    int k = 0;
    for (int c = 1; c <= rs.rank(); ++c)
      if (strip_descent(rs, cur, c)) { k = c; break; }
    if (k == 0) throw std::logic_error("reduced_word: no descent on non-identity element");
    word.push_back(k);
    cur = weyl_compose(weyl_simple(rs, k), cur);
  }
  return word;
}

WeylElt longest_element(const RootSystem& rs) {
  WeylElt w = weyl_identity(rs);
  const int l = rs.rank();
  switch (rs.type()) {
    case CartanType::A:
      for (int k = 1; k <= l + 1; ++k) w.img[k - 1] = l + 2 - k;
      break;
    case CartanType::B:
    case CartanType::C:
      for (int k = 1; k <= l; ++k) w.img[k - 1] = -k;
      break;
    case CartanType::D:
      for (int k = 1; k <= l; ++k) w.img[k - 1] = -k;
      if (l % 2 != 0) w.img[l - 1] = l;
      break;
  }
  // w0 is the unique element sending every positive root negative
  WeylElt wi = weyl_inverse(w);
  for (int r = 1; r <= rs.num_positive(); ++r)
    if (weyl_act(rs, wi, r).first >= 0) throw std::logic_error("longest_element: not w0");
  return w;
}

std::vector<int> lex_least_w0_word(const RootSystem& rs) {
  return reduced_word(rs, longest_element(rs));
}

Ordering papi_ordering(const RootSystem& rs, const std::vector<int>& word) {
  WeylElt w = weyl_from_word(rs, word);
  if (weyl_length(rs, w) != static_cast<int>(word.size()))
    throw std::invalid_argument("papi_ordering: word is not reduced");
  const int m = static_cast<int>(word.size());
  std::vector<int> roots(m);
  WeylElt suffix = weyl_identity(rs);
  for (int k = m; k >= 1; --k) {
    // gamma_k = alpha_{word[k-1]} * s_{word[k]} ... s_{word[m-1]}
    auto [sg, idx] = weyl_act(rs, suffix, simple_root_index(rs, word[k - 1]));
    if (sg <= 0) throw std::logic_error("papi_ordering: non-positive papi root");
    roots[k - 1] = idx;
    suffix = weyl_compose(weyl_simple(rs, word[k - 1]), suffix);
  }
  std::string id = "papi:";
  for (std::size_t t = 0; t < word.size(); ++t) {
    if (t) id += ".";
    id += std::to_string(word[t]);
  }
  return make_ordering(rs, std::move(id), std::move(roots));
}

Ordering fixed_additive_order(const RootSystem& rs) {
  // Reversal of an additive ordering is additive; the reversed orientation of
  // the lex-least w0 papi sequence is the one whose Hall polynomial degrees
  // stay bounded (2/4/3/3 for A/B/C/D) under collection from the outside.
  Ordering o = papi_ordering(rs, lex_least_w0_word(rs));
  std::reverse(o.roots.begin(), o.roots.end());
  return make_ordering(rs, "cfo", std::move(o.roots));
}

Ordering separation_ordering(const RootSystem& rs, const WeylElt& w) {
  // Reversed papi ordering of a reduced w0-word chosen so that, after the
  // reversal, the trailing length(w) positions are exactly Phi_w and the
  // leading block its complement; the whole sequence is additive, and for
  // w = id or w = w0 it is the fixed collection ordering.
  WeylElt w0 = longest_element(rs);
  WeylElt v = weyl_compose(w0, w);                                   // Phi_v = complement of Phi_w
  WeylElt q = weyl_compose(w0, weyl_compose(weyl_inverse(w), w0));   // q v = w0, length m
  std::vector<int> word = reduced_word(rs, q);
  std::vector<int> tail = reduced_word(rs, v);
  const std::size_t m = word.size();
  word.insert(word.end(), tail.begin(), tail.end());
  Ordering o = papi_ordering(rs, word);
  std::reverse(o.roots.begin(), o.roots.end());

  std::vector<char> in_inv(rs.num_positive() + 1, 0);
  for (int r : inversion_set(rs, w)) in_inv[r] = 1;
  if (m != static_cast<std::size_t>(weyl_length(rs, w)))
    throw std::logic_error("separation_ordering: block length mismatch");
  for (int p = o.size() - static_cast<int>(m); p < o.size(); ++p)
    if (!in_inv[o.root_at(p)])
      throw std::logic_error("separation_ordering: trailing block is not Phi_w");

  std::string id = "sep:";
  for (std::size_t k = 0; k < w.img.size(); ++k) {
    if (k) id += ".";
    id += std::to_string(w.img[k]);
  }
  return make_ordering(rs, std::move(id), std::move(o.roots));
}

} // namespace unipot
