#ifndef UNIPOT_MATRICES_HPP
#define UNIPOT_MATRICES_HPP

#include <vector>

#include "unipot/rings.hpp"
#include "unipot/rootsystem.hpp"

namespace unipot {

// Dense square matrix over a ring, row-major.
template <Ring R>
struct Mat {
  int n = 0;
  std::vector<typename R::Elem> e;

  Mat() = default;
  Mat(const R& ring, int dim) : n(dim), e(static_cast<std::size_t>(dim) * dim, ring.zero()) {}

  typename R::Elem& at(int r, int c) { return e[static_cast<std::size_t>(r - 1) * n + (c - 1)]; }
  const typename R::Elem& at(int r, int c) const {
    return e[static_cast<std::size_t>(r - 1) * n + (c - 1)];
  }

  static Mat identity(const R& ring, int dim) {
    Mat m(ring, dim);
    for (int i = 1; i <= dim; ++i) m.at(i, i) = ring.one();
    return m;
  }
};

template <Ring R>
bool mat_equal(const R& ring, const Mat<R>& a, const Mat<R>& b) {
  if (a.n != b.n) return false;
  for (std::size_t k = 0; k < a.e.size(); ++k)
    if (!ring.eq(a.e[k], b.e[k])) return false;
  return true;
}

template <Ring R>
Mat<R> mat_mul(const R& ring, const Mat<R>& a, const Mat<R>& b) {
  Mat<R> c(ring, a.n);
  for (int i = 1; i <= a.n; ++i)
    for (int k = 1; k <= a.n; ++k) {
      const auto& aik = a.at(i, k);
      if (ring.is_zero(aik)) continue;
      for (int j = 1; j <= a.n; ++j) {
        if (ring.is_zero(b.at(k, j))) continue;
        c.at(i, j) = ring.add(c.at(i, j), ring.mul(aik, b.at(k, j)));
      }
    }
  return c;
}

// Inverse of a lower unitriangular matrix by forward substitution (ring ops only).
template <Ring R>
Mat<R> unitri_inverse(const R& ring, const Mat<R>& m) {
  Mat<R> x = Mat<R>::identity(ring, m.n);
  // solve m * x = I column by column
  for (int j = 1; j <= m.n; ++j)
    for (int i = j + 1; i <= m.n; ++i) {
      typename R::Elem s = ring.zero();
      for (int k = j; k < i; ++k) {
        if (ring.is_zero(m.at(i, k)) || ring.is_zero(x.at(k, j))) continue;
        s = ring.add(s, ring.mul(m.at(i, k), x.at(k, j)));
      }
      x.at(i, j) = ring.neg(s);
    }
  return x;
}

// One matrix entry of a root-map factor x_r(t) = I + t*A + t^2*B.
struct MapEntry {
  int row, col;
  int coef;
};

// Sparse description of the root map for a positive root.
struct RootMap {
  std::vector<MapEntry> lin;  // A
  std::vector<MapEntry> quad; // B (type B short roots only)
};

inline RootMap root_map(const RootSystem& rs, int r) {
  const Root& rt = rs.root(r);
  const int l = rs.rank();
  const int i = rt.i, j = rt.j;
  RootMap m;
  switch (rs.type()) {
    case CartanType::A:
      m.lin = {{j, i, 1}};
      break;
    case CartanType::B: {
      auto bar = [&](int k) { return 2 * l + 2 - k; };
      const int mid = l + 1;
      if (j > 0) m.lin = {{j, i, 1}, {bar(i), bar(j), -1}};
      else if (j == 0) {
        m.lin = {{mid, i, 2}, {bar(i), mid, -1}};
        m.quad = {{bar(i), i, -1}};
      } else {
        m.lin = {{bar(-j), i, 1}, {bar(i), -j, -1}};
      }
      break;
    }
    case CartanType::C: {
      auto bar = [&](int k) { return 2 * l + 1 - k; };
      if (j > 0) m.lin = {{j, i, 1}, {bar(i), bar(j), -1}};
      else if (-j == i) m.lin = {{bar(i), i, 1}};
      else m.lin = {{bar(-j), i, 1}, {bar(i), -j, 1}};
      break;
    }
    case CartanType::D: {
      auto bar = [&](int k) { return 2 * l + 1 - k; };
      if (j > 0) m.lin = {{j, i, 1}, {bar(i), bar(j), -1}};
      else m.lin = {{bar(-j), i, 1}, {bar(i), -j, -1}};
      break;
    }
  }
  return m;
}

// M := x_r(t) * M
template <Ring R>
void apply_root_factor_left(const R& ring, const RootSystem& rs, int r,
                            const typename R::Elem& t, Mat<R>& m) {
  if (ring.is_zero(t)) return;
  RootMap rm = root_map(rs, r);
  Mat<R> delta(ring, m.n);
  for (const MapEntry& en : rm.lin) {
    typename R::Elem c = ring.mul(t, ring.from_int(en.coef));
    for (int col = 1; col <= m.n; ++col)
      if (!ring.is_zero(m.at(en.col, col)))
        delta.at(en.row, col) = ring.add(delta.at(en.row, col), ring.mul(c, m.at(en.col, col)));
  }
  if (!rm.quad.empty()) {
    typename R::Elem t2 = ring.mul(t, t);
    for (const MapEntry& en : rm.quad) {
      typename R::Elem c = ring.mul(t2, ring.from_int(en.coef));
      for (int col = 1; col <= m.n; ++col)
        if (!ring.is_zero(m.at(en.col, col)))
          delta.at(en.row, col) = ring.add(delta.at(en.row, col), ring.mul(c, m.at(en.col, col)));
    }
  }
  for (std::size_t k = 0; k < m.e.size(); ++k)
    if (!ring.is_zero(delta.e[k])) m.e[k] = ring.add(m.e[k], delta.e[k]);
}

// M := M * x_r(t)
template <Ring R>
void apply_root_factor_right(const R& ring, const RootSystem& rs, int r,
                             const typename R::Elem& t, Mat<R>& m) {
  if (ring.is_zero(t)) return;
  RootMap rm = root_map(rs, r);
  Mat<R> delta(ring, m.n);
  for (const MapEntry& en : rm.lin) {
    typename R::Elem c = ring.mul(t, ring.from_int(en.coef));
    for (int row = 1; row <= m.n; ++row)
      if (!ring.is_zero(m.at(row, en.row)))
        delta.at(row, en.col) = ring.add(delta.at(row, en.col), ring.mul(m.at(row, en.row), c));
  }
  if (!rm.quad.empty()) {
    typename R::Elem t2 = ring.mul(t, t);
    for (const MapEntry& en : rm.quad) {
      typename R::Elem c = ring.mul(t2, ring.from_int(en.coef));
      for (int row = 1; row <= m.n; ++row)
        if (!ring.is_zero(m.at(row, en.row)))
          delta.at(row, en.col) = ring.add(delta.at(row, en.col), ring.mul(m.at(row, en.row), c));
    }
  }
  for (std::size_t k = 0; k < m.e.size(); ++k)
    if (!ring.is_zero(delta.e[k])) m.e[k] = ring.add(m.e[k], delta.e[k]);
}

// Matrix of x_r(t).
template <Ring R>
Mat<R> root_map_matrix(const R& ring, const RootSystem& rs, int r, const typename R::Elem& t) {
  Mat<R> m = Mat<R>::identity(ring, rs.matrix_dim());
  apply_root_factor_left(ring, rs, r, t, m);
  return m;
}

// Gram/symplectic form the embedding preserves: phi^T Q phi = Q.
// A has no form constraint (Q is the identity placeholder, unused).
template <Ring R>
Mat<R> form_matrix(const R& ring, const RootSystem& rs) {
  const int l = rs.rank();
  switch (rs.type()) {
    case CartanType::A:
      return Mat<R>::identity(ring, rs.matrix_dim());
    case CartanType::B: {
      Mat<R> q(ring, 2 * l + 1);
      for (int u = 1; u <= 2 * l + 1; ++u) {
        if (u == l + 1) q.at(u, u) = ring.one();
        else q.at(u, 2 * l + 2 - u) = ring.from_int(2);
      }
      return q;
    }
    case CartanType::C: {
      Mat<R> q(ring, 2 * l);
      for (int u = 1; u <= 2 * l; ++u)
        q.at(u, 2 * l + 1 - u) = ring.from_int(u <= l ? 1 : -1);
      return q;
    }
    case CartanType::D: {
      Mat<R> q(ring, 2 * l);
      for (int u = 1; u <= 2 * l; ++u) q.at(u, 2 * l + 1 - u) = ring.one();
      return q;
    }
  }
  throw std::logic_error("form_matrix: bad type");
}

// phi^T Q phi == Q, exactly.
template <Ring R>
bool preserves_form(const R& ring, const RootSystem& rs, const Mat<R>& m) {
  if (rs.type() == CartanType::A) return true;
  Mat<R> q = form_matrix(ring, rs);
  Mat<R> mt(ring, m.n);
  for (int r = 1; r <= m.n; ++r)
    for (int c = 1; c <= m.n; ++c) mt.at(r, c) = m.at(c, r);
  return mat_equal(ring, mat_mul(ring, mat_mul(ring, mt, q), m), q);
}

template <Ring R>
bool is_lower_unitriangular(const R& ring, const Mat<R>& m) {
  for (int r = 1; r <= m.n; ++r) {
    if (!ring.eq(m.at(r, r), ring.one())) return false;
    for (int c = r + 1; c <= m.n; ++c)
      if (!ring.is_zero(m.at(r, c))) return false;
  }
  return true;
}

} // namespace unipot

#endif
