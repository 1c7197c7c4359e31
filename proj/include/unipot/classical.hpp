#ifndef UNIPOT_CLASSICAL_HPP
#define UNIPOT_CLASSICAL_HPP

// Direct multiplication and inversion in the full unipotent subgroup of the
// classical groups, via the recursive coefficient formulas of the minimal
// matrix representations, plus the matrix-embedding route (method D) and the
// sparse single-term peel used for separation.
//
// Coefficient tuples are indexed 1..N by canonical (representation-order) root
// index. Derived quantities a'_{ij}, a'_{i,-j}, a'_{i0}, a''_i follow the
// recursions validated against the factor-product matrix oracle; the formula
// loops perform the same ring operations regardless of input values, so
// instrumented op-counts are input-independent.

#include <optional>
#include <vector>

#include "unipot/matrices.hpp"
#include "unipot/rings.hpp"
#include "unipot/rootsystem.hpp"

namespace unipot {

template <Ring R>
using Tuple = std::vector<typename R::Elem>; // [0] unused, 1..N

template <Ring R>
Tuple<R> zero_tuple(const R& ring, const RootSystem& rs) {
  return Tuple<R>(rs.num_positive() + 1, ring.zero());
}

inline void require_odd_char_for_B(const RootSystem& rs, std::uint64_t characteristic) {
  if (rs.type() == CartanType::B && characteristic == 2)
    throw UnsupportedError("type B formulas need odd characteristic; use type C instead");
}

// Derived (primed) quantities of a coefficient tuple, types B/C/D.
template <Ring R>
struct Derived {
  // indexed [i * (l+1) + j]
  std::vector<typename R::Elem> pos;  // a'_{ij}, i < j <= l
  std::vector<typename R::Elem> neg;  // a'_{i,-j}, i < j <= l
  std::vector<typename R::Elem> zero; // a'_{i0} (B)
  std::vector<typename R::Elem> dbl;  // a''_i
};

template <Ring R>
Derived<R> compute_derived(const R& ring, const RootSystem& rs, const Tuple<R>& a) {
  const int l = rs.rank();
  const CartanType t = rs.type();
  Derived<R> d;
  d.pos.assign((l + 1) * (l + 1), ring.zero());
  d.neg.assign((l + 1) * (l + 1), ring.zero());
  d.dbl.assign(l + 1, ring.zero());
  if (t == CartanType::B) d.zero.assign(l + 1, ring.zero());
  auto ix = [&](int i, int j) { return rs.label_index(i, j); };
  auto P = [&](int i, int j) -> typename R::Elem& { return d.pos[i * (l + 1) + j]; };
  auto Nn = [&](int i, int j) -> typename R::Elem& { return d.neg[i * (l + 1) + j]; };

  // rows descending: row i needs primes of rows > i only
  for (int i = l; i >= 1; --i) {
    for (int j = i + 1; j <= l; ++j) {
      typename R::Elem s = ring.neg(a[ix(i, j)]);
      for (int k = i + 1; k < j; ++k)
        s = ring.add(s, ring.neg(ring.mul(a[ix(i, k)], P(k, j))));
      P(i, j) = s;
    }
    if (t == CartanType::B) {
      typename R::Elem s = ring.neg(a[ix(i, 0)]);
      for (int k = i + 1; k <= l; ++k)
        s = ring.add(s, ring.neg(ring.mul(a[ix(i, k)], d.zero[k])));
      d.zero[i] = s;
    }
    {
      typename R::Elem s = ring.zero();
      if (t == CartanType::B) s = ring.neg(ring.mul(a[ix(i, 0)], a[ix(i, 0)]));
      if (t == CartanType::C) s = a[ix(i, -i)];
      for (int k = i + 1; k <= l; ++k)
        s = ring.add(s, ring.neg(ring.mul(a[ix(i, k)], a[ix(i, -k)])));
      d.dbl[i] = s;
    }
    for (int j = i + 1; j <= l; ++j) {
      typename R::Elem s = t == CartanType::C ? a[ix(i, -j)] : ring.neg(a[ix(i, -j)]);
      for (int k = i + 1; k < j; ++k)
        s = ring.add(s, ring.neg(ring.mul(a[ix(i, k)], Nn(k, j))));
      s = ring.add(s, ring.neg(ring.mul(a[ix(i, j)], d.dbl[j])));
      if (t == CartanType::B)
        s = ring.add(s, ring.neg(ring.mul(ring.from_int(2), ring.mul(a[ix(i, 0)], a[ix(j, 0)]))));
      for (int m = j + 1; m <= l; ++m) {
        s = ring.add(s, ring.neg(ring.mul(a[ix(i, m)], a[ix(j, -m)])));
        if (t == CartanType::C)
          s = ring.add(s, ring.mul(a[ix(i, -m)], a[ix(j, m)]));
        else
          s = ring.add(s, ring.neg(ring.mul(a[ix(i, -m)], a[ix(j, m)])));
      }
      Nn(i, j) = s;
    }
  }
  return d;
}

// phi(a) phi(b) = phi(c)
template <Ring R>
Tuple<R> direct_multiply(const R& ring, const RootSystem& rs, const Tuple<R>& a, const Tuple<R>& b) {
  require_odd_char_for_B(rs, ring.characteristic());
  const int l = rs.rank();
  auto ix = [&](int i, int j) { return rs.label_index(i, j); };
  Tuple<R> c = zero_tuple<R>(ring, rs);

  if (rs.type() == CartanType::A) {
    for (int i = 1; i <= l; ++i)
      for (int j = i + 1; j <= l + 1; ++j) {
        typename R::Elem s = ring.add(a[ix(i, j)], b[ix(i, j)]);
        for (int k = i + 1; k < j; ++k)
          s = ring.add(s, ring.mul(b[ix(i, k)], a[ix(k, j)]));
        c[ix(i, j)] = s;
      }
    return c;
  }

  Derived<R> da = compute_derived(ring, rs, a);
  auto P = [&](int i, int j) { return da.pos[i * (l + 1) + j]; };
  auto Nn = [&](int i, int j) { return da.neg[i * (l + 1) + j]; };

  for (int i = 1; i <= l; ++i) {
    for (int j = i + 1; j <= l; ++j) {
      typename R::Elem s = ring.add(a[ix(i, j)], b[ix(i, j)]);
      for (int k = i + 1; k < j; ++k)
        s = ring.add(s, ring.mul(b[ix(i, k)], a[ix(k, j)]));
      c[ix(i, j)] = s;
    }
    if (rs.type() == CartanType::B) {
      typename R::Elem s = ring.add(a[ix(i, 0)], b[ix(i, 0)]);
      for (int k = i + 1; k <= l; ++k)
        s = ring.add(s, ring.mul(b[ix(i, k)], a[ix(k, 0)]));
      c[ix(i, 0)] = s;
    }
    for (int j = i + 1; j <= l; ++j) {
      typename R::Elem s = ring.add(a[ix(i, -j)], b[ix(i, -j)]);
      for (int k = i + 1; k < j; ++k)
        s = ring.add(s, ring.mul(b[ix(i, k)], a[ix(k, -j)]));
      s = ring.add(s, ring.mul(da.dbl[j], b[ix(i, j)]));
      if (rs.type() == CartanType::B)
        s = ring.add(s, ring.mul(ring.from_int(2), ring.mul(b[ix(i, 0)], da.zero[j])));
      for (int m = j + 1; m <= l; ++m) {
        s = ring.add(s, ring.mul(b[ix(i, m)], Nn(j, m)));
        s = ring.add(s, ring.mul(b[ix(i, -m)], P(j, m)));
      }
      c[ix(i, -j)] = s;
    }
  }
  if (rs.type() == CartanType::C) {
    // c_{i,-i} needs b''_i and the already-computed row-i entries of c
    for (int i = 1; i <= l; ++i) {
      typename R::Elem bdd = b[ix(i, -i)];
      for (int k = i + 1; k <= l; ++k)
        bdd = ring.add(bdd, ring.neg(ring.mul(b[ix(i, k)], b[ix(i, -k)])));
      typename R::Elem s = ring.add(da.dbl[i], bdd);
      for (int k = i + 1; k <= l; ++k)
        s = ring.add(s, ring.mul(c[ix(i, k)], c[ix(i, -k)]));
      for (int m = i + 1; m <= l; ++m) {
        s = ring.add(s, ring.mul(b[ix(i, m)], Nn(i, m)));
        s = ring.add(s, ring.mul(b[ix(i, -m)], P(i, m)));
      }
      c[ix(i, -i)] = s;
    }
  }
  return c;
}

// phi(a) phi(d) = I
template <Ring R>
Tuple<R> direct_invert(const R& ring, const RootSystem& rs, const Tuple<R>& a) {
  require_odd_char_for_B(rs, ring.characteristic());
  const int l = rs.rank();
  auto ix = [&](int i, int j) { return rs.label_index(i, j); };
  Tuple<R> d = zero_tuple<R>(ring, rs);

  if (rs.type() == CartanType::A) {
    for (int i = 1; i <= l; ++i)
      for (int j = i + 1; j <= l + 1; ++j) {
        typename R::Elem s = ring.neg(a[ix(i, j)]);
        for (int k = i + 1; k < j; ++k)
          s = ring.add(s, ring.neg(ring.mul(d[ix(i, k)], a[ix(k, j)])));
        d[ix(i, j)] = s;
      }
    return d;
  }

  Derived<R> da = compute_derived(ring, rs, a);
  auto P = [&](int i, int j) { return da.pos[i * (l + 1) + j]; };
  auto Nn = [&](int i, int j) { return da.neg[i * (l + 1) + j]; };

  // forward representation order within each row: d_{ij} asc j, d_{i0},
  // d_{i,-m} for m desc, then (C) d_{i,-i} last
  for (int i = 1; i <= l; ++i) {
    for (int j = i + 1; j <= l; ++j) {
      typename R::Elem s = ring.neg(a[ix(i, j)]);
      for (int k = i + 1; k < j; ++k)
        s = ring.add(s, ring.neg(ring.mul(d[ix(i, k)], a[ix(k, j)])));
      d[ix(i, j)] = s;
    }
    if (rs.type() == CartanType::B) {
      typename R::Elem s = ring.neg(a[ix(i, 0)]);
      for (int k = i + 1; k <= l; ++k)
        s = ring.add(s, ring.neg(ring.mul(d[ix(i, k)], a[ix(k, 0)])));
      d[ix(i, 0)] = s;
    }
    for (int j = l; j > i; --j) {
      typename R::Elem s = ring.neg(a[ix(i, -j)]);
      for (int k = i + 1; k < j; ++k)
        s = ring.add(s, ring.neg(ring.mul(d[ix(i, k)], a[ix(k, -j)])));
      s = ring.add(s, ring.neg(ring.mul(da.dbl[j], d[ix(i, j)])));
      if (rs.type() == CartanType::B)
        s = ring.add(s, ring.neg(ring.mul(ring.from_int(2), ring.mul(d[ix(i, 0)], da.zero[j]))));
      for (int m = j + 1; m <= l; ++m) {
        s = ring.add(s, ring.neg(ring.mul(d[ix(i, m)], Nn(j, m))));
        s = ring.add(s, ring.neg(ring.mul(d[ix(i, -m)], P(j, m))));
      }
      d[ix(i, -j)] = s;
    }
    if (rs.type() == CartanType::C) {
      typename R::Elem s = ring.neg(da.dbl[i]);
      for (int k = i + 1; k <= l; ++k)
        s = ring.add(s, ring.mul(d[ix(i, k)], d[ix(i, -k)]));
      for (int m = i + 1; m <= l; ++m) {
        s = ring.add(s, ring.neg(ring.mul(d[ix(i, m)], Nn(i, m))));
        s = ring.add(s, ring.neg(ring.mul(d[ix(i, -m)], P(i, m))));
      }
      d[ix(i, -i)] = s;
    }
  }
  return d;
}

// Full embedding with primed entries, via the recursions.
template <Ring R>
Mat<R> embed_matrix(const R& ring, const RootSystem& rs, const Tuple<R>& a) {
  require_odd_char_for_B(rs, ring.characteristic());
  const int l = rs.rank();
  auto ix = [&](int i, int j) { return rs.label_index(i, j); };
  Mat<R> m = Mat<R>::identity(ring, rs.matrix_dim());

  if (rs.type() == CartanType::A) {
    for (int i = 1; i <= l; ++i)
      for (int j = i + 1; j <= l + 1; ++j) m.at(j, i) = a[ix(i, j)];
    return m;
  }

  Derived<R> da = compute_derived(ring, rs, a);
  const int bar0 = rs.type() == CartanType::B ? 2 * l + 2 : 2 * l + 1;
  auto bar = [&](int k) { return bar0 - k; };
  for (int i = 1; i <= l; ++i) {
    for (int j = i + 1; j <= l; ++j) {
      m.at(j, i) = a[ix(i, j)];
      m.at(bar(j), i) = a[ix(i, -j)];
      m.at(bar(i), bar(j)) = da.pos[i * (l + 1) + j];
      m.at(bar(i), j) = da.neg[i * (l + 1) + j];
    }
    m.at(bar(i), i) = da.dbl[i];
    if (rs.type() == CartanType::B) {
      m.at(l + 1, i) = ring.mul(ring.from_int(2), a[ix(i, 0)]);
      m.at(bar(i), l + 1) = da.zero[i];
    }
  }
  return m;
}

// The oracle: the product of the root-map factors in representation order.
template <Ring R>
Mat<R> embed_by_factors(const R& ring, const RootSystem& rs, const Tuple<R>& a) {
  Mat<R> m = Mat<R>::identity(ring, rs.matrix_dim());
  for (int r = 1; r <= rs.num_positive(); ++r)
    apply_root_factor_right(ring, rs, r, a[r], m);
  return m;
}

// Unprimed entries only (plus b''_i in type C) -- the right operand of
// method D.
template <Ring R>
Mat<R> embed_significant(const R& ring, const RootSystem& rs, const Tuple<R>& b) {
  const int l = rs.rank();
  auto ix = [&](int i, int j) { return rs.label_index(i, j); };
  Mat<R> m = Mat<R>::identity(ring, rs.matrix_dim());
  if (rs.type() == CartanType::A) {
    for (int i = 1; i <= l; ++i)
      for (int j = i + 1; j <= l + 1; ++j) m.at(j, i) = b[ix(i, j)];
    return m;
  }
  const int bar0 = rs.type() == CartanType::B ? 2 * l + 2 : 2 * l + 1;
  auto bar = [&](int k) { return bar0 - k; };
  for (int i = 1; i <= l; ++i) {
    for (int j = i + 1; j <= l; ++j) {
      m.at(j, i) = b[ix(i, j)];
      m.at(bar(j), i) = b[ix(i, -j)];
    }
    if (rs.type() == CartanType::B)
      m.at(l + 1, i) = ring.mul(ring.from_int(2), b[ix(i, 0)]);
    if (rs.type() == CartanType::C) {
      typename R::Elem s = b[ix(i, -i)];
      for (int k = i + 1; k <= l; ++k)
        s = ring.add(s, ring.neg(ring.mul(b[ix(i, k)], b[ix(i, -k)])));
      m.at(bar(i), i) = s;
    }
  }
  return m;
}

// Read the coefficient tuple back off a matrix in the image of embed_matrix.
template <Ring R>
Tuple<R> extract_coeffs(const R& ring, const RootSystem& rs, const Mat<R>& m,
                        bool validate = false) {
  require_odd_char_for_B(rs, ring.characteristic());
  const int l = rs.rank();
  auto ix = [&](int i, int j) { return rs.label_index(i, j); };
  Tuple<R> a = zero_tuple<R>(ring, rs);
  if (rs.type() == CartanType::A) {
    for (int i = 1; i <= l; ++i)
      for (int j = i + 1; j <= l + 1; ++j) a[ix(i, j)] = m.at(j, i);
  } else {
    const int bar0 = rs.type() == CartanType::B ? 2 * l + 2 : 2 * l + 1;
    auto bar = [&](int k) { return bar0 - k; };
    std::optional<typename R::Elem> half;
    if (rs.type() == CartanType::B) half = ring.inv(ring.from_int(2));
    for (int i = 1; i <= l; ++i) {
      for (int j = i + 1; j <= l; ++j) {
        a[ix(i, j)] = m.at(j, i);
        a[ix(i, -j)] = m.at(bar(j), i);
      }
      if (rs.type() == CartanType::B) a[ix(i, 0)] = ring.mul(m.at(l + 1, i), *half);
      if (rs.type() == CartanType::C) {
        typename R::Elem s = m.at(bar(i), i);
        for (int k = i + 1; k <= l; ++k)
          s = ring.add(s, ring.mul(a[ix(i, k)], a[ix(i, -k)]));
        a[ix(i, -i)] = s;
      }
    }
  }
  if (validate) {
    if (!is_lower_unitriangular(ring, m) || !preserves_form(ring, rs, m) ||
        !mat_equal(ring, embed_matrix(ring, rs, a), m))
      throw std::invalid_argument("extract_coeffs: matrix is not in the image of the embedding");
  }
  return a;
}

// Method D: embed, matrix-multiply, read back.
template <Ring R>
Tuple<R> matrix_method_multiply(const R& ring, const RootSystem& rs, const Tuple<R>& a,
                                const Tuple<R>& b) {
  Mat<R> prod = mat_mul(ring, embed_matrix(ring, rs, a), embed_significant(ring, rs, b));
  return extract_coeffs(ring, rs, prod);
}

template <Ring R>
Tuple<R> matrix_method_invert(const R& ring, const RootSystem& rs, const Tuple<R>& a) {
  return extract_coeffs(ring, rs, unitri_inverse(ring, embed_matrix(ring, rs, a)));
}

// v := x_alpha(t) * v, touching only the affected entries. Cost is
// O(row(alpha)) ring operations; summed over a whole separation ordering this
// is the O(N * rank) Weyl-separation bound.
template <Ring R>
void peel_apply_left(const R& ring, const RootSystem& rs, int alpha, const typename R::Elem& t,
                     Tuple<R>& v) {
  require_odd_char_for_B(rs, ring.characteristic());
  if (ring.is_zero(t)) return;
  const int l = rs.rank();
  auto ix = [&](int i, int j) { return rs.label_index(i, j); };
  const Root& rt = rs.root(alpha);
  const int p = rt.i, q = rt.j;
  const CartanType ct = rs.type();

  if (ct == CartanType::A) {
    for (int i = 1; i < p; ++i)
      v[ix(i, q)] = ring.add(v[ix(i, q)], ring.mul(t, v[ix(i, p)]));
    v[ix(p, q)] = ring.add(v[ix(p, q)], t);
    return;
  }
  if (q > 0) { // alpha = e_p - e_q: a'_{pq} = -t is the only prime
    for (int i = 1; i < p; ++i) {
      v[ix(i, q)] = ring.add(v[ix(i, q)], ring.mul(t, v[ix(i, p)]));
      v[ix(i, -p)] = ring.add(v[ix(i, -p)], ring.neg(ring.mul(t, v[ix(i, -q)])));
      // type C: the c_{i,-i} corrections cancel exactly
    }
    v[ix(p, q)] = ring.add(v[ix(p, q)], t);
    return;
  }
  if (ct == CartanType::B && q == 0) { // alpha = e_p: a'_{p0} = -t, a''_p = -t^2
    typename R::Elem t2 = ring.mul(t, t);
    for (int i = 1; i < p; ++i) {
      typename R::Elem old_i0 = v[ix(i, 0)];
      v[ix(i, 0)] = ring.add(old_i0, ring.mul(t, v[ix(i, p)]));
      typename R::Elem delta = ring.neg(ring.mul(t2, v[ix(i, p)]));
      delta = ring.add(delta, ring.neg(ring.mul(ring.from_int(2), ring.mul(t, old_i0))));
      v[ix(i, -p)] = ring.add(v[ix(i, -p)], delta);
    }
    v[ix(p, 0)] = ring.add(v[ix(p, 0)], t);
    return;
  }
  if (ct == CartanType::C && q == -p) { // alpha = 2e_p
    for (int i = 1; i < p; ++i) {
      v[ix(i, -i)] = ring.add(v[ix(i, -i)], ring.mul(t, ring.mul(v[ix(i, p)], v[ix(i, p)])));
      v[ix(i, -p)] = ring.add(v[ix(i, -p)], ring.mul(t, v[ix(i, p)]));
    }
    v[ix(p, -p)] = ring.add(v[ix(p, -p)], t);
    return;
  }
  // alpha = e_p + e_Q, Q = -q > p
  const int Q = -q;
  if (ct == CartanType::C) {
    for (int i = 1; i < p; ++i) {
      v[ix(i, -i)] = ring.add(v[ix(i, -i)], ring.mul(ring.from_int(2),
                                                     ring.mul(t, ring.mul(v[ix(i, p)], v[ix(i, Q)]))));
      v[ix(i, -Q)] = ring.add(v[ix(i, -Q)], ring.mul(t, v[ix(i, p)]));
      v[ix(i, -p)] = ring.add(v[ix(i, -p)], ring.mul(t, v[ix(i, Q)]));
    }
    v[ix(p, -p)] = ring.add(v[ix(p, -p)], ring.mul(ring.from_int(2), ring.mul(t, v[ix(p, Q)])));
    v[ix(p, -Q)] = ring.add(v[ix(p, -Q)], t);
  } else { // B and D
    for (int i = 1; i < p; ++i) {
      v[ix(i, -Q)] = ring.add(v[ix(i, -Q)], ring.mul(t, v[ix(i, p)]));
      v[ix(i, -p)] = ring.add(v[ix(i, -p)], ring.neg(ring.mul(t, v[ix(i, Q)])));
    }
    v[ix(p, -Q)] = ring.add(v[ix(p, -Q)], t);
  }
}

} // namespace unipot

#endif
