#ifndef UNIPOT_RINGS_HPP
#define UNIPOT_RINGS_HPP

#include <cstdint>
#include <concepts>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "unipot/common.hpp"

namespace unipot {

// ---------------------------------------------------------------------------
// Operation counting.
//
// Counts are ring-interface calls, the quantity the complexity statements are
// about. Counters are task-local; rings themselves are immutable values.

struct OpCounter {
  std::uint64_t add = 0, neg = 0, mul = 0, eq = 0, inv = 0;

  void reset() { *this = OpCounter{}; }
  std::uint64_t total() const { return add + neg + mul + eq + inv; }

  OpCounter operator-(const OpCounter& o) const {
    return OpCounter{add - o.add, neg - o.neg, mul - o.mul, eq - o.eq, inv - o.inv};
  }
  bool operator==(const OpCounter& o) const = default;
};

// Runs `action` against a freshly reset counter and returns the snapshot.
template <typename F>
OpCounter count_ops(OpCounter& counter, F&& action) {
  counter.reset();
  std::forward<F>(action)();
  return counter;
}

// ---------------------------------------------------------------------------
// Ring concept: commutative unital ring with decidable equality and an
// optional unit-inverse. Elements are plain values; all operations go through
// the (immutable) ring descriptor.

template <typename R>
concept Ring = requires(const R r, const typename R::Elem a, const typename R::Elem b) {
  typename R::Elem;
  { r.zero() } -> std::same_as<typename R::Elem>;
  { r.one() } -> std::same_as<typename R::Elem>;
  { r.from_int(std::int64_t{}) } -> std::same_as<typename R::Elem>;
  { r.add(a, b) } -> std::same_as<typename R::Elem>;
  { r.neg(a) } -> std::same_as<typename R::Elem>;
  { r.mul(a, b) } -> std::same_as<typename R::Elem>;
  { r.eq(a, b) } -> std::same_as<bool>;
  { r.is_zero(a) } -> std::same_as<bool>;
  { r.characteristic() } -> std::same_as<std::uint64_t>;
  { r.format(a) } -> std::same_as<std::string>;
  { r.parse(std::string{}) } -> std::same_as<typename R::Elem>;
};

// ---------------------------------------------------------------------------
// Prime field F_p, p prime < 2^31. Plain 64-bit modular arithmetic; canonical
// residues in [0, p).

bool is_prime_u64(std::uint64_t n);

class Fp {
public:
  using Elem = std::uint64_t;

  explicit Fp(std::uint64_t p) : p_(p) {
    if (p >= (std::uint64_t{1} << 31) || !is_prime_u64(p))
      throw std::invalid_argument("Fp: modulus must be prime and < 2^31");
  }

  std::uint64_t modulus() const { return p_; }
  std::uint64_t characteristic() const { return p_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p_; }
  Elem from_int(std::int64_t x) const {
    std::int64_t m = x % static_cast<std::int64_t>(p_);
    if (m < 0) m += static_cast<std::int64_t>(p_);
    return static_cast<Elem>(m);
  }
  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const { return (a * b) % p_; } // p < 2^31: no overflow
  bool eq(Elem a, Elem b) const { return a == b; }
  bool is_zero(Elem a) const { return a == 0; }
  bool is_unit(Elem a) const { return a != 0; }

  Elem inv(Elem a) const {
    if (a == 0) throw UnsupportedError("Fp: zero is not invertible");
    // extended Euclid on (a, p)
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(p_), newr = static_cast<std::int64_t>(a);
    while (newr != 0) {
      std::int64_t q = r / newr;
      std::int64_t tmp = t - q * newt; t = newt; newt = tmp;
      tmp = r - q * newr; r = newr; newr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p_);
    return static_cast<Elem>(t);
  }

  std::string format(Elem a) const { return std::to_string(a); }
  Elem parse(const std::string& s) const;

private:
  std::uint64_t p_;
};

// Canonical residue of x mod p.
inline Fp::Elem fp_reduce(std::uint64_t p, std::int64_t x) { return Fp(p).from_int(x); }

// ---------------------------------------------------------------------------
// Rationals with arbitrary-precision integers (GMP). Invariants (gcd = 1,
// positive denominator) are maintained by mpq canonicalization.

class Rationals {
public:
  using Elem = mpq_class;

  std::uint64_t characteristic() const { return 0; }

  Elem zero() const { return mpq_class(0); }
  Elem one() const { return mpq_class(1); }
  Elem from_int(std::int64_t x) const {
    mpq_class q;
    q = mpz_class(std::to_string(x));
    return q;
  }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool is_unit(const Elem& a) const { return sgn(a) != 0; }
  Elem inv(const Elem& a) const {
    if (sgn(a) == 0) throw UnsupportedError("Rationals: zero is not invertible");
    return 1 / a;
  }

  std::string format(const Elem& a) const;
  Elem parse(const std::string& s) const;
};

// Reduced fraction n/d with positive denominator; d = 0 is an error.
Rationals::Elem rat_normalize(std::int64_t n, std::int64_t d);

// ---------------------------------------------------------------------------
// Sparse multivariate polynomials over Q, terms kept in graded-lexicographic
// order (total degree first), strictly decreasing, no zero coefficients.

struct SparsePoly {
  // exponent vectors all have the ring's variable count
  std::vector<std::pair<std::vector<std::uint16_t>, mpq_class>> terms;

  bool operator==(const SparsePoly& o) const { return terms == o.terms; }
  bool is_zero() const { return terms.empty(); }
  int total_degree() const; // -1 for the zero polynomial
};

class PolyRing {
public:
  using Elem = SparsePoly;

  explicit PolyRing(int nvars, std::vector<std::string> names = {});

  int nvars() const { return nvars_; }
  const std::vector<std::string>& names() const { return names_; }
  std::uint64_t characteristic() const { return 0; }

  Elem zero() const { return {}; }
  Elem one() const { return constant(mpq_class(1)); }
  Elem from_int(std::int64_t x) const { return constant(mpq_class(mpz_class(std::to_string(x)))); }
  Elem constant(const mpq_class& c) const;
  Elem variable(int i) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  bool is_zero(const Elem& a) const { return a.terms.empty(); }
  bool is_unit(const Elem& a) const {
    return a.terms.size() == 1 && a.total_degree() == 0;
  }
  Elem inv(const Elem& a) const {
    if (!is_unit(a)) throw UnsupportedError("PolyRing: only nonzero constants are units");
    return constant(1 / a.terms[0].second);
  }

  // Substitution: x_i -> values[i] over any ring.
  template <Ring R>
  typename R::Elem eval(const Elem& a, const R& ring,
                        const std::vector<typename R::Elem>& values) const;

  std::string format(const Elem& a) const;
  Elem parse(const std::string& s) const;

private:
  int nvars_;
  std::vector<std::string> names_;
};

// ---------------------------------------------------------------------------
// Instrumented wrapper: delegates bit-exactly to the wrapped ring, counting
// one op per interface call.

template <Ring R>
class Counted {
public:
  using Elem = typename R::Elem;

  Counted(const R& base, OpCounter& counter) : base_(&base), c_(&counter) {}

  const R& base() const { return *base_; }
  OpCounter& counter() const { return *c_; }

  std::uint64_t characteristic() const { return base_->characteristic(); }
  Elem zero() const { return base_->zero(); }
  Elem one() const { return base_->one(); }
  Elem from_int(std::int64_t x) const { return base_->from_int(x); }
  Elem add(const Elem& a, const Elem& b) const { ++c_->add; return base_->add(a, b); }
  Elem neg(const Elem& a) const { ++c_->neg; return base_->neg(a); }
  Elem mul(const Elem& a, const Elem& b) const { ++c_->mul; return base_->mul(a, b); }
  bool eq(const Elem& a, const Elem& b) const { ++c_->eq; return base_->eq(a, b); }
  bool is_zero(const Elem& a) const { return base_->is_zero(a); }
  bool is_unit(const Elem& a) const { return base_->is_unit(a); }
  Elem inv(const Elem& a) const { ++c_->inv; return base_->inv(a); }
  std::string format(const Elem& a) const { return base_->format(a); }
  Elem parse(const std::string& s) const { return base_->parse(s); }

private:
  const R* base_;
  OpCounter* c_;
};

// ---------------------------------------------------------------------------

namespace detail {

// Exact embedding of a multiprecision integer via its decimal digits.
template <Ring R>
typename R::Elem embed_mpz(const R& ring, const mpz_class& n) {
  mpz_class m = n < 0 ? mpz_class(-n) : n;
  typename R::Elem v = ring.zero();
  const typename R::Elem ten = ring.from_int(10);
  for (char ch : m.get_str())
    v = ring.add(ring.mul(v, ten), ring.from_int(ch - '0'));
  return n < 0 ? ring.neg(v) : v;
}

template <Ring R>
typename R::Elem embed_mpq(const R& ring, const mpq_class& q) {
  typename R::Elem v = embed_mpz(ring, q.get_num());
  if (q.get_den() != 1) {
    if constexpr (requires(const R r, typename R::Elem x) { r.inv(x); })
      v = ring.mul(v, ring.inv(embed_mpz(ring, q.get_den())));
    else
      throw UnsupportedError("embed_mpq: target ring has no inverses");
  }
  return v;
}

} // namespace detail

template <Ring R>
typename R::Elem PolyRing::eval(const Elem& a, const R& ring,
                                const std::vector<typename R::Elem>& values) const {
  typename R::Elem acc = ring.zero();
  for (const auto& [exps, coef] : a.terms) {
    typename R::Elem term = detail::embed_mpq(ring, coef);
    for (int i = 0; i < nvars_; ++i)
      for (int e = 0; e < exps[i]; ++e) term = ring.mul(term, values[i]);
    acc = ring.add(acc, term);
  }
  return acc;
}

} // namespace unipot

#endif
