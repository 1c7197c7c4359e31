#include "unipot/rings.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace unipot {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  // deterministic Miller-Rabin for n < 3.2e18 with these bases
  auto mulmod = [](unsigned __int128 a, unsigned __int128 b, std::uint64_t m) {
    return static_cast<std::uint64_t>(a * b % m);
  };
  auto powmod = [&](std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    b %= m;
    while (e) {
      if (e & 1) r = mulmod(r, b, m);
      b = mulmod(b, b, m);
      e >>= 1;
    }
    return r;
  };
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

Fp::Elem Fp::parse(const std::string& s) const {
  if (s.empty()) throw std::invalid_argument("Fp::parse: empty literal");
  std::size_t pos = 0;
  bool negv = s[0] == '-';
  if (negv) pos = 1;
  if (pos >= s.size()) throw std::invalid_argument("Fp::parse: bad literal '" + s + "'");
  Elem v = 0;
  for (; pos < s.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(s[pos])))
      throw std::invalid_argument("Fp::parse: bad literal '" + s + "'");
    v = (v * 10 + static_cast<Elem>(s[pos] - '0')) % p_;
  }
  return negv ? neg(v) : v;
}

std::string Rationals::format(const Elem& a) const {
  if (a.get_den() == 1) return a.get_num().get_str();
  return a.get_num().get_str() + "/" + a.get_den().get_str();
}

Rationals::Elem Rationals::parse(const std::string& s) const {
  if (s.empty()) throw std::invalid_argument("Rationals::parse: empty literal");
  try {
    mpq_class q(s, 10);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("Rationals::parse: bad literal '" + s + "'");
  }
}

Rationals::Elem rat_normalize(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::invalid_argument("rat_normalize: zero denominator");
  mpq_class q(mpz_class(std::to_string(n)), mpz_class(std::to_string(d)));
  q.canonicalize();
  return q;
}

int SparsePoly::total_degree() const {
  int deg = -1;
  for (const auto& [exps, c] : terms) {
    int d = std::accumulate(exps.begin(), exps.end(), 0);
    deg = std::max(deg, d);
  }
  return deg;
}

namespace {

// graded-lexicographic: total degree first, then lexicographic
bool grlex_less(const std::vector<std::uint16_t>& a, const std::vector<std::uint16_t>& b) {
  int da = std::accumulate(a.begin(), a.end(), 0);
  int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

} // namespace

PolyRing::PolyRing(int nvars, std::vector<std::string> names)
    : nvars_(nvars), names_(std::move(names)) {
  if (nvars < 0) throw std::invalid_argument("PolyRing: negative variable count");
  if (names_.empty()) {
    // default naming per the coefficient grammar: a1, ..., a{n-1}, b
    for (int i = 0; i + 1 < nvars; ++i) names_.push_back("a" + std::to_string(i + 1));
    if (nvars >= 1) names_.push_back(nvars == 1 ? "b" : "b");
  }
  if (static_cast<int>(names_.size()) != nvars)
    throw std::invalid_argument("PolyRing: name count mismatch");
}

PolyRing::Elem PolyRing::constant(const mpq_class& c) const {
  SparsePoly p;
  if (sgn(c) != 0) p.terms.push_back({std::vector<std::uint16_t>(nvars_, 0), c});
  return p;
}

PolyRing::Elem PolyRing::variable(int i) const {
  if (i < 0 || i >= nvars_) throw std::invalid_argument("PolyRing::variable: index out of range");
  SparsePoly p;
  std::vector<std::uint16_t> e(nvars_, 0);
  e[i] = 1;
  p.terms.push_back({std::move(e), mpq_class(1)});
  return p;
}

PolyRing::Elem PolyRing::add(const Elem& a, const Elem& b) const {
  // merge of two strictly-descending term lists
  SparsePoly r;
  r.terms.reserve(a.terms.size() + b.terms.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms.size() && j < b.terms.size()) {
    if (a.terms[i].first == b.terms[j].first) {
      mpq_class c = a.terms[i].second + b.terms[j].second;
      if (sgn(c) != 0) r.terms.push_back({a.terms[i].first, std::move(c)});
      ++i; ++j;
    } else if (grlex_less(b.terms[j].first, a.terms[i].first)) {
      r.terms.push_back(a.terms[i]);
      ++i;
    } else {
      r.terms.push_back(b.terms[j]);
      ++j;
    }
  }
  for (; i < a.terms.size(); ++i) r.terms.push_back(a.terms[i]);
  for (; j < b.terms.size(); ++j) r.terms.push_back(b.terms[j]);
  return r;
}

PolyRing::Elem PolyRing::neg(const Elem& a) const {
  SparsePoly r = a;
  for (auto& [e, c] : r.terms) c = -c;
  return r;
}

PolyRing::Elem PolyRing::mul(const Elem& a, const Elem& b) const {
  if (a.terms.empty() || b.terms.empty()) return {};
  auto cmp = [](const std::vector<std::uint16_t>& x, const std::vector<std::uint16_t>& y) {
    return grlex_less(y, x); // descending
  };
  std::map<std::vector<std::uint16_t>, mpq_class, decltype(cmp)> acc(cmp);
  std::vector<std::uint16_t> e(nvars_);
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      for (int k = 0; k < nvars_; ++k) e[k] = static_cast<std::uint16_t>(ea[k] + eb[k]);
      acc[e] += ca * cb;
    }
  SparsePoly r;
  r.terms.reserve(acc.size());
  for (auto& [exp, c] : acc)
    if (sgn(c) != 0) r.terms.push_back({exp, std::move(c)});
  return r;
}

std::string PolyRing::format(const Elem& a) const {
  if (a.terms.empty()) return "0";
  std::string out;
  Rationals q;
  for (std::size_t t = 0; t < a.terms.size(); ++t) {
    const auto& [exps, c] = a.terms[t];
    if (t && sgn(c) > 0) out += "+";
    bool has_var = std::accumulate(exps.begin(), exps.end(), 0) > 0;
    std::string cs = q.format(c);
    if (!has_var || c != 1) {
      out += cs;
      if (has_var) out += "*";
    }
    bool first = true;
    for (int i = 0; i < nvars_; ++i) {
      if (exps[i] == 0) continue;
      if (!first) out += "*";
      first = false;
      out += names_[i];
      if (exps[i] > 1) out += "^" + std::to_string(exps[i]);
    }
  }
  return out;
}

PolyRing::Elem PolyRing::parse(const std::string& s) const {
  // sum of monomials: [+-] factor ('*' factor)*, factor = rational | var['^'e]
  Elem result = zero();
  std::size_t pos = 0;
  auto skip_ws = [&] { while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos; };
  skip_ws();
  if (pos >= s.size()) throw std::invalid_argument("PolyRing::parse: empty literal");
  bool first_term = true;
  while (pos < s.size()) {
    skip_ws();
    int sign = 1;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first_term) {
      throw std::invalid_argument("PolyRing::parse: expected '+' or '-' at offset " + std::to_string(pos));
    }
    first_term = false;
    mpq_class coef(sign);
    std::vector<std::uint16_t> exps(nvars_, 0);
    bool any_factor = false;
    for (;;) {
      skip_ws();
      if (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])))) {
        std::size_t start = pos;
        while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
        coef *= mpq_class(s.substr(start, pos - start), 10);
        coef.canonicalize();
        any_factor = true;
      } else if (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) {
        std::size_t start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])))) ++pos;
        std::string name = s.substr(start, pos - start);
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end())
          throw std::invalid_argument("PolyRing::parse: unknown variable '" + name + "' at offset " + std::to_string(start));
        int var = static_cast<int>(it - names_.begin());
        int e = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          std::size_t es = pos;
          while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
          if (es == pos) throw std::invalid_argument("PolyRing::parse: missing exponent at offset " + std::to_string(pos));
          e = std::stoi(s.substr(es, pos - es));
        }
        exps[var] = static_cast<std::uint16_t>(exps[var] + e);
        any_factor = true;
      } else {
        throw std::invalid_argument("PolyRing::parse: expected factor at offset " + std::to_string(pos));
      }
      skip_ws();
      if (pos < s.size() && s[pos] == '*') { ++pos; continue; }
      break;
    }
    if (!any_factor) throw std::invalid_argument("PolyRing::parse: empty monomial");
    SparsePoly mono;
    if (sgn(coef) != 0) mono.terms.push_back({std::move(exps), coef});
    result = add(result, mono);
    skip_ws();
  }
  return result;
}

} // namespace unipot
