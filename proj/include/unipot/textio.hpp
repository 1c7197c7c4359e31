#ifndef UNIPOT_TEXTIO_HPP
#define UNIPOT_TEXTIO_HPP

// Word grammar: word := term*; term := "x[" root "](" coeff ")" ["^-1"],
// where root is a canonical index or a pair label "a[i,j]". Collected
// elements serialize as "<ordering id>|c1,c2,...,cN".

#include <string>
#include <vector>

#include "unipot/collect.hpp"

namespace unipot {

struct WordToken {
  int root;
  std::string coeff;
  int eps;
};

// throws std::invalid_argument with a byte-offset diagnostic
std::vector<WordToken> tokenize_word(const RootSystem& rs, const std::string& text);

template <Ring R>
Word<R> parse_word(const RootSystem& rs, const R& ring, const std::string& text) {
  Word<R> w(ring);
  for (const WordToken& t : tokenize_word(rs, text))
    w.push_back(t.root, ring.parse(t.coeff), t.eps);
  return w;
}

template <Ring R>
std::string format_word(const RootSystem& rs, const R& ring, const Word<R>& w) {
  std::string out;
  for (std::int32_t h = w.head(); h >= 0; h = w.node(h).next) {
    if (!out.empty()) out += " ";
    const auto& n = w.node(h);
    out += "x[" + std::to_string(n.root) + "](" + ring.format(n.a) + ")";
    if (n.eps == -1) out += "^-1";
  }
  return out;
}

template <Ring R>
std::string format_element(const R& ring, const CollectedElement<R>& x) {
  std::string out = x.ord_id + "|";
  for (std::size_t p = 0; p < x.c.size(); ++p) {
    if (p) out += ",";
    out += ring.format(x.c[p]);
  }
  return out;
}

template <Ring R>
CollectedElement<R> parse_element(const R& ring, const Ordering& ord, const std::string& text) {
  auto bar = text.find('|');
  if (bar == std::string::npos) throw std::invalid_argument("element: missing '|'");
  CollectedElement<R> x;
  x.ord_id = text.substr(0, bar);
  if (x.ord_id != ord.id) throw std::invalid_argument("element: ordering id mismatch");
  std::size_t pos = bar + 1;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    x.c.push_back(ring.parse(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (static_cast<int>(x.c.size()) != ord.size())
    throw std::invalid_argument("element: wrong coefficient count");
  return x;
}

} // namespace unipot

#endif
