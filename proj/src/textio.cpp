#include "unipot/textio.hpp"

#include <cctype>

namespace unipot {

namespace {

[[noreturn]] void fail(const std::string& what, std::size_t pos) {
  throw std::invalid_argument("word: " + what + " at offset " + std::to_string(pos));
}

} // namespace

std::vector<WordToken> tokenize_word(const RootSystem& rs, const std::string& text) {
  std::vector<WordToken> out;
  std::size_t p = 0;
  auto skip_ws = [&] { while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p; };
  skip_ws();
  while (p < text.size()) {
    if (text[p] != 'x') fail("expected 'x'", p);
    ++p;
    if (p >= text.size() || text[p] != '[') fail("expected '['", p);
    ++p;
    int root = 0;
    if (p < text.size() && text[p] == 'a') {
      // pair label a[i,j]
      ++p;
      if (p >= text.size() || text[p] != '[') fail("expected '[' in root label", p);
      ++p;
      std::size_t comma = text.find(',', p);
      std::size_t close = text.find(']', p);
      if (comma == std::string::npos || close == std::string::npos || comma > close)
        fail("malformed root label", p);
      int i = std::stoi(text.substr(p, comma - p));
      int j = std::stoi(text.substr(comma + 1, close - comma - 1));
      root = rs.index_of_label(i, j);
      if (root == 0) fail("unknown root label", p);
      p = close + 1;
    } else {
      std::size_t start = p;
      while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
      if (p == start) fail("expected root index", p);
      root = std::stoi(text.substr(start, p - start));
      if (root < 1 || root > rs.num_positive()) fail("root index out of range", start);
    }
    if (p >= text.size() || text[p] != ']') fail("expected ']'", p);
    ++p;
    if (p >= text.size() || text[p] != '(') fail("expected '('", p);
    ++p;
    std::size_t close = text.find(')', p);
    if (close == std::string::npos) fail("unterminated coefficient", p);
    std::string coeff = text.substr(p, close - p);
    p = close + 1;
    int eps = +1;
    if (p + 2 < text.size() + 1 && text.compare(p, 3, "^-1") == 0) {
      eps = -1;
      p += 3;
    }
    out.push_back({root, coeff, eps});
    skip_ws();
  }
  return out;
}

} // namespace unipot
