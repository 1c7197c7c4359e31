#include "unipot/slp.hpp"

namespace unipot::slp {

Builder::Builder(int num_inputs, std::size_t node_cap) : num_inputs_(num_inputs), cap_(node_cap) {
  zero_ = intern(Op::Const, -1, -1, 0);
  one_ = intern(Op::Const, -1, -1, 1);
  inputs_.reserve(num_inputs);
  for (int i = 0; i < num_inputs; ++i) inputs_.push_back(intern(Op::Input, -1, -1, i));
}

std::int32_t Builder::intern(Op op, std::int32_t a, std::int32_t b, std::int64_t payload) {
  Key k{op, a, b, payload};
  auto it = interned_.find(k);
  if (it != interned_.end()) return it->second;
  if (nodes_.size() >= cap_)
    throw GuardError("slp: node cap exceeded (" + std::to_string(cap_) + ")");
  std::int32_t h = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(Node{op, a, b, payload});
  interned_.emplace(k, h);
  return h;
}

std::int32_t Builder::constant(std::int64_t v) { return intern(Op::Const, -1, -1, v); }

namespace {

bool add_overflows(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  return __builtin_add_overflow(a, b, &r);
}
bool mul_overflows(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  return __builtin_mul_overflow(a, b, &r);
}

} // namespace

std::int32_t Builder::add(std::int32_t x, std::int32_t y) {
  if (x == zero_) return y;
  if (y == zero_) return x;
  const Node& nx = nodes_[x];
  const Node& ny = nodes_[y];
  if (nx.op == Op::Const && ny.op == Op::Const && !add_overflows(nx.payload, ny.payload))
    return constant(nx.payload + ny.payload);
  // x + (-x) and (-x) + x collapse structurally
  if (ny.op == Op::Neg && ny.a == x) return zero_;
  if (nx.op == Op::Neg && nx.a == y) return zero_;
  if (x > y) std::swap(x, y); // commutative normalization helps consing
  return intern(Op::Add, x, y, 0);
}

std::int32_t Builder::neg(std::int32_t x) {
  if (x == zero_) return zero_;
  const Node& nx = nodes_[x];
  if (nx.op == Op::Const && nx.payload != INT64_MIN) return constant(-nx.payload);
  if (nx.op == Op::Neg) return nx.a;
  return intern(Op::Neg, x, -1, 0);
}

std::int32_t Builder::mul(std::int32_t x, std::int32_t y) {
  if (x == zero_ || y == zero_) return zero_;
  if (x == one_) return y;
  if (y == one_) return x;
  const Node& nx = nodes_[x];
  const Node& ny = nodes_[y];
  if (nx.op == Op::Const && ny.op == Op::Const && !mul_overflows(nx.payload, ny.payload))
    return constant(nx.payload * ny.payload);
  if (x > y) std::swap(x, y);
  return intern(Op::Mul, x, y, 0);
}

std::size_t Builder::reachable_count(std::span<const std::int32_t> outputs) const {
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<std::int32_t> stack(outputs.begin(), outputs.end());
  std::size_t count = 0;
  while (!stack.empty()) {
    std::int32_t h = stack.back();
    stack.pop_back();
    if (h < 0 || seen[h]) continue;
    seen[h] = 1;
    ++count;
    stack.push_back(nodes_[h].a);
    stack.push_back(nodes_[h].b);
  }
  return count;
}

} // namespace unipot::slp
