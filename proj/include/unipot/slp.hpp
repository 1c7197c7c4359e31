#ifndef UNIPOT_SLP_HPP
#define UNIPOT_SLP_HPP

// Straight-line programs over ring operations: a hash-consed DAG of
// input/constant/add/neg/mul nodes. Identical subexpressions share nodes, so
// a stored program is the collection that built it, preserved instruction by
// instruction.

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "unipot/rings.hpp"

namespace unipot::slp {

enum class Op : std::uint8_t { Input, Const, Add, Neg, Mul };

struct Node {
  Op op;
  std::int32_t a = -1, b = -1;
  std::int64_t payload = 0; // input index or constant value
};

class Builder {
public:
  explicit Builder(int num_inputs, std::size_t node_cap = kDefaultNodeCap);

  int num_inputs() const { return num_inputs_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t node_cap() const { return cap_; }
  const Node& node(std::int32_t h) const { return nodes_[h]; }

  std::int32_t input(int i) const { return inputs_[i]; }
  std::int32_t zero() const { return zero_; }
  std::int32_t one() const { return one_; }

  std::int32_t constant(std::int64_t v);
  std::int32_t add(std::int32_t x, std::int32_t y);
  std::int32_t neg(std::int32_t x);
  std::int32_t mul(std::int32_t x, std::int32_t y);

  // number of nodes reachable from the given outputs
  std::size_t reachable_count(std::span<const std::int32_t> outputs) const;

private:
  std::int32_t intern(Op op, std::int32_t a, std::int32_t b, std::int64_t payload);

  struct Key {
    Op op;
    std::int32_t a, b;
    std::int64_t payload;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = static_cast<std::size_t>(k.op);
      h = h * 1000003u ^ static_cast<std::size_t>(static_cast<std::uint32_t>(k.a));
      h = h * 1000003u ^ static_cast<std::size_t>(static_cast<std::uint32_t>(k.b));
      h = h * 1000003u ^ static_cast<std::size_t>(k.payload);
      return h;
    }
  };

  int num_inputs_;
  std::size_t cap_;
  std::vector<Node> nodes_;
  std::unordered_map<Key, std::int32_t, KeyHash> interned_;
  std::vector<std::int32_t> inputs_;
  std::int32_t zero_ = -1, one_ = -1;
};

// Ring adapter whose elements are node handles. Equality and zero tests are
// structural (sound but incomplete); with hash-consing that is exactly what
// symbolic collection needs for zero elimination.
class SlpRing {
public:
  using Elem = std::int32_t;

  explicit SlpRing(Builder& b) : b_(&b) {}
  Builder& builder() const { return *b_; }

  std::uint64_t characteristic() const { return 0; }
  Elem zero() const { return b_->zero(); }
  Elem one() const { return b_->one(); }
  Elem from_int(std::int64_t v) const { return b_->constant(v); }
  Elem add(Elem x, Elem y) const { return b_->add(x, y); }
  Elem neg(Elem x) const { return b_->neg(x); }
  Elem mul(Elem x, Elem y) const { return b_->mul(x, y); }
  bool eq(Elem x, Elem y) const { return x == y; }
  bool is_zero(Elem x) const { return x == b_->zero(); }
  std::string format(Elem x) const { return "#" + std::to_string(x); }
  Elem parse(const std::string&) const {
    throw UnsupportedError("SlpRing: no literal syntax");
  }

private:
  Builder* b_;
};

// Batch evaluator with a reusable value buffer; one epoch per input vector.
template <Ring R>
class Evaluator {
public:
  explicit Evaluator(const Builder& b) : b_(&b) {}

  void begin(const R& ring, std::span<const typename R::Elem> inputs) {
    vals_.resize(b_->node_count(), ring.zero());
    epoch_of_.resize(b_->node_count(), 0);
    ++epoch_;
    inputs_.assign(inputs.begin(), inputs.end());
  }

  const typename R::Elem& get(const R& ring, std::int32_t out) {
    if (static_cast<std::size_t>(out) >= vals_.size()) {
      vals_.resize(b_->node_count(), ring.zero());
      epoch_of_.resize(b_->node_count(), 0);
    }
    // iterative post-order evaluation
    stack_.clear();
    stack_.push_back(out);
    while (!stack_.empty()) {
      std::int32_t h = stack_.back();
      if (epoch_of_[h] == epoch_) {
        stack_.pop_back();
        continue;
      }
      const Node& n = b_->node(h);
      switch (n.op) {
        case Op::Input:
          vals_[h] = inputs_[n.payload];
          epoch_of_[h] = epoch_;
          stack_.pop_back();
          break;
        case Op::Const:
          vals_[h] = ring.from_int(n.payload);
          epoch_of_[h] = epoch_;
          stack_.pop_back();
          break;
        case Op::Neg:
          if (epoch_of_[n.a] != epoch_) {
            stack_.push_back(n.a);
          } else {
            vals_[h] = ring.neg(vals_[n.a]);
            epoch_of_[h] = epoch_;
            stack_.pop_back();
          }
          break;
        case Op::Add:
        case Op::Mul: {
          bool ready = true;
          if (epoch_of_[n.a] != epoch_) { stack_.push_back(n.a); ready = false; }
          if (epoch_of_[n.b] != epoch_) { stack_.push_back(n.b); ready = false; }
          if (ready) {
            vals_[h] = n.op == Op::Add ? ring.add(vals_[n.a], vals_[n.b])
                                       : ring.mul(vals_[n.a], vals_[n.b]);
            epoch_of_[h] = epoch_;
            stack_.pop_back();
          }
          break;
        }
      }
    }
    return vals_[out];
  }

private:
  const Builder* b_;
  std::vector<typename R::Elem> vals_;
  std::vector<std::uint32_t> epoch_of_;
  std::vector<typename R::Elem> inputs_;
  std::vector<std::int32_t> stack_;
  std::uint32_t epoch_ = 0;
};

} // namespace unipot::slp

#endif
