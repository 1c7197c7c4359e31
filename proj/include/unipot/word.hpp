#ifndef UNIPOT_WORD_HPP
#define UNIPOT_WORD_HPP

#include <cstdint>
#include <vector>

#include "unipot/rings.hpp"
#include "unipot/rootsystem.hpp"

namespace unipot {

// A word prod x_{r_i}(a_i)^{eps_i} as a doubly linked chain over a node pool.
// Insertion and deletion are O(1); freed nodes are recycled through a free
// list. No node ever holds a zero coefficient.
template <Ring R>
class Word {
public:
  struct Node {
    typename R::Elem a;
    std::int32_t root = 0;
    std::int32_t prev = -1, next = -1;
    std::int8_t eps = 1;
    bool live = false;
  };

  explicit Word(const R& ring) : ring_(&ring) {}

  std::int64_t length() const { return len_; }
  std::int32_t head() const { return head_; }
  std::int32_t tail() const { return tail_; }
  Node& node(std::int32_t h) { return pool_[h]; }
  const Node& node(std::int32_t h) const { return pool_[h]; }

  std::int32_t push_back(int root, const typename R::Elem& a, int eps) {
    std::int32_t h = alloc(root, a, eps);
    link_after(tail_, h);
    return h;
  }

  // insert a fresh node after `after` (-1 = at head)
  std::int32_t insert_after(std::int32_t after, int root, const typename R::Elem& a, int eps) {
    std::int32_t h = alloc(root, a, eps);
    link_after(after, h);
    return h;
  }

  void erase(std::int32_t h) {
    Node& n = pool_[h];
    if (n.prev >= 0) pool_[n.prev].next = n.next;
    else head_ = n.next;
    if (n.next >= 0) pool_[n.next].prev = n.prev;
    else tail_ = n.prev;
    n.live = false;
    n.prev = n.next = -1;
    free_.push_back(h);
    --len_;
  }

  // chain integrity: prev/next mutually inverse, traversal count == length,
  // no zero coefficients
  bool validate() const {
    std::int64_t count = 0;
    std::int32_t prev = -1;
    for (std::int32_t h = head_; h >= 0; h = pool_[h].next) {
      if (!pool_[h].live || pool_[h].prev != prev) return false;
      if (ring_->is_zero(pool_[h].a)) return false;
      prev = h;
      if (++count > len_) return false;
    }
    return count == len_ && prev == tail_;
  }

private:
  std::int32_t alloc(int root, const typename R::Elem& a, int eps) {
    if (ring_->is_zero(a)) throw std::invalid_argument("word: zero coefficient");
    std::int32_t h;
    if (!free_.empty()) {
      h = free_.back();
      free_.pop_back();
    } else {
      h = static_cast<std::int32_t>(pool_.size());
      pool_.emplace_back();
    }
    Node& n = pool_[h];
    n.a = a;
    n.root = root;
    n.eps = static_cast<std::int8_t>(eps);
    n.live = true;
    n.prev = n.next = -1;
    return h;
  }

  void link_after(std::int32_t after, std::int32_t h) {
    Node& n = pool_[h];
    if (after < 0) {
      n.next = head_;
      n.prev = -1;
      if (head_ >= 0) pool_[head_].prev = h;
      head_ = h;
      if (tail_ < 0) tail_ = h;
    } else {
      Node& p = pool_[after];
      n.prev = after;
      n.next = p.next;
      if (p.next >= 0) pool_[p.next].prev = h;
      p.next = h;
      if (tail_ == after) tail_ = h;
    }
    ++len_;
  }

  const R* ring_;
  std::vector<Node> pool_;
  std::vector<std::int32_t> free_;
  std::int32_t head_ = -1, tail_ = -1;
  std::int64_t len_ = 0;
};

} // namespace unipot

#endif
