#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace qk {

using Vertex = int;

/// Subset of the fixed universe {0, ..., universe-1}, stored as a bitset.
///
/// Every binary operation expects both operands to share a universe. Members
/// iterate in ascending order.
class VertexSet {
 public:
  class const_iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = Vertex;
    using difference_type = std::ptrdiff_t;
    using pointer = const Vertex*;
    using reference = Vertex;

    const_iterator() = default;
    Vertex operator*() const { return current_; }
    const_iterator& operator++() {
      current_ = owner_->next_after(current_);
      return *this;
    }
    const_iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const const_iterator& a, const const_iterator& b) { return a.current_ == b.current_; }

   private:
    friend class VertexSet;
    const_iterator(const VertexSet* owner, Vertex current) : owner_(owner), current_(current) {}
    const VertexSet* owner_ = nullptr;
    Vertex current_ = -1;
  };

  VertexSet() = default;
  explicit VertexSet(int universe);
  VertexSet(int universe, std::initializer_list<Vertex> members);
  VertexSet(int universe, std::span<const Vertex> members);

  static VertexSet full(int universe);
  /// Bits of `mask` as members; universe must be at most 64.
  static VertexSet from_mask(int universe, std::uint64_t mask);

  int universe() const noexcept { return universe_; }
  bool contains(Vertex v) const noexcept {
    return v >= 0 && v < universe_ && ((words_[word_of(v)] >> bit_of(v)) & 1U) != 0;
  }
  void insert(Vertex v);
  void erase(Vertex v);

  int size() const noexcept;
  bool empty() const noexcept;
  /// Smallest member, or -1 when empty.
  Vertex lowest() const noexcept { return next_after(-1); }
  /// Smallest member strictly greater than `v`, or -1.
  Vertex next_after(Vertex v) const noexcept;

  const_iterator begin() const { return {this, lowest()}; }
  const_iterator end() const { return {this, -1}; }

  std::vector<Vertex> members() const;
  /// Low 64 bits; universe must be at most 64.
  std::uint64_t mask() const;

  VertexSet complement() const;
  bool is_subset_of(const VertexSet& other) const noexcept;
  bool intersects(const VertexSet& other) const noexcept;

  VertexSet& operator|=(const VertexSet& other) noexcept;
  VertexSet& operator&=(const VertexSet& other) noexcept;
  VertexSet& operator-=(const VertexSet& other) noexcept;

  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
  friend bool operator==(const VertexSet& a, const VertexSet& b) noexcept {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }

  /// "{0,2,5}".
  std::string to_string() const;

 private:
  static constexpr int word_of(Vertex v) noexcept { return v >> 6; }
  static constexpr int bit_of(Vertex v) noexcept { return v & 63; }

  int universe_ = 0;
  boost::container::small_vector<std::uint64_t, 2> words_;
};

/// Lexicographic comparison of the ascending member lists.
bool lexicographically_less(const VertexSet& a, const VertexSet& b);

}  // namespace qk
