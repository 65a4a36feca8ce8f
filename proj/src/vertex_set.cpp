#include "qkernel/vertex_set.hpp"

#include <algorithm>
#include <sstream>

#include "qkernel/errors.hpp"

namespace qk {

VertexSet::VertexSet(int universe) : universe_(universe), words_((universe + 63) / 64, 0) {
  if (universe < 0) throw PreconditionError("vertex set universe must be non-negative");
}

VertexSet::VertexSet(int universe, std::initializer_list<Vertex> members) : VertexSet(universe) {
  for (Vertex v : members) insert(v);
}

VertexSet::VertexSet(int universe, std::span<const Vertex> members) : VertexSet(universe) {
  for (Vertex v : members) insert(v);
}

VertexSet VertexSet::full(int universe) {
  VertexSet s(universe);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  if (universe % 64 != 0 && !s.words_.empty()) s.words_.back() = (std::uint64_t{1} << (universe % 64)) - 1;
  return s;
}

VertexSet VertexSet::from_mask(int universe, std::uint64_t mask) {
  if (universe > 64) throw PreconditionError("from_mask needs a universe of at most 64");
  VertexSet s(universe);
  if (universe < 64) mask &= (std::uint64_t{1} << universe) - 1;
  if (universe > 0) s.words_[0] = mask;
  return s;
}

void VertexSet::insert(Vertex v) {
  if (v < 0 || v >= universe_)
    throw PreconditionError("vertex " + std::to_string(v) + " outside universe of size " + std::to_string(universe_));
  words_[word_of(v)] |= std::uint64_t{1} << bit_of(v);
}

void VertexSet::erase(Vertex v) {
  if (v < 0 || v >= universe_) return;
  words_[word_of(v)] &= ~(std::uint64_t{1} << bit_of(v));
}

int VertexSet::size() const noexcept {
  int total = 0;
  for (auto w : words_) total += std::popcount(w);
  return total;
}

bool VertexSet::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

Vertex VertexSet::next_after(Vertex v) const noexcept {
  Vertex start = v + 1;
  if (start >= universe_) return -1;
  int wi = word_of(start);
  std::uint64_t w = words_[wi] & (~std::uint64_t{0} << bit_of(start));
  while (true) {
    if (w != 0) return wi * 64 + std::countr_zero(w);
    if (++wi >= static_cast<int>(words_.size())) return -1;
    w = words_[wi];
  }
}

std::vector<Vertex> VertexSet::members() const {
  std::vector<Vertex> out;
  out.reserve(size());
  for (Vertex v : *this) out.push_back(v);
  return out;
}

std::uint64_t VertexSet::mask() const {
  if (universe_ > 64) throw PreconditionError("mask() needs a universe of at most 64");
  return words_.empty() ? 0 : words_[0];
}

VertexSet VertexSet::complement() const { return full(universe_) - *this; }

bool VertexSet::is_subset_of(const VertexSet& other) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & ~other.words_[i]) != 0) return false;
  return true;
}

bool VertexSet::intersects(const VertexSet& other) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if ((words_[i] & other.words_[i]) != 0) return true;
  return false;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

std::string VertexSet::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (Vertex v : *this) {
    if (!first) os << ',';
    os << v;
    first = false;
  }
  os << '}';
  return os.str();
}

bool lexicographically_less(const VertexSet& a, const VertexSet& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib)
    if (*ia != *ib) return *ia < *ib;
  return ia == a.end() && ib != b.end();
}

}  // namespace qk
