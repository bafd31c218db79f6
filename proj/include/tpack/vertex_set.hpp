// Copyright 2026 The tpack Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <span>
#include <vector>

#include "tpack/errors.hpp"

namespace tpack {

using Vertex = int;

/// Fixed-capacity bitset over dense vertex ids 0..kCapacity-1. Iteration is
/// in ascending vertex order.
class VertexSet {
 public:
  static constexpr int kWords = 2;
  static constexpr int kCapacity = 64 * kWords;

  class Iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = Vertex;
    using difference_type = std::ptrdiff_t;
    using pointer = const Vertex*;
    using reference = Vertex;

    Iterator() = default;
    Iterator(const VertexSet* set, int word, std::uint64_t rest)
        : set_(set), word_(word), rest_(rest) {
      skip_empty();
    }

    Vertex operator*() const { return word_ * 64 + std::countr_zero(rest_); }
    Iterator& operator++() {
      rest_ &= rest_ - 1;
      skip_empty();
      return *this;
    }
    Iterator operator++(int) {
      Iterator copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const Iterator& other) const {
      return word_ == other.word_ && rest_ == other.rest_;
    }

   private:
    void skip_empty() {
      while (rest_ == 0 && word_ + 1 < kWords) {
        ++word_;
        rest_ = set_->words_[word_];
      }
      if (rest_ == 0) word_ = kWords;
    }

    const VertexSet* set_ = nullptr;
    int word_ = kWords;
    std::uint64_t rest_ = 0;
  };

  constexpr VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> vertices) {
    for (Vertex v : vertices) insert(v);
  }
  explicit VertexSet(std::span<const Vertex> vertices) {
    for (Vertex v : vertices) insert(v);
  }

  /// The set {0, ..., n-1}.
  static VertexSet range(int n) {
    detail::require(n >= 0 && n <= kCapacity, "vertex count out of supported range");
    VertexSet s;
    for (int w = 0; w < kWords && n > 0; ++w, n -= 64) {
      s.words_[w] = n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    }
    return s;
  }

  static VertexSet from_mask(std::uint64_t mask) {
    VertexSet s;
    s.words_[0] = mask;
    return s;
  }

  void insert(Vertex v) {
    check(v);
    words_[v >> 6] |= bit(v);
  }
  void erase(Vertex v) {
    check(v);
    words_[v >> 6] &= ~bit(v);
  }
  bool contains(Vertex v) const {
    return v >= 0 && v < kCapacity && (words_[v >> 6] & bit(v)) != 0;
  }

  int size() const {
    int total = 0;
    for (auto w : words_) total += std::popcount(w);
    return total;
  }
  bool empty() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }
  /// Smallest element, or -1 when empty.
  Vertex first() const {
    for (int w = 0; w < kWords; ++w)
      if (words_[w] != 0) return w * 64 + std::countr_zero(words_[w]);
    return -1;
  }
  /// Largest element, or -1 when empty.
  Vertex last() const {
    for (int w = kWords - 1; w >= 0; --w)
      if (words_[w] != 0) return w * 64 + 63 - std::countl_zero(words_[w]);
    return -1;
  }

  bool is_subset_of(const VertexSet& other) const {
    for (int w = 0; w < kWords; ++w)
      if ((words_[w] & ~other.words_[w]) != 0) return false;
    return true;
  }
  bool intersects(const VertexSet& other) const {
    for (int w = 0; w < kWords; ++w)
      if ((words_[w] & other.words_[w]) != 0) return true;
    return false;
  }

  /// Low 64 bits; only meaningful when every element is below 64.
  std::uint64_t low_mask() const { return words_[0]; }
  bool fits_in_mask() const {
    for (int w = 1; w < kWords; ++w)
      if (words_[w] != 0) return false;
    return true;
  }

  VertexSet& operator&=(const VertexSet& o) {
    for (int w = 0; w < kWords; ++w) words_[w] &= o.words_[w];
    return *this;
  }
  VertexSet& operator|=(const VertexSet& o) {
    for (int w = 0; w < kWords; ++w) words_[w] |= o.words_[w];
    return *this;
  }
  VertexSet& operator-=(const VertexSet& o) {
    for (int w = 0; w < kWords; ++w) words_[w] &= ~o.words_[w];
    return *this;
  }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  /// Colexicographic order on the underlying words; any strict total order
  /// works for sorted containers.
  friend std::strong_ordering operator<=>(const VertexSet& a, const VertexSet& b) {
    for (int w = kWords - 1; w >= 0; --w)
      if (a.words_[w] != b.words_[w]) return a.words_[w] <=> b.words_[w];
    return std::strong_ordering::equal;
  }

  Iterator begin() const { return Iterator(this, 0, words_[0]); }
  Iterator end() const { return Iterator(this, kWords, 0); }

  std::vector<Vertex> to_vector() const { return {begin(), end()}; }

 private:
  static std::uint64_t bit(Vertex v) { return std::uint64_t{1} << (v & 63); }
  static void check(Vertex v) {
    detail::require(v >= 0 && v < kCapacity, "vertex id out of supported range");
  }

  std::array<std::uint64_t, kWords> words_{};
};

}  // namespace tpack
