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

// Exact perfect and maximum packings of small patterns by exact-cover
// backtracking. Every other module uses this as its ground truth.

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tpack/digraph.hpp"

namespace tpack {

/// Vertex-disjoint copies of patterns in a host of order `host_order`.
struct Packing {
  int host_order = 0;
  std::vector<Embedding> elements;

  std::size_t size() const { return elements.size(); }
  VertexSet covered() const {
    VertexSet s;
    for (const auto& e : elements) s |= e.vertex_set();
    return s;
  }
  bool is_perfect() const { return covered() == VertexSet::range(host_order); }
};

enum class Verdict { kPacked, kExhaustedNone, kBudgetExceeded };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kPacked: return "packed";
    case Verdict::kExhaustedNone: return "exhausted_none";
    case Verdict::kBudgetExceeded: return "budget_exceeded";
  }
  return "?";
}

/// Outcome of a perfect-packing search. kExhaustedNone is only reported after
/// the whole search tree was traversed; running out of budget is kBudgetExceeded.
struct PackingCertificate {
  Verdict verdict = Verdict::kExhaustedNone;
  std::optional<Packing> packing;
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

struct MaxPackingResult {
  Packing packing;
  /// True when the search completed, so the packing is a maximum one.
  bool exact = false;
  std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

/// A vertex set that spans some family member, with the copy found.
struct Block {
  VertexSet vertices;
  Embedding embedding;
};

/// All r-subsets of `domain` spanning a member of `family` (all members share
/// order r), in lexicographic order of their sorted vertex lists. When every
/// member has an arc between each pair, only cliques of the underlying graph
/// are examined.
inline std::vector<Block> enumerate_blocks(const Digraph& g, const VertexSet& domain,
                                           std::span<const Pattern> family) {
  detail::require(!family.empty(), "empty pattern family");
  const int r = family.front().order();
  bool adjacent_only = true;
  for (const auto& t : family) {
    detail::require(t.order() == r, "family members must share the same order");
    adjacent_only = adjacent_only && t.pairwise_adjacent();
  }
  std::vector<Block> blocks;
  std::vector<Vertex> chosen;
  VertexSet current;
  auto extend = [&](auto&& self, VertexSet candidates) -> void {
    if (static_cast<int>(chosen.size()) == r) {
      if (auto e = spans_any(g, current, family)) blocks.push_back({current, std::move(*e)});
      return;
    }
    for (Vertex v : candidates) {
      VertexSet next = candidates;
      // keep only vertices after v
      for (Vertex w : candidates) {
        if (w > v) break;
        next.erase(w);
      }
      if (adjacent_only) next &= g.neighbors(v);
      if (next.size() < r - static_cast<int>(chosen.size()) - 1) continue;
      chosen.push_back(v);
      current.insert(v);
      self(self, next);
      current.erase(v);
      chosen.pop_back();
    }
  };
  extend(extend, domain);
  return blocks;
}

namespace detail {

class ExactPacker {
 public:
  ExactPacker(const Digraph& g, std::span<const Pattern> family, const VertexSet& domain,
              std::uint64_t budget)
      : g_(g), domain_(domain), budget_(budget), blocks_(enumerate_blocks(g, domain, family)),
        r_(family.front().order()), by_vertex_(static_cast<std::size_t>(g.order())) {
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      for (Vertex v : blocks_[b].vertices) by_vertex_[v].push_back(b);
  }

  PackingCertificate perfect() {
    const auto start = std::chrono::steady_clock::now();
    PackingCertificate cert;
    chosen_.clear();
    bool found = false;
    if (domain_.empty() || all_coverable(domain_)) found = search_perfect(domain_);
    cert.nodes = nodes_;
    if (found) {
      cert.verdict = Verdict::kPacked;
      cert.packing = to_packing(chosen_);
    } else {
      cert.verdict = exhausted_ ? Verdict::kBudgetExceeded : Verdict::kExhaustedNone;
    }
    cert.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return cert;
  }

  MaxPackingResult maximum() {
    chosen_.clear();
    best_.clear();
    search_max(domain_);
    MaxPackingResult result;
    result.packing = to_packing(best_);
    result.exact = !exhausted_;
    result.nodes = nodes_;
    return result;
  }

 private:
  bool tick() {
    if (++nodes_ > budget_) exhausted_ = true;
    return !exhausted_;
  }

  bool has_block_within(Vertex u, const VertexSet& allowed) const {
    for (std::size_t b : by_vertex_[u])
      if (blocks_[b].vertices.is_subset_of(allowed)) return true;
    return false;
  }

  bool all_coverable(const VertexSet& rest) const {
    for (Vertex u : rest)
      if (!has_block_within(u, rest)) return false;
    return true;
  }

  int coverable_count(const VertexSet& rest) const {
    int count = 0;
    for (Vertex u : rest)
      if (has_block_within(u, rest)) ++count;
    return count;
  }

  bool search_perfect(const VertexSet& uncovered) {
    if (!tick()) return false;
    if (uncovered.empty()) return true;
    if (uncovered.size() % r_ != 0) return false;
    const Vertex v = uncovered.first();
    for (std::size_t b : by_vertex_[v]) {
      const auto& block = blocks_[b].vertices;
      if (!block.is_subset_of(uncovered)) continue;
      const VertexSet rest = uncovered - block;
      if (!all_coverable(rest)) continue;
      chosen_.push_back(b);
      if (search_perfect(rest)) return true;
      chosen_.pop_back();
      if (exhausted_) return false;
    }
    return false;
  }

  void search_max(const VertexSet& active) {
    if (!tick()) return;
    const int bound = static_cast<int>(chosen_.size()) + coverable_count(active) / r_;
    if (bound <= static_cast<int>(best_.size()) && !(best_.empty() && chosen_.empty() && bound == 0))
      return;
    if (chosen_.size() > best_.size()) best_ = chosen_;
    // Lowest active vertex that lies in some block inside `active`.
    Vertex v = -1;
    for (Vertex u : active)
      if (has_block_within(u, active)) {
        v = u;
        break;
      }
    if (v < 0) return;
    for (std::size_t b : by_vertex_[v]) {
      const auto& block = blocks_[b].vertices;
      if (!block.is_subset_of(active)) continue;
      chosen_.push_back(b);
      search_max(active - block);
      chosen_.pop_back();
      if (exhausted_) return;
    }
    VertexSet without = active;
    without.erase(v);
    search_max(without);
  }

  Packing to_packing(const std::vector<std::size_t>& chosen) const {
    Packing p;
    p.host_order = g_.order();
    for (std::size_t b : chosen) p.elements.push_back(blocks_[b].embedding);
    return p;
  }

  const Digraph& g_;
  VertexSet domain_;
  std::uint64_t budget_;
  std::vector<Block> blocks_;
  int r_;
  std::vector<std::vector<std::size_t>> by_vertex_;
  std::vector<std::size_t> chosen_;
  std::vector<std::size_t> best_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace detail

/// Perfect packing of G[domain] by copies of members of `family`. Branches
/// on the lowest uncovered vertex over the blocks through it in lexicographic
/// order, and backtracks as soon as some uncovered vertex has no block left.
inline PackingCertificate find_perfect_family_packing(const Digraph& g,
                                                      std::span<const Pattern> family,
                                                      const VertexSet& domain,
                                                      std::uint64_t budget = kDefaultNodeBudget) {
  detail::require(!family.empty(), "empty pattern family");
  const int r = family.front().order();
  for (const auto& t : family)
    detail::require(t.order() == r, "family members must share the same order");
  detail::require(domain.is_subset_of(g.vertices()), "domain outside the host");
  detail::require(domain.size() % r == 0,
                  "pattern order " + std::to_string(r) + " does not divide " +
                      std::to_string(domain.size()));
  return detail::ExactPacker(g, family, domain, budget).perfect();
}

inline PackingCertificate find_perfect_family_packing(const Digraph& g,
                                                      std::span<const Pattern> family,
                                                      std::uint64_t budget = kDefaultNodeBudget) {
  return find_perfect_family_packing(g, family, g.vertices(), budget);
}

inline PackingCertificate find_perfect_packing(const Digraph& g, const Pattern& t,
                                               const VertexSet& domain,
                                               std::uint64_t budget = kDefaultNodeBudget) {
  return find_perfect_family_packing(g, std::span<const Pattern>(&t, 1), domain, budget);
}

inline PackingCertificate find_perfect_packing(const Digraph& g, const Pattern& t,
                                               std::uint64_t budget = kDefaultNodeBudget) {
  return find_perfect_packing(g, t, g.vertices(), budget);
}

/// Maximum-cardinality packing by branch and bound (cover the lowest
/// coverable vertex with some block, or leave it uncovered). `exact` is false
/// when the budget ran out; the packing is then the best found.
inline MaxPackingResult find_max_family_packing(const Digraph& g, std::span<const Pattern> family,
                                                const VertexSet& domain,
                                                std::uint64_t budget = kDefaultNodeBudget) {
  return detail::ExactPacker(g, family, domain, budget).maximum();
}

inline MaxPackingResult find_max_packing(const Digraph& g, const Pattern& t,
                                         std::uint64_t budget = kDefaultNodeBudget) {
  return find_max_family_packing(g, std::span<const Pattern>(&t, 1), g.vertices(), budget);
}

/// Checks that elements are copies of family members (arc sets compared, not
/// names), pairwise disjoint, mapped onto host arcs, and, when
/// `require_perfect`, cover V(G) (or `domain` when given).
inline bool verify_packing(const Digraph& g, std::span<const Pattern> family, const Packing& p,
                           bool require_perfect, std::optional<VertexSet> domain = std::nullopt) {
  VertexSet seen;
  for (const auto& e : p.elements) {
    bool member = false;
    for (const auto& t : family) member = member || (t == e.pattern);
    if (!member) return false;
    if (!e.is_valid_in(g)) return false;
    const VertexSet vs = e.vertex_set();
    if (vs.intersects(seen)) return false;
    seen |= vs;
  }
  if (domain && !seen.is_subset_of(*domain)) return false;
  if (require_perfect) return seen == (domain ? *domain : g.vertices());
  return true;
}

inline bool verify_packing(const Digraph& g, const Pattern& t, const Packing& p,
                           bool require_perfect = true) {
  return verify_packing(g, std::span<const Pattern>(&t, 1), p, require_perfect);
}

}  // namespace tpack
