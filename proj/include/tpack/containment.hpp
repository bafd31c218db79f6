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

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "tpack/constructions.hpp"
#include "tpack/digraph.hpp"

namespace tpack {

enum class SearchMode { kExact, kHeuristic };

struct ExContainment {
  bool contains = false;
  /// Number of Ex(n) arcs missing from G under the best class assignment
  /// found. Exact in kExact mode; an upper bound on the optimum otherwise.
  long deficit = 0;
  ExPartition witness;
  bool exact = false;
};

/// Arcs Ex(n) requires under `partition` that G lacks.
inline long ex_deficit(const Digraph& g, const ExPartition& partition) {
  long missing = 0;
  for (int i = 0; i < 3; ++i) {
    const auto& a = partition.classes[i];
    const auto& b = partition.classes[(i + 1) % 3];
    for (Vertex u : a) {
      missing += (a.size() - 1) - g.out_degree(u, a);
      missing += b.size() - g.out_degree(u, b);
    }
  }
  return missing;
}

namespace detail {

/// Branch and bound over class assignments in vertex order. The partial
/// deficit counts required arcs between already-assigned vertices, which only
/// grows as more vertices are placed.
class ExAssignmentSearch {
 public:
  ExAssignmentSearch(const Digraph& g, std::array<int, 3> sizes) : g_(g), sizes_(sizes) {}

  ExPartition run(long& best_deficit) {
    best_ = std::numeric_limits<long>::max();
    classes_ = {};
    place(0, 0);
    best_deficit = best_;
    ExPartition p;
    p.classes = best_classes_;
    return p;
  }

 private:
  long cost_of(Vertex v, int cls) const {
    long c = 0;
    const auto& own = classes_[cls];
    const auto& next = classes_[(cls + 1) % 3];
    const auto& prev = classes_[(cls + 2) % 3];
    c += own.size() - g_.out_degree(v, own);
    c += own.size() - g_.in_degree(v, own);
    c += next.size() - g_.out_degree(v, next);
    c += prev.size() - g_.in_degree(v, prev);
    return c;
  }

  void place(Vertex v, long partial) {
    if (partial >= best_) return;
    if (v == g_.order()) {
      best_ = partial;
      best_classes_ = classes_;
      return;
    }
    for (int cls = 0; cls < 3; ++cls) {
      if (classes_[cls].size() >= sizes_[cls]) continue;
      // Empty classes of equal size are interchangeable up to rotation only
      // when all three sizes agree; skip the symmetric copies for vertex 0.
      if (v == 0 && cls > 0 && sizes_[0] == sizes_[1] && sizes_[1] == sizes_[2]) break;
      const long c = cost_of(v, cls);
      classes_[cls].insert(v);
      place(v + 1, partial + c);
      classes_[cls].erase(v);
    }
  }

  const Digraph& g_;
  std::array<int, 3> sizes_;
  std::array<VertexSet, 3> classes_{};
  std::array<VertexSet, 3> best_classes_{};
  long best_ = 0;
};

inline ExPartition local_search_partition(const Digraph& g, std::array<int, 3> sizes,
                                          int restarts, std::uint64_t seed, long& best_deficit) {
  std::mt19937_64 rng(seed);
  const int n = g.order();
  best_deficit = std::numeric_limits<long>::max();
  ExPartition best;
  for (int attempt = 0; attempt < restarts; ++attempt) {
    std::vector<Vertex> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    if (attempt > 0) std::shuffle(perm.begin(), perm.end(), rng);
    ExPartition p;
    int k = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < sizes[i]; ++j) p.classes[i].insert(perm[k++]);
    long current = ex_deficit(g, p);
    bool improved = true;
    while (improved) {
      improved = false;
      for (Vertex u = 0; u < n && !improved; ++u) {
        for (Vertex v = u + 1; v < n && !improved; ++v) {
          const int cu = p.class_of(u), cv = p.class_of(v);
          if (cu == cv) continue;
          p.classes[cu].erase(u);
          p.classes[cv].erase(v);
          p.classes[cu].insert(v);
          p.classes[cv].insert(u);
          const long candidate = ex_deficit(g, p);
          if (candidate < current) {
            current = candidate;
            improved = true;
          } else {
            p.classes[cu].erase(v);
            p.classes[cv].erase(u);
            p.classes[cu].insert(u);
            p.classes[cv].insert(v);
          }
        }
      }
    }
    if (current < best_deficit) {
      best_deficit = current;
      best = p;
    }
  }
  return best;
}

}  // namespace detail

inline constexpr int kExactContainmentMaxOrder = 12;

/// Whether G alpha-contains Ex(n): some assignment of V(G) to classes of
/// Ex(n)'s sizes leaves at most alpha * n^2 arcs of Ex(n) missing. Exact mode
/// enumerates assignments with pruning and is limited to n <= 12; heuristic
/// mode runs pairwise-swap local search from `restarts` starting partitions
/// and can miss a valid assignment but never reports a false positive.
inline ExContainment alpha_contains_ex(const Digraph& g, double alpha, SearchMode mode,
                                       int restarts = 20, std::uint64_t seed = 1) {
  const int n = g.order();
  detail::require(n >= 3, "alpha containment of Ex(n) needs n >= 3");
  const auto sizes = ex_base_sizes(n);
  ExContainment result;
  if (mode == SearchMode::kExact) {
    detail::require(n <= kExactContainmentMaxOrder,
                    "exact containment search is limited to n <= 12; use heuristic mode");
    result.witness = detail::ExAssignmentSearch(g, sizes).run(result.deficit);
    result.exact = true;
  } else {
    result.witness = detail::local_search_partition(g, sizes, restarts, seed, result.deficit);
  }
  result.contains = static_cast<double>(result.deficit) <= alpha * n * n + 1e-9;
  return result;
}

}  // namespace tpack
