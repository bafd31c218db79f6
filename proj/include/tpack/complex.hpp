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

// The layered hypergraph of a host/pattern pair: layer i holds the i-sets
// spanning some i-vertex subtournament of the pattern. Edges are bitmasks,
// so hosts are limited to 64 vertices.

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "tpack/digraph.hpp"
#include "tpack/packing.hpp"

namespace tpack {

using EdgeMask = std::uint64_t;

struct Complex {
  Digraph host{0};
  Pattern pattern;
  /// layers[i] holds the i-edges, sorted ascending; layers[0] = {0}.
  std::vector<std::vector<EdgeMask>> layers;

  int k() const { return static_cast<int>(layers.size()) - 1; }
  int order() const { return host.order(); }
  bool contains(EdgeMask e) const {
    const auto& layer = layers[static_cast<std::size_t>(std::popcount(e))];
    return std::binary_search(layer.begin(), layer.end(), e);
  }
};

inline constexpr int kComplexMaxOrder = 64;

/// Distinct i-vertex subtournaments of `t`, one per isomorphism class.
inline std::vector<Pattern> subpatterns_of_order(const Pattern& t, int i) {
  std::vector<Pattern> result;
  std::vector<std::uint64_t> codes;
  const int r = t.order();
  for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
    if (std::popcount(mask) != i) continue;
    std::vector<int> vs;
    for (int p = 0; p < r; ++p)
      if ((mask >> p) & 1u) vs.push_back(p);
    Pattern sub = t.induced(vs);
    const auto code = sub.canonical_code();
    if (std::find(codes.begin(), codes.end(), code) != codes.end()) continue;
    codes.push_back(code);
    result.push_back(std::move(sub));
  }
  return result;
}

/// Layer i+1 is grown from layer i by adding a vertex above the current
/// maximum: every (i+1)-set spanning a subtournament has its maximum-free
/// subset in layer i, so nothing is missed.
inline Complex build_complex(const Digraph& g, const Pattern& t) {
  detail::require(g.order() <= kComplexMaxOrder, "complexes support hosts of order <= 64");
  const int r = t.order();
  Complex j{g, t, {}};
  j.layers.resize(static_cast<std::size_t>(r + 1));
  j.layers[0] = {0};
  const bool adjacent_only = t.pairwise_adjacent();
  for (int i = 0; i < r; ++i) {
    const auto family = subpatterns_of_order(t, i + 1);
    auto& next = j.layers[static_cast<std::size_t>(i + 1)];
    for (EdgeMask e : j.layers[static_cast<std::size_t>(i)]) {
      const VertexSet base = VertexSet::from_mask(e);
      const Vertex top = base.last();
      for (Vertex v = top + 1; v < g.order(); ++v) {
        if (adjacent_only && !base.is_subset_of(g.neighbors(v))) continue;
        VertexSet grown = base;
        grown.insert(v);
        if (spans_any(g, grown, family)) next.push_back(grown.low_mask());
      }
    }
    std::sort(next.begin(), next.end());
  }
  return j;
}

/// Checks that every i-edge minus any vertex is an (i-1)-edge.
inline bool is_downward_closed(const Complex& j) {
  for (std::size_t i = 1; i < j.layers.size(); ++i)
    for (EdgeMask e : j.layers[i])
      for (EdgeMask rest = e; rest; rest &= rest - 1)
        if (!j.contains(e & ~(rest & -rest))) return false;
  return true;
}

/// delta_i = min over i-edges e of the number of (i+1)-edges containing e,
/// for i = 0 .. k-1. An empty layer has delta 0.
inline std::vector<int> degree_sequence(const Complex& j) {
  const int k = j.k();
  std::vector<int> delta(static_cast<std::size_t>(std::max(k, 0)), 0);
  for (int i = 0; i < k; ++i) {
    const auto& layer = j.layers[static_cast<std::size_t>(i)];
    const auto& upper = j.layers[static_cast<std::size_t>(i + 1)];
    detail::ensure(!layer.empty() || upper.empty(), "complex is not downward closed");
    if (layer.empty()) continue;
    std::unordered_map<EdgeMask, int> up;
    up.reserve(layer.size() * 2);
    for (EdgeMask e : layer) up.emplace(e, 0);
    for (EdgeMask f : upper)
      for (EdgeMask rest = f; rest; rest &= rest - 1) ++up[f & ~(rest & -rest)];
    int best = std::numeric_limits<int>::max();
    for (EdgeMask e : layer) best = std::min(best, up[e]);
    delta[static_cast<std::size_t>(i)] = best;
  }
  return delta;
}

struct KmCheck {
  bool holds = true;
  /// First layer i with delta_i below its bound, or -1.
  int failing_layer = -1;
  std::vector<int> degrees;
  std::vector<double> bounds;
};

/// delta_0 >= n and delta_i >= (1 - i/k - eps) n for 1 <= i <= k-1.
inline KmCheck check_km_hypothesis(const Complex& j, double eps) {
  KmCheck out;
  out.degrees = degree_sequence(j);
  const int k = j.k();
  const double n = j.order();
  for (int i = 0; i < k; ++i) {
    const double bound = i == 0 ? n : (1.0 - static_cast<double>(i) / k - eps) * n;
    out.bounds.push_back(bound);
    if (out.holds && out.degrees[static_cast<std::size_t>(i)] + 1e-9 < bound) {
      out.holds = false;
      out.failing_layer = i;
    }
  }
  return out;
}

/// Top-layer edges with more than j vertices in S: the edges that block
/// containment of J_k in J(S, j)_k under the identity alignment.
inline std::int64_t restricted_deficit(const Complex& j, const VertexSet& s, int jmax) {
  detail::require(jmax >= 1 && jmax <= j.k() - 1, "restriction level must satisfy 1 <= j <= k-1");
  const EdgeMask sm = s.low_mask();
  std::int64_t count = 0;
  for (EdgeMask e : j.layers.back())
    if (std::popcount(e & sm) > jmax) ++count;
  return count;
}

enum class MatchingMode { kGreedy, kExact };

/// Greedy: first-fit over the sorted top layer, hence maximal. Exact: a
/// maximum pattern packing of the host, read back as edges.
inline std::vector<EdgeMask> top_layer_matching(const Complex& j, MatchingMode mode,
                                                std::uint64_t budget = kDefaultNodeBudget) {
  std::vector<EdgeMask> matching;
  if (mode == MatchingMode::kGreedy) {
    EdgeMask used = 0;
    for (EdgeMask e : j.layers.back())
      if (!(e & used)) {
        matching.push_back(e);
        used |= e;
      }
    return matching;
  }
  const auto best = find_max_packing(j.host, j.pattern, budget);
  for (const auto& e : best.packing.elements) matching.push_back(e.vertex_set().low_mask());
  std::sort(matching.begin(), matching.end());
  return matching;
}

inline bool is_matching(const Complex& j, const std::vector<EdgeMask>& m) {
  EdgeMask used = 0;
  for (EdgeMask e : m) {
    if ((e & used) || std::popcount(e) != j.k() || !j.contains(e)) return false;
    used |= e;
  }
  return true;
}

/// Each top-layer edge spans a copy of the pattern; one embedding per edge.
inline Packing matching_to_packing(const Complex& j, const std::vector<EdgeMask>& m) {
  detail::require(is_matching(j, m), "not a matching of the top layer");
  Packing p;
  p.host_order = j.order();
  for (EdgeMask e : m) {
    auto emb = spans_copy(j.host, VertexSet::from_mask(e), j.pattern);
    detail::ensure(emb.has_value(), "top-layer edge spans no copy of the pattern");
    p.elements.push_back(std::move(*emb));
  }
  return p;
}

inline std::vector<EdgeMask> packing_to_matching(const Packing& p) {
  std::vector<EdgeMask> m;
  for (const auto& e : p.elements) m.push_back(e.vertex_set().low_mask());
  return m;
}

}  // namespace tpack
