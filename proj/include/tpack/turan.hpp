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

// Turan-type dichotomies: dense digraphs contain K_r, and hosts of high
// semidegree either contain a given tournament or a large independent set.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tpack/digraph.hpp"
#include "tpack/packing.hpp"

namespace tpack {

namespace detail {

/// Lowest-index r-clique of the symmetric relation `adj` inside `domain`.
inline bool extend_clique(const Digraph& adj, VertexSet candidates, int r,
                          std::vector<Vertex>& chosen) {
  if (static_cast<int>(chosen.size()) == r) return true;
  for (Vertex v : candidates) {
    VertexSet next = candidates & adj.out_neighbors(v);
    for (Vertex w : candidates) {
      if (w > v) break;
      next.erase(w);
    }
    if (next.size() < r - static_cast<int>(chosen.size()) - 1) continue;
    chosen.push_back(v);
    if (extend_clique(adj, next, r, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

inline double semidegree_slack() { return 1e-9; }

}  // namespace detail

/// An r-set of `domain` inducing a complete digraph in G (double edges
/// throughout), lowest vertices first.
inline std::optional<VertexSet> find_complete_subdigraph(const Digraph& g, const VertexSet& domain,
                                                         int r) {
  detail::require(r >= 1, "clique order must be positive");
  const Digraph doubles = double_edge_graph(g);
  std::vector<Vertex> chosen;
  if (!detail::extend_clique(doubles, domain, r, chosen)) return std::nullopt;
  return VertexSet(std::span<const Vertex>(chosen));
}

/// e(G) > (1 - 1/(r-1)) n^2 / 2 + C(n, 2), compared in integers.
inline bool satisfies_density_bound(const Digraph& g, int r) {
  const long n = g.order();
  const long lhs = 2L * (r - 1) * g.arc_count();
  const long rhs = static_cast<long>(r - 2) * n * n + static_cast<long>(r - 1) * n * (n - 1);
  return lhs > rhs;
}

/// A copy of K_r, found as a clique of the double-edge graph.
inline VertexSet find_kr_from_density(const Digraph& g, int r) {
  detail::require(r >= 2, "find_kr_from_density needs r >= 2");
  detail::require(satisfies_density_bound(g, r),
                  "edge count does not exceed (1 - 1/(r-1)) n^2/2 + C(n,2)");
  auto clique = find_complete_subdigraph(g, g.vertices(), r);
  detail::ensure(clique.has_value(), "dense digraph without K_r contradicts Turan's theorem");
  return *clique;
}

/// Number of r-sets of V(G) that span a copy of `t`.
inline std::int64_t count_copies(const Digraph& g, const Pattern& t) {
  return static_cast<std::int64_t>(
      enumerate_blocks(g, g.vertices(), std::span<const Pattern>(&t, 1)).size());
}

// ---------------------------------------------------------------------------

/// Candidates for the endpoints a, b of the lexicographically least arc ab of
/// T, relative to a fixed copy of T - {a, b}.
struct CandidateSets {
  VertexSet a;
  VertexSet b;
};

struct IndependentOrCopy {
  enum class Kind { kCopy, kIndependentSet };
  Kind kind = Kind::kIndependentSet;
  std::optional<Embedding> copy;
  VertexSet independent;
  /// Arc ab of T and the copy of the remaining pattern vertices (pattern
  /// vertex order) the candidates refer to.
  Arc ab{-1, -1};
  std::vector<int> rest;
  std::vector<Vertex> base;
  CandidateSets candidates;
  /// True when the copy was found as K_r inside A \ B.
  bool from_dense_part = false;
  /// (1/(r-1) - 2 r^2 alpha) n.
  double guaranteed_size = 0.0;
};

namespace detail {

/// Lowest-index copy of `t` in G with pattern vertex i sent to image[i].
inline bool extend_copy(const Digraph& g, const Pattern& t, std::vector<Vertex>& image,
                        VertexSet used) {
  const int k = static_cast<int>(image.size());
  if (k == t.order()) return true;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (used.contains(v)) continue;
    bool ok = true;
    for (int j = 0; j < k && ok; ++j) {
      if (t.has_arc(k, j) && !g.has_arc(v, image[j])) ok = false;
      if (t.has_arc(j, k) && !g.has_arc(image[j], v)) ok = false;
    }
    if (!ok) continue;
    image.push_back(v);
    used.insert(v);
    if (extend_copy(g, t, image, used)) return true;
    used.erase(v);
    image.pop_back();
  }
  return false;
}

/// Vertices v with: p -> rest[i] in T implies v -> base[i] in G, and
/// rest[i] -> p implies base[i] -> v.
inline VertexSet candidates_for(const Digraph& g, const Pattern& t, int p,
                                const std::vector<int>& rest, const std::vector<Vertex>& base) {
  VertexSet s = g.vertices();
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (t.has_arc(p, rest[i])) s &= g.in_neighbors(base[i]);
    if (t.has_arc(rest[i], p)) s &= g.out_neighbors(base[i]);
  }
  return s;
}

}  // namespace detail

/// Either a copy of the tournament T or an independent set A and B share.
/// Requires delta0(G) >= (1 - 1/(r-1) - alpha) n.
inline IndependentOrCopy independent_or_copy(const Digraph& g, const Pattern& t, double alpha) {
  const int r = t.order();
  const int n = g.order();
  detail::require(r >= 3 && t.is_tournament(), "independent_or_copy needs a tournament, r >= 3");
  detail::require(n >= 1, "empty host");
  const double bound = (1.0 - 1.0 / (r - 1) - alpha) * n;
  detail::require(min_semidegree(g) + detail::semidegree_slack() >= bound,
                  "minimum semidegree below (1 - 1/(r-1) - alpha) n");

  IndependentOrCopy out;
  out.ab = t.arcs().front();
  const auto [a, b] = out.ab;
  for (int p = 0; p < r; ++p)
    if (p != a && p != b) out.rest.push_back(p);
  const Pattern sub = t.induced(out.rest);
  detail::ensure(detail::extend_copy(g, sub, out.base, VertexSet{}),
                 "no copy of T minus an arc's endpoints");

  out.candidates.a = detail::candidates_for(g, t, a, out.rest, out.base);
  out.candidates.b = detail::candidates_for(g, t, b, out.rest, out.base);
  const auto& big_a = out.candidates.a;
  const auto& big_b = out.candidates.b;

  auto finish_copy = [&](Vertex va, Vertex vb) {
    std::vector<Vertex> image(static_cast<std::size_t>(r));
    for (std::size_t i = 0; i < out.rest.size(); ++i) image[out.rest[i]] = out.base[i];
    image[a] = va;
    image[b] = vb;
    out.kind = IndependentOrCopy::Kind::kCopy;
    out.copy = Embedding{t, std::move(image)};
  };

  for (Vertex u : big_a) {
    const VertexSet hits = g.out_neighbors(u) & big_b;
    if (!hits.empty()) {
      finish_copy(u, hits.first());
      return out;
    }
  }

  const VertexSet a_only = big_a - big_b;
  if (a_only.size() >= 2.0 * (r - 1) * (r - 1) * alpha * n) {
    if (auto k = find_complete_subdigraph(g, a_only, r)) {
      out.kind = IndependentOrCopy::Kind::kCopy;
      out.copy = Embedding{t, k->to_vector()};
      out.from_dense_part = true;
      return out;
    }
  }

  out.independent = big_a & big_b;
  out.guaranteed_size = (1.0 / (r - 1) - 2.0 * r * r * alpha) * n;
  detail::ensure(g.arc_count_within(out.independent) == 0, "A and B share an arc");
  detail::ensure(out.independent.size() + detail::semidegree_slack() >= out.guaranteed_size,
                 "independent set " + std::to_string(out.independent.size()) +
                     " below the guaranteed size");
  return out;
}

// ---------------------------------------------------------------------------

/// A transitive tournament x_1 -> ... -> x_k (earlier beats later) whose
/// first `turning_point` vertices have out-degree at least theta and the
/// rest in-degree at least theta.
struct ConsistentTransitive {
  std::vector<Vertex> order;
  int turning_point = 0;
};

inline bool is_consistent(const Digraph& g, const ConsistentTransitive& c, double theta) {
  const int k = static_cast<int>(c.order.size());
  if (c.turning_point < 0 || c.turning_point > k) return false;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (!g.has_arc(c.order[i], c.order[j])) return false;
  for (int i = 0; i < k; ++i) {
    const Vertex x = c.order[i];
    const double d = i < c.turning_point ? g.out_degree(x) : g.in_degree(x);
    if (d + detail::semidegree_slack() < theta) return false;
  }
  return true;
}

struct ConsistentOrIndependent {
  enum class Kind { kCopy, kIndependentSet };
  Kind kind = Kind::kIndependentSet;
  std::optional<Embedding> copy;
  VertexSet independent;
  /// Consistent tournaments of orders 1 .. r-2, in construction order.
  std::vector<ConsistentTransitive> steps;
  /// Common neighbourhood N of the final consistent tournament.
  VertexSet common;
  double theta = 0.0;
  /// (1/(r-1) - r alpha) n.
  double guaranteed_size = 0.0;
};

/// Either a copy of T_r or an independent set, under the disjunctive bound
/// d+(x) >= theta or d-(x) >= theta with theta = (1 - 1/(r-1) - alpha) n.
inline ConsistentOrIndependent consistent_or_independent(const Digraph& g, int r, double alpha) {
  const int n = g.order();
  detail::require(r >= 3 && r <= Pattern::kMaxOrder, "consistent_or_independent needs 3 <= r <= 8");
  detail::require(n >= 1, "empty host");
  ConsistentOrIndependent out;
  out.theta = (1.0 - 1.0 / (r - 1) - alpha) * n;
  const double theta = out.theta;
  auto high_out = [&](Vertex v) { return g.out_degree(v) + detail::semidegree_slack() >= theta; };
  auto high_in = [&](Vertex v) { return g.in_degree(v) + detail::semidegree_slack() >= theta; };
  for (Vertex v = 0; v < n; ++v)
    detail::require(high_out(v) || high_in(v),
                    "vertex " + std::to_string(v) + " has both degrees below theta");

  auto common_of = [&](const ConsistentTransitive& c) {
    VertexSet s = g.vertices();
    for (int i = 0; i < static_cast<int>(c.order.size()); ++i)
      s &= i < c.turning_point ? g.out_neighbors(c.order[i]) : g.in_neighbors(c.order[i]);
    return s;
  };

  ConsistentTransitive current{{0}, high_out(0) ? 1 : 0};
  out.steps.push_back(current);
  while (static_cast<int>(current.order.size()) < r - 2) {
    const VertexSet next = common_of(current);
    detail::ensure(!next.empty(), "no vertex extends the consistent tournament");
    const Vertex x = next.first();
    const int s = current.turning_point;
    current.order.insert(current.order.begin() + s, x);
    current.turning_point = high_out(x) ? s + 1 : s;
    detail::ensure(is_consistent(g, current, theta), "insertion broke consistency");
    out.steps.push_back(current);
  }

  out.common = common_of(current);
  for (Vertex x : out.common) {
    const VertexSet hits = g.out_neighbors(x) & out.common;
    if (hits.empty()) continue;
    std::vector<Vertex> image(current.order.begin(), current.order.begin() + current.turning_point);
    image.push_back(x);
    image.push_back(hits.first());
    image.insert(image.end(), current.order.begin() + current.turning_point, current.order.end());
    out.kind = ConsistentOrIndependent::Kind::kCopy;
    out.copy = Embedding{Pattern::transitive(r), std::move(image)};
    detail::ensure(out.copy->is_valid_in(g), "assembled T_r is not a copy");
    return out;
  }
  out.independent = out.common;
  out.guaranteed_size = (1.0 / (r - 1) - r * alpha) * n;
  detail::ensure(out.independent.size() + detail::semidegree_slack() >= out.guaranteed_size,
                 "independent set " + std::to_string(out.independent.size()) +
                     " below the guaranteed size");
  return out;
}

}  // namespace tpack
