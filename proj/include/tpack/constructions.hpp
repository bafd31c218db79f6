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
#include <cstdint>
#include <random>
#include <vector>

#include "tpack/digraph.hpp"

namespace tpack {

/// Vertex classes of Ex_c(n). Class i sends every arc to class i+1 (mod 3)
/// and is complete inside.
struct ExPartition {
  std::array<VertexSet, 3> classes;
  int shift = 0;

  int class_of(Vertex v) const {
    for (int i = 0; i < 3; ++i)
      if (classes[i].contains(v)) return i;
    return -1;
  }
};

struct ExDigraph {
  Digraph graph;
  ExPartition partition;
};

/// Base sizes a1 <= a2 <= a3 with floor(n/3) <= a_i <= ceil(n/3).
inline std::array<int, 3> ex_base_sizes(int n) {
  const int q = n / 3;
  switch (n % 3) {
    case 0: return {q, q, q};
    case 1: return {q, q, q + 1};
    default: return {q, q + 1, q + 1};
  }
}

/// The digraph on classes of the given sizes: complete inside each class,
/// all arcs from class i to class i+1 (mod 3), nothing else. Classes occupy
/// consecutive vertex ids.
inline ExDigraph make_ex_with_sizes(const std::array<int, 3>& sizes, int shift = 0) {
  for (int s : sizes) detail::require(s >= 0, "negative class size");
  const int n = sizes[0] + sizes[1] + sizes[2];
  ExDigraph ex{Digraph(n), {}};
  ex.partition.shift = shift;
  Vertex next = 0;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < sizes[i]; ++k) ex.partition.classes[i].insert(next++);
  for (int i = 0; i < 3; ++i) {
    const auto& a = ex.partition.classes[i];
    const auto& b = ex.partition.classes[(i + 1) % 3];
    for (Vertex u : a) {
      for (Vertex v : a)
        if (u != v) ex.graph.add_arc(u, v);
      for (Vertex v : b) ex.graph.add_arc(u, v);
    }
  }
  return ex;
}

/// Ex_c(n): classes of sizes a1-c, a2+c, a3.
inline ExDigraph make_ex(int n, int c = 0) {
  detail::require(n >= 3, "Ex_c(n) needs n >= 3");
  detail::require(c >= 0, "shift c must be non-negative");
  auto a = ex_base_sizes(n);
  detail::require(a[0] - c >= 0, "shift c too large: class A1 would have negative size");
  return make_ex_with_sizes({a[0] - c, a[1] + c, a[2]}, c);
}

/// Complete digraph on n vertices with every arc inside {0, ..., n/r}
/// removed, an independent set of size n/r + 1.
inline Digraph make_near_independent_extremal(int n, int r) {
  detail::require(r >= 1 && n >= 1 && n % r == 0, "r must divide n");
  const int size = n / r + 1;
  detail::require(size <= n, "independent set larger than the vertex set");
  Digraph g = Digraph::complete(n);
  for (Vertex u = 0; u < size; ++u)
    for (Vertex v = 0; v < size; ++v)
      if (u != v) g.remove_arc(u, v);
  return g;
}

inline VertexSet near_independent_set(int n, int r) { return VertexSet::range(n / r + 1); }

/// Complete digraph on vertices 0..n-2 plus a source n-1 that sends an arc
/// to every other vertex and receives none.
inline Digraph make_source_counterexample(int n) {
  detail::require(n >= 2, "source counterexample needs n >= 2");
  Digraph g = Digraph::complete(n);
  const Vertex x = n - 1;
  for (Vertex v = 0; v < x; ++v) g.remove_arc(v, x);
  return g;
}

/// Two complete digraphs on V1 = {0..m} and V2 = {m+1..2m+2} joined by a
/// circulant bipartite tournament: the i-th vertex of V1 beats the (m+2)/2
/// consecutive V2 indices i, i+1, ... (mod m+2) and loses to the rest.
inline Digraph make_k3minus_example(int m) {
  detail::require(m > 0 && m % 6 == 0, "m must be a positive multiple of 6");
  const int n = 2 * m + 3;
  const int v2 = m + 2;
  const int beats = (v2 + 1) / 2;
  Digraph g(n);
  for (Vertex u = 0; u <= m; ++u)
    for (Vertex v = 0; v <= m; ++v)
      if (u != v) g.add_arc(u, v);
  for (Vertex u = m + 1; u < n; ++u)
    for (Vertex v = m + 1; v < n; ++v)
      if (u != v) g.add_arc(u, v);
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; j < v2; ++j) {
      const int offset = ((j - i) % v2 + v2) % v2;
      const Vertex b = m + 1 + j;
      if (offset < beats) g.add_arc(i, b);
      else g.add_arc(b, i);
    }
  }
  return g;
}

/// As-regular-as-possible tournament on the given vertices: vertex k beats
/// the next floor((a-1)/2) vertices cyclically; for even a the antipodal
/// pair is oriented from the lower half.
inline void add_rotational_tournament(Digraph& g, const std::vector<Vertex>& vs) {
  const int a = static_cast<int>(vs.size());
  for (int i = 0; i < a; ++i)
    for (int k = 1; k <= (a - 1) / 2; ++k) g.add_arc(vs[i], vs[(i + k) % a]);
  if (a % 2 == 0)
    for (int i = 0; i < a / 2; ++i) g.add_arc(vs[i], vs[i + a / 2]);
}

/// The total-degree tightness digraph for complete-digraph packings: A =
/// {0..n/r} spans a tournament, B is the rest, B is complete and every pair
/// between A and B is a double edge. delta(G) = (2 - 1/r)n - 2.
inline Digraph make_kr_total_degree_tightness(int n, int r) {
  detail::require(r >= 2 && n % r == 0 && n / r + 1 < n, "need r | n and |B| >= 1");
  const int a = n / r + 1;
  Digraph g(n);
  std::vector<Vertex> as;
  for (Vertex v = 0; v < a; ++v) as.push_back(v);
  add_rotational_tournament(g, as);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = a; v < n; ++v)
      if (u != v) {
        g.add_arc(u, v);
        g.add_arc(v, u);
      }
  return g;
}

// ---------------------------------------------------------------------------
// Seeded random instances. Generation draws a sparse random base digraph and
// repairs deficient vertices by adding random arcs; arcs are only ever added,
// so the repair terminates and keeps earlier vertices valid.

namespace detail {

inline Vertex pick(const VertexSet& s, std::mt19937_64& rng) {
  const auto v = s.to_vector();
  std::uniform_int_distribution<std::size_t> d(0, v.size() - 1);
  return v[d(rng)];
}

inline Digraph random_base(int n, double max_density, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double p = unit(rng) * max_density;
  Digraph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v && unit(rng) < p) g.add_arc(u, v);
  return g;
}

inline void raise_out(Digraph& g, Vertex v, int target, std::mt19937_64& rng) {
  while (g.out_degree(v) < target) {
    VertexSet free = g.vertices() - g.out_neighbors(v);
    free.erase(v);
    g.add_arc(v, pick(free, rng));
  }
}

inline void raise_in(Digraph& g, Vertex v, int target, std::mt19937_64& rng) {
  while (g.in_degree(v) < target) {
    VertexSet free = g.vertices() - g.in_neighbors(v);
    free.erase(v);
    g.add_arc(pick(free, rng), v);
  }
}

}  // namespace detail

/// Uniform G(n, p) digraph.
inline Digraph random_digraph(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Digraph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v && unit(rng) < p) g.add_arc(u, v);
  return g;
}

/// Random digraph with min_semidegree >= min_semi.
inline Digraph random_digraph_min_semidegree(int n, int min_semi, std::uint64_t seed) {
  detail::require(n >= 1 && min_semi >= 0 && min_semi <= n - 1,
                  "infeasible semidegree: need 0 <= delta <= n-1");
  std::mt19937_64 rng(seed);
  const double density = n > 1 ? static_cast<double>(min_semi) / (n - 1) : 0.0;
  Digraph g = detail::random_base(n, density, rng);
  for (Vertex v = 0; v < n; ++v) detail::raise_out(g, v, min_semi, rng);
  for (Vertex v = 0; v < n; ++v) detail::raise_in(g, v, min_semi, rng);
  return g;
}

/// Every vertex has d+(v) >= threshold or d-(v) >= threshold; each vertex is
/// assigned a side at random and repaired on that side only.
inline Digraph random_digraph_disjunctive(int n, int threshold, std::uint64_t seed) {
  detail::require(n >= 1 && threshold >= 0 && threshold <= n - 1,
                  "infeasible degree threshold: need 0 <= t <= n-1");
  std::mt19937_64 rng(seed);
  const double density = n > 1 ? static_cast<double>(threshold) / (n - 1) : 0.0;
  Digraph g = detail::random_base(n, density, rng);
  std::bernoulli_distribution coin(0.5);
  std::vector<bool> out_side(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) out_side[v] = coin(rng);
  for (Vertex v = 0; v < n; ++v) {
    if (g.out_degree(v) >= threshold || g.in_degree(v) >= threshold) continue;
    if (out_side[v]) detail::raise_out(g, v, threshold, rng);
    else detail::raise_in(g, v, threshold, rng);
  }
  return g;
}

/// ceil(2n/3): the integer form of "d >= 2n/3".
inline int two_thirds_threshold(int n) { return (2 * n + 2) / 3; }

/// Condition (d+(x) >= 2n/3 or d-(x) >= 2n/3) for every x.
inline Digraph random_digraph_cond_4_1(int n, std::uint64_t seed) {
  detail::require(n >= 3, "the 2n/3 disjunctive condition needs n >= 3");
  return random_digraph_disjunctive(n, two_thirds_threshold(n), seed);
}

/// Random digraph with total_min_degree >= min_total.
inline Digraph random_digraph_min_total_degree(int n, int min_total, std::uint64_t seed) {
  detail::require(n >= 1 && min_total >= 0 && min_total <= 2 * (n - 1),
                  "infeasible total degree: need 0 <= delta <= 2(n-1)");
  std::mt19937_64 rng(seed);
  const double density = n > 1 ? static_cast<double>(min_total) / (2.0 * (n - 1)) : 0.0;
  Digraph g = detail::random_base(n, density, rng);
  std::bernoulli_distribution coin(0.5);
  for (Vertex v = 0; v < n; ++v) {
    while (g.degree(v) < min_total) {
      VertexSet free_out = g.vertices() - g.out_neighbors(v);
      VertexSet free_in = g.vertices() - g.in_neighbors(v);
      free_out.erase(v);
      free_in.erase(v);
      const bool use_out = free_in.empty() || (!free_out.empty() && coin(rng));
      if (use_out) g.add_arc(v, detail::pick(free_out, rng));
      else g.add_arc(detail::pick(free_in, rng), v);
    }
  }
  return g;
}

}  // namespace tpack
