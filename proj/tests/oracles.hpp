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

// Naive reference implementations used as test oracles. They share no search
// code with the library: plain permutations, subsets and recursion.

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "tpack/digraph.hpp"

namespace tpack::oracle {

/// Adjacency matrix copy of a digraph.
inline std::vector<std::vector<bool>> matrix(const Digraph& g) {
  const int n = g.order();
  std::vector<std::vector<bool>> m(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) m[u][v] = g.has_arc(u, v);
  return m;
}

/// True when some ordering of `xs` carries every pattern arc.
inline bool spans(const Digraph& g, std::vector<Vertex> xs, const Pattern& t) {
  if (static_cast<int>(xs.size()) != t.order()) return false;
  std::sort(xs.begin(), xs.end());
  do {
    bool ok = true;
    for (auto [a, b] : t.arcs())
      if (!g.has_arc(xs[static_cast<std::size_t>(a)], xs[static_cast<std::size_t>(b)])) {
        ok = false;
        break;
      }
    if (ok) return true;
  } while (std::next_permutation(xs.begin(), xs.end()));
  return false;
}

/// Number of r-subsets spanning t.
inline long count_spanning_sets(const Digraph& g, const Pattern& t) {
  const int n = g.order(), r = t.order();
  long count = 0;
  std::vector<int> sel(static_cast<std::size_t>(n), 0);
  std::fill(sel.end() - r, sel.end(), 1);
  do {
    std::vector<Vertex> xs;
    for (int v = 0; v < n; ++v)
      if (sel[static_cast<std::size_t>(v)]) xs.push_back(v);
    if (spans(g, xs, t)) ++count;
  } while (std::next_permutation(sel.begin(), sel.end()));
  return count;
}

namespace detail {

inline int max_disjoint(const Digraph& g, const std::vector<Pattern>& family, std::vector<bool>& used,
                        int from) {
  const int n = g.order();
  while (from < n && used[static_cast<std::size_t>(from)]) ++from;
  if (from >= n) return 0;
  // Either `from` is left uncovered or it lies in a block with later vertices.
  used[static_cast<std::size_t>(from)] = true;
  int best = max_disjoint(g, family, used, from + 1);
  const int r = family.front().order();
  std::vector<Vertex> rest;
  for (int v = from + 1; v < n; ++v)
    if (!used[static_cast<std::size_t>(v)]) rest.push_back(v);
  if (static_cast<int>(rest.size()) >= r - 1) {
    std::vector<int> sel(rest.size(), 0);
    std::fill(sel.end() - (r - 1), sel.end(), 1);
    do {
      std::vector<Vertex> xs{from};
      for (std::size_t i = 0; i < rest.size(); ++i)
        if (sel[i]) xs.push_back(rest[i]);
      bool hit = false;
      for (const auto& t : family) hit = hit || spans(g, xs, t);
      if (!hit) continue;
      for (std::size_t k = 1; k < xs.size(); ++k) used[static_cast<std::size_t>(xs[k])] = true;
      best = std::max(best, 1 + max_disjoint(g, family, used, from + 1));
      for (std::size_t k = 1; k < xs.size(); ++k) used[static_cast<std::size_t>(xs[k])] = false;
    } while (std::next_permutation(sel.begin(), sel.end()));
  }
  used[static_cast<std::size_t>(from)] = false;
  return best;
}

}  // namespace detail

/// Maximum number of disjoint r-sets each spanning some member of `family`,
/// by enumerating all set partitions into blocks and leftovers.
inline int max_packing_size(const Digraph& g, const std::vector<Pattern>& family) {
  std::vector<bool> used(static_cast<std::size_t>(g.order()), false);
  return detail::max_disjoint(g, family, used, 0);
}

inline bool has_perfect_packing(const Digraph& g, const std::vector<Pattern>& family) {
  const int r = family.front().order();
  return g.order() % r == 0 && max_packing_size(g, family) * r == g.order();
}

/// Uniform random digraph with arc probability p.
inline Digraph random_digraph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Digraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && coin(rng)) g.add_arc(u, v);
  return g;
}

/// Symmetric random graph with edge probability p.
inline Digraph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Digraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) {
        g.add_arc(u, v);
        g.add_arc(v, u);
      }
  return g;
}

inline int min_semidegree(const Digraph& g) {
  const auto m = matrix(g);
  const int n = g.order();
  int best = n;
  for (int v = 0; v < n; ++v) {
    int out = 0, in = 0;
    for (int u = 0; u < n; ++u) {
      out += m[v][u];
      in += m[u][v];
    }
    best = std::min({best, out, in});
  }
  return best;
}

}  // namespace tpack::oracle
