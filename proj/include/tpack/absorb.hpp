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

// Connectors between vertex pairs and absorbing families: disjoint vertex
// sets that can swallow any small leftover set into a perfect packing.

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "tpack/digraph.hpp"
#include "tpack/packing.hpp"

namespace tpack {

/// S absorbs Q when G[S] and G[S u Q] both have perfect T-packings. A solver
/// run that exhausts `budget` counts as not absorbing.
inline bool is_absorbing(const Digraph& g, const Pattern& t, const VertexSet& s, const VertexSet& q,
                         std::uint64_t budget = kDefaultNodeBudget) {
  detail::require(!s.intersects(q), "absorbing set and absorbed set overlap");
  const int r = t.order();
  const VertexSet both = s | q;
  if (s.size() % r != 0 || both.size() % r != 0) return false;
  if (find_perfect_packing(g, t, s, budget).verdict != Verdict::kPacked) return false;
  return find_perfect_packing(g, t, both, budget).verdict == Verdict::kPacked;
}

struct ConnectorCount {
  std::int64_t count = 0;
  bool cap_hit = false;
  /// Up to `keep` qualifying sets in enumeration order.
  std::vector<VertexSet> samples;
  /// Estimated number of qualifying sets from uniform sampling, when asked.
  std::optional<double> density_estimate;
};

namespace detail {

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

inline VertexSet random_subset(const VertexSet& from, int size, std::mt19937_64& rng) {
  auto pool = from.to_vector();
  VertexSet out;
  for (int i = 0; i < size; ++i) {
    std::uniform_int_distribution<std::size_t> d(static_cast<std::size_t>(i), pool.size() - 1);
    std::swap(pool[static_cast<std::size_t>(i)], pool[d(rng)]);
    out.insert(pool[static_cast<std::size_t>(i)]);
  }
  return out;
}

inline bool is_connector(const Digraph& g, const Pattern& t, const VertexSet& x_set, Vertex x,
                         Vertex y) {
  VertexSet with_x = x_set, with_y = x_set;
  with_x.insert(x);
  with_y.insert(y);
  return spans_copy(g, with_x, t).has_value() && spans_copy(g, with_y, t).has_value();
}

/// Calls `visit` on every `size`-subset of `pool` in lexicographic order
/// until it returns false. When `adj` is given, only sets that are pairwise
/// adjacent in it are visited.
template <typename Visit>
bool for_each_subset(const VertexSet& pool, int size, const Digraph* adj, Visit&& visit) {
  VertexSet current;
  auto rec = [&](auto&& self, VertexSet candidates, int left) -> bool {
    if (left == 0) return visit(current);
    for (Vertex v : candidates) {
      VertexSet next = candidates;
      for (Vertex w : candidates) {
        if (w > v) break;
        next.erase(w);
      }
      if (adj) next &= adj->out_neighbors(v);
      if (next.size() < left - 1) continue;
      current.insert(v);
      const bool go_on = self(self, next, left - 1);
      current.erase(v);
      if (!go_on) return false;
    }
    return true;
  };
  return rec(rec, pool, size);
}

}  // namespace detail

/// (r-1)-sets X of V \ {x, y} with X u {x} and X u {y} both spanning T,
/// enumerated exactly up to `cap`. With `estimate_samples` > 0, also
/// estimates the total from that many uniform (r-1)-sets.
inline ConnectorCount count_connectors(const Digraph& g, const Pattern& t, Vertex x, Vertex y,
                                       std::int64_t cap = std::numeric_limits<std::int64_t>::max(),
                                       std::size_t keep = 8, int estimate_samples = 0,
                                       std::uint64_t seed = 1) {
  detail::require(x != y, "connector endpoints must differ");
  detail::require(x >= 0 && y >= 0 && x < g.order() && y < g.order(), "endpoint out of range");
  const int r = t.order();
  ConnectorCount out;
  VertexSet pool = g.vertices();
  pool.erase(x);
  pool.erase(y);
  const Digraph shadow = underlying_graph(g);
  const bool adjacent_only = t.pairwise_adjacent();
  const VertexSet search_pool = adjacent_only ? (pool & shadow.out_neighbors(x) & shadow.out_neighbors(y)) : pool;
  detail::for_each_subset(search_pool, r - 1, adjacent_only ? &shadow : nullptr,
                          [&](const VertexSet& xs) {
                            if (!detail::is_connector(g, t, xs, x, y)) return true;
                            if (out.samples.size() < keep) out.samples.push_back(xs);
                            if (++out.count >= cap) {
                              out.cap_hit = true;
                              return false;
                            }
                            return true;
                          });
  if (estimate_samples > 0 && pool.size() >= r - 1) {
    std::mt19937_64 rng(seed);
    int hits = 0;
    for (int i = 0; i < estimate_samples; ++i)
      if (detail::is_connector(g, t, detail::random_subset(pool, r - 1, rng), x, y)) ++hits;
    out.density_estimate =
        static_cast<double>(hits) / estimate_samples * detail::binomial(pool.size(), r - 1);
  }
  return out;
}

/// Whether the 6-set splits into two vertex-disjoint C3's (all 10 splits).
inline bool splits_into_two_c3(const Digraph& g, const VertexSet& six) {
  detail::require(six.size() == 6, "expected a 6-set");
  const auto v = six.to_vector();
  const Pattern c3 = Pattern::cyclic_triangle();
  for (int i = 1; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) {
      const VertexSet first{v[0], v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)]};
      if (spans_copy(g, first, c3) && spans_copy(g, six - first, c3)) return true;
    }
  return false;
}

/// 5-sets X of V \ {x, y} with X u {x} and X u {y} both spanning 2C3.
inline ConnectorCount count_connectors_2c3(
    const Digraph& g, Vertex x, Vertex y,
    std::int64_t cap = std::numeric_limits<std::int64_t>::max(), std::size_t keep = 8) {
  detail::require(x != y, "connector endpoints must differ");
  detail::require(g.order() >= 7, "2C3 connectors need n >= 7");
  ConnectorCount out;
  VertexSet pool = g.vertices();
  pool.erase(x);
  pool.erase(y);
  detail::for_each_subset(pool, 5, nullptr, [&](const VertexSet& xs) {
    VertexSet with_x = xs, with_y = xs;
    with_x.insert(x);
    with_y.insert(y);
    if (!splits_into_two_c3(g, with_x) || !splits_into_two_c3(g, with_y)) return true;
    if (out.samples.size() < keep) out.samples.push_back(xs);
    if (++out.count >= cap) {
      out.cap_hit = true;
      return false;
    }
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------

struct AbsorberOptions {
  /// Absorber size; 0 selects 2 r^2.
  int absorber_size = 0;
  /// Uniform candidate sets drawn.
  int candidates = 64;
  /// Probe r-sets drawn per candidate.
  int probes = 8;
  /// Probes a candidate must absorb to be kept.
  int threshold = 1;
  std::uint64_t budget = 1'000'000;
};

struct AbsorberFamily {
  Pattern pattern;
  int absorber_size = 0;
  double xi = 0.0;
  /// Pairwise disjoint absorbers in seed order.
  std::vector<VertexSet> sets;
  /// hits[i]: probe sets absorbed by sets[i].
  std::vector<std::vector<VertexSet>> hits;
  int candidates_drawn = 0;
  int candidates_absorbing = 0;

  VertexSet cover() const {
    VertexSet m;
    for (const auto& s : sets) m |= s;
    return m;
  }
};

/// Draws candidate absorbers uniformly, keeps those absorbing at least
/// `threshold` of their probe r-sets, drops any candidate meeting an earlier
/// kept one, and truncates so the union has at most xi * n vertices.
inline AbsorberFamily build_absorbing_family(const Digraph& g, const Pattern& t, double xi,
                                             std::uint64_t seed, AbsorberOptions options = {}) {
  const int n = g.order();
  const int r = t.order();
  detail::require(r * r * 4 <= n, "absorbing families need r^2 <= n/4");
  detail::require(xi > 0 && xi <= 1, "xi must lie in (0, 1]");
  const int size = options.absorber_size > 0 ? options.absorber_size : 2 * r * r;
  detail::require(size % r == 0, "absorber size must be a multiple of r");
  detail::require(size + r <= n, "absorber size too large for the host");
  detail::require(options.candidates > 0 && options.probes > 0 && options.threshold >= 1,
                  "candidate, probe and threshold counts must be positive");

  AbsorberFamily family;
  family.pattern = t;
  family.absorber_size = size;
  family.xi = xi;
  std::mt19937_64 rng(seed);
  const VertexSet all = g.vertices();
  VertexSet used;
  const int max_sets = static_cast<int>(xi * n + 1e-9) / size;
  for (int c = 0; c < options.candidates; ++c) {
    const VertexSet s = detail::random_subset(all, size, rng);
    ++family.candidates_drawn;
    std::vector<VertexSet> absorbed;
    for (int p = 0; p < options.probes; ++p) {
      const VertexSet q = detail::random_subset(all - s, r, rng);
      if (is_absorbing(g, t, s, q, options.budget)) absorbed.push_back(q);
    }
    if (static_cast<int>(absorbed.size()) < options.threshold) continue;
    ++family.candidates_absorbing;
    if (s.intersects(used) || static_cast<int>(family.sets.size()) >= max_sets) continue;
    used |= s;
    family.sets.push_back(s);
    family.hits.push_back(std::move(absorbed));
  }
  if (family.sets.empty())
    throw FamilyEmpty("no usable absorber: " + std::to_string(family.candidates_absorbing) +
                      " of " + std::to_string(family.candidates_drawn) +
                      " candidates absorbing, room for " + std::to_string(max_sets) +
                      " sets of size " + std::to_string(size));
  return family;
}

/// Disjointness, |M| <= xi n, every set absorbing a recorded probe, and a
/// perfect packing of G[M].
inline bool check_family(const Digraph& g, const AbsorberFamily& f) {
  VertexSet seen;
  for (std::size_t i = 0; i < f.sets.size(); ++i) {
    if (f.sets[i].intersects(seen)) return false;
    seen |= f.sets[i];
    if (f.hits[i].empty() || !is_absorbing(g, f.pattern, f.sets[i], f.hits[i].front()))
      return false;
  }
  if (seen.size() > f.xi * g.order() + 1e-9) return false;
  return find_perfect_packing(g, f.pattern, seen).verdict == Verdict::kPacked;
}

namespace detail {

/// Kuhn's augmenting paths; match[j] is the piece assigned to absorber j.
inline bool kuhn(std::size_t piece, const std::vector<std::vector<std::size_t>>& adj,
                 std::vector<int>& match, std::vector<bool>& seen) {
  for (std::size_t j : adj[piece]) {
    if (seen[j]) continue;
    seen[j] = true;
    if (match[j] < 0 || kuhn(static_cast<std::size_t>(match[j]), adj, match, seen)) {
      match[j] = static_cast<int>(piece);
      return true;
    }
  }
  return false;
}

inline void append(Packing& into, const PackingCertificate& cert, const std::string& what) {
  detail::ensure(cert.verdict == Verdict::kPacked, what);
  for (const auto& e : cert.packing->elements) into.elements.push_back(e);
}

}  // namespace detail

/// Perfect T-packing of G[M u W]: W is cut into consecutive r-sets in
/// ascending order, each piece goes to a distinct absorber absorbing it, and
/// the remaining absorbers are packed on their own.
inline Packing absorb(const Digraph& g, const AbsorberFamily& f, const VertexSet& w,
                      std::uint64_t budget = kDefaultNodeBudget) {
  const Pattern& t = f.pattern;
  const int r = t.order();
  detail::require(!w.intersects(f.cover()), "W meets the absorbing family");
  detail::require(w.size() % r == 0, "r must divide |W|");
  std::vector<VertexSet> pieces;
  {
    const auto ws = w.to_vector();
    for (std::size_t i = 0; i < ws.size(); i += static_cast<std::size_t>(r))
      pieces.emplace_back(std::span<const Vertex>(ws.data() + i, static_cast<std::size_t>(r)));
  }
  std::vector<std::vector<std::size_t>> adj(pieces.size());
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = 0; j < f.sets.size(); ++j)
      if (is_absorbing(g, t, f.sets[j], pieces[i], budget)) adj[i].push_back(j);
  std::vector<int> match(f.sets.size(), -1);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    std::vector<bool> seen(f.sets.size(), false);
    if (!detail::kuhn(i, adj, match, seen))
      throw AssignmentFailed("piece " + std::to_string(i) + " of W has no free absorber (" +
                             std::to_string(pieces.size()) + " pieces, " +
                             std::to_string(f.sets.size()) + " absorbers)");
  }
  Packing out;
  out.host_order = g.order();
  for (std::size_t j = 0; j < f.sets.size(); ++j) {
    VertexSet domain = f.sets[j];
    if (match[j] >= 0) domain |= pieces[static_cast<std::size_t>(match[j])];
    detail::append(out, find_perfect_packing(g, t, domain, budget),
                   "absorber lost its perfect packing");
  }
  return out;
}

}  // namespace tpack
