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

// Matching exchanges with certificates, vertex classifications against a
// class partition, and the staged C3-packing procedure for hosts close to
// Ex(n).

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

#include "tpack/constructions.hpp"
#include "tpack/containment.hpp"
#include "tpack/digraph.hpp"
#include "tpack/packing.hpp"

namespace tpack {

/// Undirected edge {first, second} with first < second.
using Edge = std::pair<Vertex, Vertex>;
using Matching = std::vector<Edge>;

inline bool is_symmetric(const Digraph& g) {
  for (auto [u, v] : g.arcs())
    if (!g.has_arc(v, u)) return false;
  return true;
}

/// Simple graph on n vertices from an edge list, stored symmetrically.
inline Digraph make_graph(int n, std::span<const Edge> edges) {
  Digraph g(n);
  for (auto [u, v] : edges) {
    detail::require(u != v, "loop in graph");
    g.add_arc(u, v);
    g.add_arc(v, u);
  }
  return g;
}

inline Edge make_edge(Vertex u, Vertex v) { return u < v ? Edge{u, v} : Edge{v, u}; }

inline VertexSet matched_vertices(const Matching& m) {
  VertexSet s;
  for (auto [u, v] : m) {
    s.insert(u);
    s.insert(v);
  }
  return s;
}

/// Disjoint edges of the symmetric host.
inline bool is_matching_in(const Digraph& g, const Matching& m) {
  VertexSet seen;
  for (auto [u, v] : m) {
    if (u == v || !g.has_arc(u, v) || seen.contains(u) || seen.contains(v)) return false;
    seen.insert(u);
    seen.insert(v);
  }
  return true;
}

/// First-fit over edges in lexicographic order, extending `start`.
inline Matching greedy_maximal_matching(const Digraph& g, Matching start = {}) {
  VertexSet used = matched_vertices(start);
  for (Vertex u = 0; u < g.order(); ++u) {
    if (used.contains(u)) continue;
    const VertexSet free = g.out_neighbors(u) - used;
    for (Vertex v : free) {
      if (v <= u) continue;
      start.push_back({u, v});
      used.insert(u);
      used.insert(v);
      break;
    }
  }
  std::sort(start.begin(), start.end());
  return start;
}

/// Maximum matching by Edmonds' blossom algorithm, edges sorted.
inline Matching maximum_matching(const Digraph& g) {
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  const int n = g.order();
  Graph bg(static_cast<std::size_t>(n));
  for (auto [u, v] : g.arcs())
    if (u < v) boost::add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v), bg);
  std::vector<boost::graph_traits<Graph>::vertex_descriptor> mate(static_cast<std::size_t>(n));
  boost::edmonds_maximum_cardinality_matching(bg, &mate[0]);
  Matching m;
  for (Vertex u = 0; u < n; ++u) {
    const auto v = mate[static_cast<std::size_t>(u)];
    if (v != boost::graph_traits<Graph>::null_vertex() && static_cast<Vertex>(v) > u)
      m.push_back({u, static_cast<Vertex>(v)});
  }
  return m;
}

// ---------------------------------------------------------------------------
// d-matchings covering a prescribed set.

namespace detail {

inline std::size_t find_edge_index(const Matching& m, auto&& pred) {
  for (std::size_t i = 0; i < m.size(); ++i)
    if (pred(m[i])) return i;
  return m.size();
}

}  // namespace detail

/// A d-matching of the symmetric host covering X. Starts from the first d
/// edges of a greedy maximal matching (or of a maximum matching when the
/// greedy one is smaller) and applies exchanges, each covering one more
/// vertex of X: take a free neighbour and drop an edge outside X; take over
/// a matched X-vertex's edge to the outside; or take over an edge outside X.
inline Matching d_matching_covering(const Digraph& g, int d, const VertexSet& x_set) {
  const int n = g.order();
  detail::require(is_symmetric(g), "expected an undirected (symmetric) graph");
  detail::require(d >= 0 && n >= 2 * d, "need n >= 2d");
  detail::require(x_set.size() == d && x_set.is_subset_of(g.vertices()), "need |X| = d");
  for (Vertex v = 0; v < n; ++v)
    detail::require(g.out_degree(v) >= d, "minimum degree below d");
  Matching m = greedy_maximal_matching(g);
  if (static_cast<int>(m.size()) < d) m = maximum_matching(g);
  detail::ensure(static_cast<int>(m.size()) >= d, "no d-matching despite minimum degree d");
  m.resize(static_cast<std::size_t>(d));

  auto outside = [&](Vertex v) { return !x_set.contains(v); };
  for (;;) {
    const VertexSet covered = matched_vertices(m);
    const VertexSet missing = x_set - covered;
    if (missing.empty()) break;
    const Vertex x = missing.first();
    const VertexSet nbrs = g.out_neighbors(x);
    const std::size_t out_out =
        detail::find_edge_index(m, [&](const Edge& e) { return outside(e.first) && outside(e.second); });
    const VertexSet free = nbrs - covered;
    if (!free.empty() && out_out < m.size()) {
      m.erase(m.begin() + static_cast<std::ptrdiff_t>(out_out));
      m.push_back(make_edge(x, free.first()));
    } else {
      bool moved = false;
      for (auto& e : m) {
        const bool first_in = x_set.contains(e.first), second_in = x_set.contains(e.second);
        if (first_in == second_in) continue;
        const Vertex w = first_in ? e.first : e.second;
        if (!nbrs.contains(w)) continue;
        e = make_edge(x, w);
        moved = true;
        break;
      }
      for (auto& e : m) {
        if (moved) break;
        if (!outside(e.first) || !outside(e.second)) continue;
        if (nbrs.contains(e.first)) e = make_edge(x, e.first);
        else if (nbrs.contains(e.second)) e = make_edge(x, e.second);
        else continue;
        moved = true;
      }
      detail::ensure(moved, "no exchange covers vertex " + std::to_string(x));
    }
  }
  std::sort(m.begin(), m.end());
  return m;
}

/// Orients each underlying edge as an arc of G (u -> v preferred for u < v).
inline std::vector<Arc> lift_matching(const Digraph& g, const Matching& m) {
  std::vector<Arc> arcs;
  for (auto [u, v] : m) {
    if (g.has_arc(u, v)) arcs.emplace_back(u, v);
    else {
      detail::ensure(g.has_arc(v, u), "matching edge absent from the digraph");
      arcs.emplace_back(v, u);
    }
  }
  return arcs;
}

/// Digraph form: every vertex has d+(x) >= d or d-(x) >= d, so the
/// underlying graph has minimum degree at least d.
inline std::vector<Arc> d_matching_covering_digraph(const Digraph& g, int d, const VertexSet& x_set) {
  for (Vertex v = 0; v < g.order(); ++v)
    detail::require(g.out_degree(v) >= d || g.in_degree(v) >= d,
                    "vertex " + std::to_string(v) + " has both degrees below d");
  return lift_matching(g, d_matching_covering(underlying_graph(g), d, x_set));
}

// ---------------------------------------------------------------------------
// Perfect matching or a structural certificate.

struct MatchCertificate {
  enum class Kind { kPerfectMatching, kIndependentSet, kClosePartition };
  Kind kind = Kind::kPerfectMatching;
  Matching matching;
  /// SN(x) n SN(y), independent.
  VertexSet core;
  /// core padded to n/2 vertices.
  VertexSet independent;
  VertexSet a, b;
  /// Edges between a and b (arcs in the digraph form).
  long cross = 0;
  double gamma = 0.0;
  /// 3 for graphs, 6 for digraphs.
  int factor = 3;
  bool directed = false;
};

inline const char* to_string(MatchCertificate::Kind k) {
  switch (k) {
    case MatchCertificate::Kind::kPerfectMatching: return "perfect_matching";
    case MatchCertificate::Kind::kIndependentSet: return "independent_set";
    case MatchCertificate::Kind::kClosePartition: return "close_partition";
  }
  return "?";
}

namespace detail {

/// Edges of G[s] (arcs for directed certificates).
inline long edges_within(const Digraph& g, const VertexSet& s, bool directed) {
  const long arcs = g.arc_count_within(s);
  return directed ? arcs : arcs / 2;
}

inline long edges_between(const Digraph& g, const VertexSet& a, const VertexSet& b, bool directed) {
  const long arcs = g.arc_count_between(a, b);
  return directed ? arcs : arcs / 2;
}

inline Vertex partner(const Matching& m, Vertex v) {
  for (auto [a, b] : m) {
    if (a == v) return b;
    if (b == v) return a;
  }
  return -1;
}

inline VertexSet second_neighbourhood(const Digraph& u, const Matching& m, Vertex x) {
  VertexSet s;
  for (Vertex w : u.out_neighbors(x)) {
    const Vertex z = partner(m, w);
    ensure(z >= 0, "neighbour of an uncovered vertex is unmatched");
    s.insert(z);
  }
  return s;
}

inline void erase_edge(Matching& m, Edge e) {
  m.erase(std::find(m.begin(), m.end(), make_edge(e.first, e.second)));
}

/// Certificate for the symmetric host `u` (the digraph's underlying graph
/// when `directed`); counts use `g`.
inline MatchCertificate matching_or_certificate_impl(const Digraph& g, const Digraph& u,
                                                     double gamma, bool directed) {
  const int n = u.order();
  MatchCertificate cert;
  cert.gamma = gamma;
  cert.directed = directed;
  cert.factor = directed ? 6 : 3;
  Matching m = greedy_maximal_matching(u);
  for (;;) {
    const VertexSet uncovered = u.vertices() - matched_vertices(m);
    if (uncovered.empty()) {
      cert.kind = MatchCertificate::Kind::kPerfectMatching;
      cert.matching = m;
      return cert;
    }
    const Vertex x = uncovered.first();
    VertexSet rest = uncovered;
    rest.erase(x);
    const Vertex y = rest.first();
    const VertexSet snx = second_neighbourhood(u, m, x);
    const VertexSet sny = second_neighbourhood(u, m, y);
    std::optional<Edge> hit;
    for (Vertex z : snx) {
      const VertexSet across = u.out_neighbors(z) & sny;
      if (!across.empty()) {
        hit = Edge{z, across.first()};
        break;
      }
    }
    if (hit) {
      const auto [z, zp] = *hit;
      if (partner(m, z) == zp) {
        erase_edge(m, {z, zp});
        m.push_back(make_edge(x, zp));
        m.push_back(make_edge(y, z));
      } else {
        const Vertex w = partner(m, z), wp = partner(m, zp);
        erase_edge(m, {w, z});
        erase_edge(m, {wp, zp});
        m.push_back(make_edge(x, w));
        m.push_back(make_edge(y, wp));
        m.push_back(make_edge(z, zp));
      }
      m = greedy_maximal_matching(u, m);
      continue;
    }
    const VertexSet both = snx & sny;
    const int half = n / 2;
    if (!both.empty()) {
      cert.kind = MatchCertificate::Kind::kIndependentSet;
      cert.core = both;
      cert.independent = both;
      for (Vertex v = 0; v < n && cert.independent.size() < half; ++v) cert.independent.insert(v);
      return cert;
    }
    cert.kind = MatchCertificate::Kind::kClosePartition;
    VertexSet a = snx, b = sny;
    while (a.size() > half) {
      const Vertex v = a.last();
      a.erase(v);
      b.insert(v);
    }
    while (b.size() > n - half) {
      const Vertex v = b.last();
      b.erase(v);
      a.insert(v);
    }
    for (Vertex v : u.vertices() - snx - sny) {
      const bool room_a = a.size() < half, room_b = b.size() < n - half;
      const bool prefer_a = u.out_degree(v, a) >= u.out_degree(v, b);
      if (room_a && (prefer_a || !room_b)) a.insert(v);
      else b.insert(v);
    }
    cert.a = a;
    cert.b = b;
    cert.cross = edges_between(g, a, b, directed);
    return cert;
  }
}

}  // namespace detail

/// Perfect matching, independent-set certificate, or close-to-2K_{n/2}
/// partition for a graph with n even and minimum degree >= (1/2 - gamma) n.
inline MatchCertificate matching_or_certificate(const Digraph& g, double gamma) {
  const int n = g.order();
  detail::require(is_symmetric(g), "expected an undirected (symmetric) graph");
  detail::require(n >= 2 && n % 2 == 0, "need n even");
  for (Vertex v = 0; v < n; ++v)
    detail::require(g.out_degree(v) + 1e-9 >= (0.5 - gamma) * n,
                    "minimum degree below (1/2 - gamma) n");
  return detail::matching_or_certificate_impl(g, g, gamma, false);
}

/// Digraph form under d+(x) >= (1/2 - gamma) n or d-(x) >= (1/2 - gamma) n,
/// with 6 gamma bounds on arc counts.
inline MatchCertificate matching_or_certificate_digraph(const Digraph& g, double gamma) {
  const int n = g.order();
  detail::require(n >= 2 && n % 2 == 0, "need n even");
  for (Vertex v = 0; v < n; ++v)
    detail::require(std::max(g.out_degree(v), g.in_degree(v)) + 1e-9 >= (0.5 - gamma) * n,
                    "vertex " + std::to_string(v) + " has both degrees below (1/2 - gamma) n");
  return detail::matching_or_certificate_impl(g, underlying_graph(g), gamma, true);
}

/// Checks the certificate's own guarantee against `g`.
inline bool validate_certificate(const Digraph& g, const MatchCertificate& c) {
  const int n = g.order();
  const double slack = 1e-9;
  const double bound = c.factor * c.gamma * n * static_cast<double>(n) + slack;
  const Digraph u = c.directed ? underlying_graph(g) : g;
  switch (c.kind) {
    case MatchCertificate::Kind::kPerfectMatching:
      return is_matching_in(u, c.matching) && matched_vertices(c.matching) == g.vertices();
    case MatchCertificate::Kind::kIndependentSet:
      return detail::edges_within(g, c.core, c.directed) == 0 &&
             c.core.size() + slack >= (0.5 - 3 * c.gamma) * n && c.core.is_subset_of(c.independent) &&
             2 * c.independent.size() >= n &&
             detail::edges_within(g, c.independent, c.directed) <= bound;
    case MatchCertificate::Kind::kClosePartition:
      return c.a.size() == n / 2 && c.b.size() == n - n / 2 && !c.a.intersects(c.b) &&
             (c.a | c.b) == g.vertices() &&
             c.cross == detail::edges_between(g, c.a, c.b, c.directed) && c.cross <= bound;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Vertex classifications.

struct ClassFlags {
  bool member = false;
  /// Members only.
  bool bad = false;
  /// Non-members only; acceptable is the complement.
  bool exceptional = false;
  bool excellent = false;

  bool good() const { return member && !bad; }
  bool acceptable() const { return !member && !exceptional; }
};

struct VertexClassification {
  double delta = 0.0;
  /// flags[x][i] for class A_{i+1}.
  std::vector<std::vector<ClassFlags>> flags;
  /// (delta, B)-excellent, for vertices outside B; empty without B.
  std::vector<bool> b_excellent;
  /// Three-class cyclic partitions only: sends (1 - delta)|A_{i+1}| and
  /// receives (1 - delta)|A_{i-1}|.
  std::vector<bool> externally_excellent;
  /// Three-class cyclic partitions only: out- and in-degree inside the own
  /// class at least (1 - delta)(|A_i| - 1).
  std::vector<bool> internally_excellent;
};

namespace detail {

inline bool externally_excellent(const Digraph& g, const std::array<VertexSet, 3>& a, Vertex x,
                                 int i, double delta) {
  const auto& next = a[static_cast<std::size_t>((i + 1) % 3)];
  const auto& prev = a[static_cast<std::size_t>((i + 2) % 3)];
  return g.out_degree(x, next) + 1e-9 >= (1 - delta) * next.size() &&
         g.in_degree(x, prev) + 1e-9 >= (1 - delta) * prev.size();
}

inline bool internally_excellent(const Digraph& g, const std::array<VertexSet, 3>& a, Vertex x,
                                 int i, double delta) {
  const auto& own = a[static_cast<std::size_t>(i)];
  const double need = (1 - delta) * (own.size() - 1);
  return g.out_degree(x, own) + 1e-9 >= need && g.in_degree(x, own) + 1e-9 >= need;
}

}  // namespace detail

/// Flags for every vertex against classes A_1..A_s (and optionally B),
/// which together must partition V(G).
inline VertexClassification classify_vertices(const Digraph& g, const std::vector<VertexSet>& classes,
                                              const std::optional<VertexSet>& b, double delta) {
  const int n = g.order();
  VertexSet seen;
  for (const auto& c : classes) {
    detail::require(!c.intersects(seen), "classes overlap");
    seen |= c;
  }
  if (b) {
    detail::require(!b->intersects(seen), "B overlaps a class");
    seen |= *b;
  }
  detail::require(seen == g.vertices(), "classes do not cover V(G)");
  const double dn = delta * n;
  VertexClassification out;
  out.delta = delta;
  out.flags.assign(static_cast<std::size_t>(n), std::vector<ClassFlags>(classes.size()));
  for (Vertex x = 0; x < n; ++x) {
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const auto& a = classes[i];
      auto& f = out.flags[static_cast<std::size_t>(x)][i];
      const int dout = g.out_degree(x, a), din = g.in_degree(x, a);
      f.member = a.contains(x);
      if (f.member) {
        f.bad = dout >= dn || din >= dn;
      } else {
        f.exceptional = dout <= dn && din <= dn;
        f.excellent = dout >= a.size() - dn && din >= a.size() - dn;
      }
    }
    if (b) {
      const int dout = g.out_degree(x, *b), din = g.in_degree(x, *b);
      out.b_excellent.push_back(!b->contains(x) && dout >= b->size() - dn && din >= b->size() - dn);
    }
  }
  if (classes.size() == 3 && !b) {
    const std::array<VertexSet, 3> a{classes[0], classes[1], classes[2]};
    for (Vertex x = 0; x < n; ++x) {
      int i = 0;
      while (!a[static_cast<std::size_t>(i)].contains(x)) ++i;
      out.externally_excellent.push_back(detail::externally_excellent(g, a, x, i, delta));
      out.internally_excellent.push_back(detail::internally_excellent(g, a, x, i, delta));
    }
  }
  return out;
}

inline VertexClassification classify_vertices(const Digraph& g, const ExPartition& p, double delta) {
  return classify_vertices(g, {p.classes[0], p.classes[1], p.classes[2]}, std::nullopt, delta);
}

// ---------------------------------------------------------------------------
// Staged C3-packing of hosts close to Ex(n).

struct ExtremalOptions {
  /// Excellence parameter of the relocation and covering stages.
  double gamma = 0.25;
  /// Class partition to start from; recomputed by containment search if absent.
  std::optional<ExPartition> witness;
  std::uint64_t budget = kDefaultNodeBudget;
};

struct ExtremalC3Result {
  Packing packing;
  ExPartition initial;
  /// (vertex, new class) in the order moved.
  std::vector<std::pair<Vertex, int>> relocations;
  std::optional<Embedding> parity;
  std::vector<Embedding> cover;
  std::vector<Embedding> balance;
  std::vector<Embedding> finish;
};

namespace detail {

/// Lowest pair y < z in `pool` with {x, y, z} spanning C3.
inline std::optional<Embedding> c3_through(const Digraph& g, Vertex x, const VertexSet& pool) {
  const Pattern c3 = Pattern::cyclic_triangle();
  for (Vertex y : pool) {
    if (y == x || !(g.neighbors(x).contains(y))) continue;
    for (Vertex z : pool) {
      if (z <= y || z == x) continue;
      if (auto e = spans_copy(g, VertexSet{x, y, z}, c3)) return e;
    }
  }
  return std::nullopt;
}

inline void remove_from_classes(std::array<VertexSet, 3>& a, const VertexSet& s) {
  for (auto& c : a) c -= s;
}

}  // namespace detail

/// Perfect C3-packing of a host with delta0 >= 2n/3 - 1 that alpha-contains
/// Ex(n). Stages: relocate internally bad vertices to the class they see
/// most of, remove at most one C3 to equalize class sizes mod 3, cover
/// externally bad vertices by C3's inside their classes, trim the larger
/// classes by inner C3's, and pack the rest exactly along the cyclic arcs
/// A_1 -> A_2 -> A_3 -> A_1. Throws StageFailed naming the stage that could
/// not complete.
inline ExtremalC3Result extremal_c3_pack(const Digraph& g, double alpha, ExtremalOptions options = {}) {
  const int n = g.order();
  detail::require(n >= 3 && n % 3 == 0, "extremal_c3_pack needs 3 | n");
  detail::require(min_semidegree(g) >= 2 * n / 3 - 1, "minimum semidegree below 2n/3 - 1");
  ExtremalC3Result result;
  if (options.witness) {
    detail::require(ex_deficit(g, *options.witness) <= alpha * n * n,
                    "supplied partition leaves more than alpha n^2 arcs of Ex(n) missing");
    result.initial = *options.witness;
  } else {
    const auto mode = n <= kExactContainmentMaxOrder ? SearchMode::kExact : SearchMode::kHeuristic;
    const auto c = alpha_contains_ex(g, alpha, mode);
    detail::require(c.contains, "host does not alpha-contain Ex(n)");
    result.initial = c.witness;
  }
  const double gamma = options.gamma;
  std::array<VertexSet, 3> a = result.initial.classes;
  Packing& out = result.packing;
  out.host_order = n;

  // Relocation.
  std::vector<Vertex> bad;
  for (int i = 0; i < 3; ++i)
    for (Vertex x : a[static_cast<std::size_t>(i)])
      if (!detail::internally_excellent(g, a, x, i, gamma)) bad.push_back(x);
  std::sort(bad.begin(), bad.end());
  for (Vertex x : bad) {
    int best = -1, best_score = -1;
    for (int i = 0; i < 3; ++i) {
      VertexSet cls = a[static_cast<std::size_t>(i)];
      cls.erase(x);
      const int score = std::min(g.out_degree(x, cls), g.in_degree(x, cls));
      if (score > best_score) {
        best = i;
        best_score = score;
      }
    }
    for (auto& c : a) c.erase(x);
    a[static_cast<std::size_t>(best)].insert(x);
    result.relocations.emplace_back(x, best);
  }

  // Parity: sizes sum to 0 mod 3, so residues are all equal or a permutation
  // of (0, 1, 2).
  auto residues_equal = [&](const std::array<int, 3>& s) {
    return s[0] % 3 == s[1] % 3 && s[1] % 3 == s[2] % 3;
  };
  auto sizes_of = [&]() {
    return std::array<int, 3>{a[0].size(), a[1].size(), a[2].size()};
  };
  if (!residues_equal(sizes_of())) {
    const Pattern c3 = Pattern::cyclic_triangle();
    ExPartition current;
    current.classes = a;
    for (Vertex x = 0; x < n && !result.parity; ++x)
      for (Vertex y = x + 1; y < n && !result.parity; ++y) {
        if (!g.neighbors(x).contains(y)) continue;
        for (Vertex z = y + 1; z < n && !result.parity; ++z) {
          auto s = sizes_of();
          for (Vertex v : {x, y, z}) --s[static_cast<std::size_t>(current.class_of(v))];
          if (!residues_equal(s)) continue;
          if (auto e = spans_copy(g, VertexSet{x, y, z}, c3)) result.parity = e;
        }
      }
    if (!result.parity) throw StageFailed("parity", "no C3 equalizes the class sizes mod 3");
    detail::remove_from_classes(a, result.parity->vertex_set());
    out.elements.push_back(*result.parity);
  }

  // Covering externally bad vertices inside their own classes.
  std::vector<std::pair<Vertex, int>> ext_bad;
  for (int i = 0; i < 3; ++i)
    for (Vertex x : a[static_cast<std::size_t>(i)])
      if (!detail::externally_excellent(g, a, x, i, 2 * gamma)) ext_bad.emplace_back(x, i);
  std::sort(ext_bad.begin(), ext_bad.end());
  for (auto [x, i] : ext_bad) {
    auto& cls = a[static_cast<std::size_t>(i)];
    if (!cls.contains(x)) continue;
    auto e = detail::c3_through(g, x, cls);
    if (!e)
      throw StageFailed("cover", "externally bad vertex " + std::to_string(x) +
                                     " lies in no C3 inside its class");
    cls -= e->vertex_set();
    result.cover.push_back(*e);
    out.elements.push_back(*e);
  }

  // Balancing.
  for (;;) {
    const auto s = sizes_of();
    const int largest = static_cast<int>(std::max_element(s.begin(), s.end()) - s.begin());
    if (s[0] == s[1] && s[1] == s[2]) break;
    auto& cls = a[static_cast<std::size_t>(largest)];
    std::optional<Embedding> e;
    for (Vertex x : cls)
      if ((e = detail::c3_through(g, x, cls))) break;
    if (!e)
      throw StageFailed("balance", "largest class " + std::to_string(largest + 1) +
                                       " spans no C3");
    cls -= e->vertex_set();
    result.balance.push_back(*e);
    out.elements.push_back(*e);
  }

  // Finishing on the cyclic cross arcs.
  Digraph cross(n);
  for (int i = 0; i < 3; ++i)
    for (Vertex u : a[static_cast<std::size_t>(i)])
      for (Vertex v : g.out_neighbors(u) & a[static_cast<std::size_t>((i + 1) % 3)])
        cross.add_arc(u, v);
  const VertexSet rest = a[0] | a[1] | a[2];
  const auto cert = find_perfect_packing(cross, Pattern::cyclic_triangle(), rest, options.budget);
  if (cert.verdict != Verdict::kPacked)
    throw StageFailed("finish", std::string("tripartite remainder: ") + to_string(cert.verdict));
  for (const auto& e : cert.packing->elements) {
    result.finish.push_back(e);
    out.elements.push_back(e);
  }
  detail::ensure(verify_packing(g, Pattern::cyclic_triangle(), out), "staged packing is invalid");
  return result;
}

struct ExtremalOrSolved {
  Packing packing;
  bool fell_back = false;
  /// Stage reported by StageFailed when the solver fallback ran.
  std::string failed_stage;
  std::optional<ExtremalC3Result> staged;
};

/// extremal_c3_pack, falling back to the exact solver on StageFailed.
inline ExtremalOrSolved extremal_c3_pack_or_solve(const Digraph& g, double alpha,
                                                  ExtremalOptions options = {}) {
  ExtremalOrSolved out;
  try {
    out.staged = extremal_c3_pack(g, alpha, options);
    out.packing = out.staged->packing;
    return out;
  } catch (const StageFailed& e) {
    out.fell_back = true;
    out.failed_stage = e.stage();
  }
  const auto cert = find_perfect_packing(g, Pattern::cyclic_triangle(), options.budget);
  if (cert.verdict != Verdict::kPacked)
    throw StageFailed("fallback", std::string("exact solver: ") + to_string(cert.verdict));
  out.packing = *cert.packing;
  return out;
}

}  // namespace tpack
