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
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tpack/errors.hpp"
#include "tpack/vertex_set.hpp"

namespace tpack {

using Arc = std::pair<Vertex, Vertex>;

/// Loopless digraph on vertices 0..n-1 with at most one arc per ordered
/// pair. A pair joined in both directions is a double edge and counts as two
/// arcs. Adjacency is kept as out- and in-rows so that neighbourhood
/// intersections are word operations.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int n) : n_(n), out_(checked(n)), in_(static_cast<std::size_t>(n)) {}

  /// Throws DomainError on loops, duplicate arcs or out-of-range endpoints.
  Digraph(int n, std::span<const Arc> arcs) : Digraph(n) {
    for (auto [u, v] : arcs) {
      detail::require(add_arc(u, v), "duplicate arc " + std::to_string(u) + " " +
                                         std::to_string(v));
    }
  }

  static Digraph complete(int n) {
    Digraph g(n);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = 0; v < n; ++v)
        if (u != v) g.add_arc(u, v);
    return g;
  }

  int order() const { return n_; }
  VertexSet vertices() const { return VertexSet::range(n_); }

  bool has_arc(Vertex u, Vertex v) const { return in_range(u) && out_[u].contains(v); }

  /// Returns false (and changes nothing) when the arc is already present.
  bool add_arc(Vertex u, Vertex v) {
    detail::require(in_range(u) && in_range(v), "arc endpoint out of range");
    detail::require(u != v, "loops are not allowed");
    if (out_[u].contains(v)) return false;
    out_[u].insert(v);
    in_[v].insert(u);
    ++arcs_;
    return true;
  }

  bool remove_arc(Vertex u, Vertex v) {
    if (!has_arc(u, v)) return false;
    out_[u].erase(v);
    in_[v].erase(u);
    --arcs_;
    return true;
  }

  const VertexSet& out_neighbors(Vertex v) const { return out_[v]; }
  const VertexSet& in_neighbors(Vertex v) const { return in_[v]; }
  /// Neighbours in the underlying simple graph.
  VertexSet neighbors(Vertex v) const { return out_[v] | in_[v]; }
  /// Vertices joined to v by a double edge.
  VertexSet double_neighbors(Vertex v) const { return out_[v] & in_[v]; }

  int out_degree(Vertex v) const { return out_[v].size(); }
  int in_degree(Vertex v) const { return in_[v].size(); }
  int degree(Vertex v) const { return out_degree(v) + in_degree(v); }
  int out_degree(Vertex v, const VertexSet& into) const { return (out_[v] & into).size(); }
  int in_degree(Vertex v, const VertexSet& from) const { return (in_[v] & from).size(); }

  long arc_count() const { return arcs_; }
  long arc_count_within(const VertexSet& s) const {
    long total = 0;
    for (Vertex v : s) total += (out_[v] & s).size();
    return total;
  }
  /// e(A,B): arcs with one end in A and the other in B, either direction.
  long arc_count_between(const VertexSet& a, const VertexSet& b) const {
    long total = 0;
    for (Vertex v : a) total += (out_[v] & b).size() + (in_[v] & b).size();
    return total;
  }

  /// G[X] on the same vertex ids; vertices outside X become isolated.
  Digraph induced(const VertexSet& x) const {
    Digraph g(n_);
    for (Vertex u : x)
      for (Vertex v : out_[u] & x) g.add_arc(u, v);
    return g;
  }

  Digraph reversed() const {
    Digraph g(n_);
    for (auto [u, v] : arcs()) g.add_arc(v, u);
    return g;
  }

  /// Image under v -> perm[v].
  Digraph relabeled(std::span<const Vertex> perm) const {
    detail::require(static_cast<int>(perm.size()) == n_, "permutation size mismatch");
    Digraph g(n_);
    for (auto [u, v] : arcs()) g.add_arc(perm[u], perm[v]);
    return g;
  }

  /// Arcs in lexicographic order.
  std::vector<Arc> arcs() const {
    std::vector<Arc> result;
    result.reserve(static_cast<std::size_t>(arcs_));
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v : out_[u]) result.emplace_back(u, v);
    return result;
  }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.out_ == b.out_;
  }

 private:
  static std::size_t checked(int n) {
    detail::require(n >= 0 && n <= VertexSet::kCapacity,
                    "digraph order must lie in [0, " + std::to_string(VertexSet::kCapacity) + "]");
    return static_cast<std::size_t>(n);
  }
  bool in_range(Vertex v) const { return v >= 0 && v < n_; }

  int n_ = 0;
  std::vector<VertexSet> out_;
  std::vector<VertexSet> in_;
  long arcs_ = 0;
};

/// A small pattern digraph (order at most 8) to be packed into a host. Every
/// tournament is a pattern; so are K_r and K_r minus an arc.
class Pattern {
 public:
  static constexpr int kMaxOrder = 8;

  Pattern() = default;
  Pattern(int order, std::span<const Arc> arcs, std::string name = {})
      : order_(order), name_(std::move(name)) {
    detail::require(order >= 1 && order <= kMaxOrder, "pattern order must lie in [1, 8]");
    for (auto [a, b] : arcs) {
      detail::require(a >= 0 && a < order && b >= 0 && b < order && a != b,
                      "bad pattern arc");
      detail::require(!has_arc(a, b), "duplicate pattern arc");
      out_[a] |= static_cast<std::uint8_t>(1u << b);
      in_[b] |= static_cast<std::uint8_t>(1u << a);
    }
  }

  /// T_r: arc i -> j iff i < j, so vertex i (0-based) has in-degree i.
  static Pattern transitive(int r) {
    std::vector<Arc> arcs;
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) arcs.emplace_back(i, j);
    return Pattern(r, arcs, "T" + std::to_string(r));
  }
  static Pattern cyclic_triangle() {
    const Arc arcs[] = {{0, 1}, {1, 2}, {2, 0}};
    return Pattern(3, arcs, "C3");
  }
  static Pattern complete(int r) {
    std::vector<Arc> arcs;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (i != j) arcs.emplace_back(i, j);
    return Pattern(r, arcs, "K" + std::to_string(r));
  }
  /// K_r^-: the complete digraph minus the single arc (r-1) -> 0.
  static Pattern complete_minus_arc(int r) {
    std::vector<Arc> arcs;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (i != j && !(i == r - 1 && j == 0)) arcs.emplace_back(i, j);
    return Pattern(r, arcs, "K" + std::to_string(r) + "-");
  }
  static Pattern from_digraph(const Digraph& g, std::string name = {}) {
    auto arcs = g.arcs();
    return Pattern(g.order(), arcs, std::move(name));
  }

  int order() const { return order_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  bool has_arc(int a, int b) const { return (out_[a] >> b) & 1u; }
  std::uint8_t out_mask(int a) const { return out_[a]; }
  std::uint8_t in_mask(int a) const { return in_[a]; }
  int out_degree(int a) const { return std::popcount(static_cast<unsigned>(out_[a])); }
  int in_degree(int a) const { return std::popcount(static_cast<unsigned>(in_[a])); }
  int arc_count() const {
    int total = 0;
    for (int a = 0; a < order_; ++a) total += out_degree(a);
    return total;
  }

  std::vector<Arc> arcs() const {
    std::vector<Arc> result;
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b)
        if (has_arc(a, b)) result.emplace_back(a, b);
    return result;
  }

  /// Exactly one arc between every pair.
  bool is_tournament() const {
    for (int a = 0; a < order_; ++a)
      for (int b = a + 1; b < order_; ++b)
        if (has_arc(a, b) == has_arc(b, a)) return false;
    return true;
  }
  /// At least one arc between every pair.
  bool pairwise_adjacent() const {
    for (int a = 0; a < order_; ++a)
      for (int b = a + 1; b < order_; ++b)
        if (!has_arc(a, b) && !has_arc(b, a)) return false;
    return true;
  }

  /// Sub-pattern induced on the given pattern vertices (relabelled 0..k-1 in
  /// the given order).
  Pattern induced(std::span<const int> vertices, std::string name = {}) const {
    std::vector<Arc> arcs;
    const int k = static_cast<int>(vertices.size());
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (i != j && has_arc(vertices[i], vertices[j])) arcs.emplace_back(i, j);
    return Pattern(k, arcs, std::move(name));
  }

  /// Isomorphism-invariant code: the lexicographically smallest adjacency
  /// bit string over all vertex orders.
  std::uint64_t canonical_code() const {
    std::vector<int> perm(static_cast<std::size_t>(order_));
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    do {
      std::uint64_t code = 0;
      for (int i = 0; i < order_; ++i)
        for (int j = 0; j < order_; ++j)
          if (i != j) code = (code << 1) | (has_arc(perm[i], perm[j]) ? 1u : 0u);
      best = std::min(best, code);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }

  /// Same order and identical arc set (names ignored).
  friend bool operator==(const Pattern& a, const Pattern& b) {
    return a.order_ == b.order_ && a.out_ == b.out_;
  }

 private:
  int order_ = 0;
  std::array<std::uint8_t, kMaxOrder> out_{};
  std::array<std::uint8_t, kMaxOrder> in_{};
  std::string name_;
};

using Tournament = Pattern;

/// Every tournament on r vertices up to isomorphism, in order of first
/// appearance when orientations are enumerated by bit pattern.
inline std::vector<Pattern> all_tournaments(int r) {
  detail::require(r >= 1 && r <= 6, "tournament enumeration supports 1 <= r <= 6");
  std::vector<Arc> pairs;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) pairs.emplace_back(i, j);
  std::vector<std::uint64_t> seen;
  std::vector<Pattern> result;
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    std::vector<Arc> arcs;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      auto [i, j] = pairs[k];
      arcs.push_back(((bits >> k) & 1u) ? Arc{j, i} : Arc{i, j});
    }
    Pattern p(r, arcs);
    auto code = p.canonical_code();
    if (std::find(seen.begin(), seen.end(), code) != seen.end()) continue;
    seen.push_back(code);
    p.set_name("tour" + std::to_string(r) + "_" + std::to_string(result.size()));
    result.push_back(std::move(p));
  }
  return result;
}

/// Copy of a pattern in a host: pattern vertex p is mapped to image[p].
struct Embedding {
  Pattern pattern;
  std::vector<Vertex> image;

  VertexSet vertex_set() const { return VertexSet(std::span<const Vertex>(image)); }

  /// Injective and every pattern arc lands on a host arc.
  bool is_valid_in(const Digraph& g) const {
    if (static_cast<int>(image.size()) != pattern.order()) return false;
    for (Vertex v : image)
      if (v < 0 || v >= g.order()) return false;
    if (vertex_set().size() != pattern.order()) return false;
    for (auto [a, b] : pattern.arcs())
      if (!g.has_arc(image[a], image[b])) return false;
    return true;
  }
};

// ---------------------------------------------------------------------------
// Degree statistics.

/// delta^0(G) = min over v of min(d+(v), d-(v)).
inline int min_semidegree(const Digraph& g) {
  detail::require(g.order() >= 1, "min_semidegree of the empty digraph");
  int best = std::numeric_limits<int>::max();
  for (Vertex v = 0; v < g.order(); ++v)
    best = std::min({best, g.out_degree(v), g.in_degree(v)});
  return best;
}

inline int min_out_degree(const Digraph& g) {
  detail::require(g.order() >= 1, "min_out_degree of the empty digraph");
  int best = std::numeric_limits<int>::max();
  for (Vertex v = 0; v < g.order(); ++v) best = std::min(best, g.out_degree(v));
  return best;
}

inline int min_in_degree(const Digraph& g) {
  detail::require(g.order() >= 1, "min_in_degree of the empty digraph");
  int best = std::numeric_limits<int>::max();
  for (Vertex v = 0; v < g.order(); ++v) best = std::min(best, g.in_degree(v));
  return best;
}

/// delta(G) = min over v of d+(v) + d-(v); double edges count twice.
inline int total_min_degree(const Digraph& g) {
  detail::require(g.order() >= 1, "total_min_degree of the empty digraph");
  int best = std::numeric_limits<int>::max();
  for (Vertex v = 0; v < g.order(); ++v) best = std::min(best, g.degree(v));
  return best;
}

// ---------------------------------------------------------------------------
// Copies of patterns.

namespace detail {

struct SpanSearch {
  const Digraph& g;
  const Pattern& t;
  std::vector<Vertex> hosts;
  std::vector<int> order;  // pattern vertices, most constrained first
  std::vector<int> host_out, host_in;
  std::vector<Vertex> image;
  std::vector<bool> used;

  bool assign(std::size_t k) {
    if (k == order.size()) return true;
    const int p = order[k];
    for (std::size_t h = 0; h < hosts.size(); ++h) {
      if (used[h]) continue;
      if (host_out[h] < t.out_degree(p) || host_in[h] < t.in_degree(p)) continue;
      const Vertex x = hosts[h];
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) {
        const int q = order[j];
        const Vertex y = image[static_cast<std::size_t>(q)];
        if (t.has_arc(p, q) && !g.has_arc(x, y)) ok = false;
        if (t.has_arc(q, p) && !g.has_arc(y, x)) ok = false;
      }
      if (!ok) continue;
      used[h] = true;
      image[static_cast<std::size_t>(p)] = x;
      if (assign(k + 1)) return true;
      used[h] = false;
    }
    return false;
  }
};

}  // namespace detail

/// An embedding of `t` whose image is exactly `x`, if `x` spans a copy of `t`
/// in `g` (the copy need not be induced). Candidates are tried in ascending
/// host order with pattern vertices of largest degree placed first.
inline std::optional<Embedding> spans_copy(const Digraph& g, const VertexSet& x, const Pattern& t) {
  detail::require(x.size() == t.order(), "vertex set size must equal the pattern order");
  detail::SpanSearch s{g, t, x.to_vector(), {}, {}, {}, {}, {}};
  const int r = t.order();
  s.order.resize(static_cast<std::size_t>(r));
  std::iota(s.order.begin(), s.order.end(), 0);
  std::stable_sort(s.order.begin(), s.order.end(), [&](int a, int b) {
    const int da = t.out_degree(a) + t.in_degree(a), db = t.out_degree(b) + t.in_degree(b);
    if (da != db) return da > db;
    return t.out_degree(a) > t.out_degree(b);
  });
  for (Vertex h : s.hosts) {
    s.host_out.push_back(g.out_degree(h, x));
    s.host_in.push_back(g.in_degree(h, x));
  }
  s.image.assign(static_cast<std::size_t>(r), -1);
  s.used.assign(static_cast<std::size_t>(r), false);
  if (!s.assign(0)) return std::nullopt;
  return Embedding{t, std::move(s.image)};
}

inline std::optional<Embedding> spans_copy(const Digraph& g, std::span<const Vertex> x,
                                           const Pattern& t) {
  VertexSet set(x);
  detail::require(set.size() == static_cast<int>(x.size()), "repeated vertex in vertex set");
  return spans_copy(g, set, t);
}

/// First family member (in family order) spanned by x.
inline std::optional<Embedding> spans_any(const Digraph& g, const VertexSet& x,
                                          std::span<const Pattern> family) {
  for (const auto& t : family)
    if (auto e = spans_copy(g, x, t)) return e;
  return std::nullopt;
}

/// S is gamma-independent when e(G[S]) <= gamma * n^2. `reference_order`
/// is the n in that bound; it defaults to |G| and is exposed because callers
/// working inside a subdigraph may rescale.
inline bool is_gamma_independent(const Digraph& g, const VertexSet& s, double gamma,
                                 int reference_order = -1) {
  const double n = reference_order < 0 ? g.order() : reference_order;
  return static_cast<double>(g.arc_count_within(s)) <= gamma * n * n + 1e-9;
}

/// Underlying simple graph stored as a symmetric digraph.
inline Digraph underlying_graph(const Digraph& g) {
  Digraph u(g.order());
  for (auto [a, b] : g.arcs()) {
    u.add_arc(a, b);
    u.add_arc(b, a);
  }
  return u;
}

/// Graph of double edges (xy and yx both present), stored symmetrically.
inline Digraph double_edge_graph(const Digraph& g) {
  Digraph d(g.order());
  for (auto [a, b] : g.arcs())
    if (g.has_arc(b, a)) d.add_arc(a, b);
  return d;
}

// ---------------------------------------------------------------------------

/// Named positive constants declared from largest to smallest, the desk-scale
/// stand-in for a chain 0 < alpha << beta << gamma.
class ParamHierarchy {
 public:
  ParamHierarchy(std::initializer_list<std::pair<std::string, double>> entries)
      : entries_(entries) {
    validate();
  }
  explicit ParamHierarchy(std::vector<std::pair<std::string, double>> entries)
      : entries_(std::move(entries)) {
    validate();
  }

  double get(const std::string& name) const {
    for (const auto& [k, v] : entries_)
      if (k == name) return v;
    throw DomainError("unknown parameter " + name);
  }
  const std::vector<std::pair<std::string, double>>& entries() const { return entries_; }

 private:
  void validate() const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      detail::require(entries_[i].second > 0, "parameter " + entries_[i].first + " must be positive");
      if (i > 0)
        detail::require(entries_[i].second < entries_[i - 1].second,
                        "parameters must strictly decrease: " + entries_[i - 1].first + " then " +
                            entries_[i].first);
    }
  }

  std::vector<std::pair<std::string, double>> entries_;
};

}  // namespace tpack
