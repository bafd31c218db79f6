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

// Perfect T3-packings under the disjunctive two-thirds degree condition:
// strip arcs to a locally minimal host, pack its underlying graph with
// triangles, then trade C3 elements for T3 elements one move at a time.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tpack/constructions.hpp"
#include "tpack/digraph.hpp"
#include "tpack/packing.hpp"

namespace tpack {

/// Every vertex has d+(v) >= ceil(2n/3) or d-(v) >= ceil(2n/3).
inline bool satisfies_cond_4_1(const Digraph& g) {
  const int t = two_thirds_threshold(g.order());
  for (Vertex v = 0; v < g.order(); ++v)
    if (g.out_degree(v) < t && g.in_degree(v) < t) return false;
  return true;
}

/// Greedy fixpoint: arcs are scanned in lexicographic order and dropped
/// whenever both endpoints still meet the condition afterwards. Degrees only
/// fall, so an arc kept once stays unremovable and the loop ends after the
/// second pass at the latest.
inline Digraph minimize_edges_4_1(const Digraph& g) {
  detail::require(satisfies_cond_4_1(g),
                  "condition violated: some vertex has both degrees below 2n/3");
  const int t = two_thirds_threshold(g.order());
  Digraph h = g;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [u, v] : h.arcs()) {
      const bool u_ok = h.out_degree(u) - 1 >= t || h.in_degree(u) >= t;
      const bool v_ok = h.out_degree(v) >= t || h.in_degree(v) - 1 >= t;
      if (u_ok && v_ok) {
        h.remove_arc(u, v);
        changed = true;
      }
    }
  }
  return h;
}

/// True when no arc of `h` can be removed without breaking the condition.
inline bool is_locally_minimal_4_1(const Digraph& h) {
  const int t = two_thirds_threshold(h.order());
  for (auto [u, v] : h.arcs()) {
    const bool u_ok = h.out_degree(u) - 1 >= t || h.in_degree(u) >= t;
    const bool v_ok = h.out_degree(v) >= t || h.in_degree(v) - 1 >= t;
    if (u_ok && v_ok) return false;
  }
  return true;
}

enum class SwapRule { kInPlace, kOutSeven, kInSeven };

inline const char* to_string(SwapRule r) {
  switch (r) {
    case SwapRule::kInPlace: return "in_place";
    case SwapRule::kOutSeven: return "out_seven";
    case SwapRule::kInSeven: return "in_seven";
  }
  return "?";
}

struct SwapStep {
  std::vector<Embedding> removed;
  std::vector<Embedding> inserted;
  SwapRule rule = SwapRule::kInPlace;
};

struct SwapTrace {
  std::vector<SwapStep> steps;
};

inline bool is_cyclic_triangle(const Embedding& e) {
  return e.pattern == Pattern::cyclic_triangle();
}

inline int count_t3(const Packing& p) {
  const Pattern t3 = Pattern::transitive(3);
  int count = 0;
  for (const auto& e : p.elements)
    if (e.pattern == t3) ++count;
  return count;
}

namespace detail {

inline Embedding t3_on(const Digraph& g, const VertexSet& triple) {
  auto e = spans_copy(g, triple, Pattern::transitive(3));
  ensure(e.has_value(), "expected triple to span T3");
  return *e;
}

/// Seven-arc move. `outward` selects the rule where the cycle sends arcs into
/// a receiving element; otherwise the receiving element sends into the cycle.
inline std::optional<SwapStep> seven_arc_move(const Digraph& g, const Packing& m, std::size_t idx,
                                              bool outward) {
  const auto& cycle = m.elements[idx];
  const VertexSet triple = cycle.vertex_set();
  for (std::size_t j = 0; j < m.elements.size(); ++j) {
    if (j == idx) continue;
    const VertexSet target = m.elements[j].vertex_set();
    auto into_target = [&](Vertex v) {
      return outward ? g.out_degree(v, target) : g.in_degree(v, target);
    };
    int received = 0;
    for (Vertex v : triple) received += into_target(v);
    if (received < 7) continue;
    for (Vertex x : triple) {
      if (into_target(x) != 3) continue;
      VertexSet others = triple;
      others.erase(x);
      const Vertex y = others.first(), z = others.last();
      const VertexSet common = outward
                                   ? (g.out_neighbors(y) & g.out_neighbors(z) & target)
                                   : (g.in_neighbors(y) & g.in_neighbors(z) & target);
      if (common.empty()) continue;
      const Vertex w = common.first();
      VertexSet first = others;
      first.insert(w);
      VertexSet second = target;
      second.erase(w);
      second.insert(x);
      auto a = spans_copy(g, first, Pattern::transitive(3));
      auto b = spans_copy(g, second, Pattern::transitive(3));
      if (!a || !b) continue;
      SwapStep step;
      step.rule = outward ? SwapRule::kOutSeven : SwapRule::kInSeven;
      step.removed = {cycle, m.elements[j]};
      step.inserted = {*a, *b};
      return step;
    }
  }
  return std::nullopt;
}

inline Packing apply_step(const Packing& m, const SwapStep& step) {
  Packing out;
  out.host_order = m.host_order;
  VertexSet removed;
  for (const auto& e : step.removed) removed |= e.vertex_set();
  for (const auto& e : m.elements)
    if (!e.vertex_set().intersects(removed)) out.elements.push_back(e);
  for (const auto& e : step.inserted) out.elements.push_back(e);
  return out;
}

}  // namespace detail

/// One move on the C3 element `idx` of `m`: replace it in place when its
/// triple spans T3, otherwise rebuild it together with the lowest-index
/// element receiving (or sending) at least 7 arcs as two T3's. Returns the
/// move, or nullopt when neither rule applies (NoMove).
inline std::optional<SwapStep> find_swap_c3(const Digraph& g, const Packing& m, std::size_t idx) {
  detail::require(idx < m.elements.size(), "element index out of range");
  detail::require(is_cyclic_triangle(m.elements[idx]), "element is not a C3 copy");
  const auto& cycle = m.elements[idx];
  if (auto t3 = spans_copy(g, cycle.vertex_set(), Pattern::transitive(3))) {
    SwapStep step;
    step.rule = SwapRule::kInPlace;
    step.removed = {cycle};
    step.inserted = {*t3};
    return step;
  }
  if (auto step = detail::seven_arc_move(g, m, idx, true)) return step;
  return detail::seven_arc_move(g, m, idx, false);
}

/// Applies find_swap_c3; nullopt is NoMove.
inline std::optional<Packing> swap_c3(const Digraph& g, const Packing& m, std::size_t idx) {
  auto step = find_swap_c3(g, m, idx);
  if (!step) return std::nullopt;
  return detail::apply_step(m, *step);
}

struct T3PackResult {
  Packing packing;
  SwapTrace trace;
  /// The locally minimal host every element lives in (a subdigraph of G).
  Digraph minimized;
};

/// Perfect T3-packing of G under the disjunctive two-thirds condition.
inline T3PackResult t3_pack(const Digraph& g, std::uint64_t budget = kDefaultNodeBudget) {
  const int n = g.order();
  detail::require(n >= 3 && n % 3 == 0, "t3_pack needs 3 | n");
  T3PackResult result{{}, {}, minimize_edges_4_1(g)};
  const Digraph& h = result.minimized;
  const Digraph shadow = underlying_graph(h);
  const auto triangles = find_perfect_packing(shadow, Pattern::complete(3), budget);
  if (triangles.verdict == Verdict::kBudgetExceeded)
    throw StageFailed("triangle_packing", "node budget exhausted");
  detail::ensure(triangles.verdict == Verdict::kPacked,
                 "underlying graph with minimum degree 2n/3 has no triangle factor");
  const Pattern family[] = {Pattern::transitive(3), Pattern::cyclic_triangle()};
  Packing m;
  m.host_order = n;
  for (const auto& tri : triangles.packing->elements) {
    auto e = spans_any(h, tri.vertex_set(), family);
    detail::ensure(e.has_value(), "triangle of the underlying graph spans neither T3 nor C3");
    m.elements.push_back(*e);
  }
  for (;;) {
    std::optional<std::size_t> idx;
    for (std::size_t i = 0; i < m.elements.size() && !idx; ++i)
      if (is_cyclic_triangle(m.elements[i])) idx = i;
    if (!idx) break;
    auto step = find_swap_c3(h, m, *idx);
    if (!step) {
      std::string where;
      for (Vertex v : m.elements[*idx].image) where += " " + std::to_string(v);
      throw SwapNotFound("no move for C3 on" + where);
    }
    m = detail::apply_step(m, *step);
    result.trace.steps.push_back(std::move(*step));
  }
  result.packing = std::move(m);
  return result;
}

}  // namespace tpack
