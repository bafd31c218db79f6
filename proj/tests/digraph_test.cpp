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

#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tpack/constructions.hpp"
#include "tpack/containment.hpp"
#include "tpack/digraph.hpp"

namespace tpack {
namespace {

Digraph cycle3() {
  Digraph g(3);
  g.add_arc(0, 1);
  g.add_arc(1, 2);
  g.add_arc(2, 0);
  return g;
}

TEST(VertexSet, BasicOperations) {
  VertexSet s;
  EXPECT_TRUE(s.empty());
  EXPECT_EQ(s.first(), -1);
  s.insert(3);
  s.insert(100);
  s.insert(64);
  EXPECT_EQ(s.size(), 3);
  EXPECT_EQ(s.first(), 3);
  EXPECT_EQ(s.last(), 100);
  EXPECT_EQ(s.to_vector(), (std::vector<Vertex>{3, 64, 100}));
  s.erase(64);
  EXPECT_FALSE(s.contains(64));
  EXPECT_EQ(VertexSet::range(5).size(), 5);
  EXPECT_EQ(VertexSet::from_mask(0b1010).to_vector(), (std::vector<Vertex>{1, 3}));
  EXPECT_THROW(s.insert(VertexSet::kCapacity), DomainError);
}

TEST(Digraph, RejectsLoopsAndKeepsViewsConsistent) {
  Digraph g(4);
  EXPECT_THROW(g.add_arc(1, 1), DomainError);
  EXPECT_TRUE(g.add_arc(0, 1));
  EXPECT_FALSE(g.add_arc(0, 1));
  EXPECT_TRUE(g.add_arc(1, 0));
  EXPECT_EQ(g.arc_count(), 2);
  EXPECT_EQ(g.double_neighbors(0).to_vector(), std::vector<Vertex>{1});
  EXPECT_TRUE(g.remove_arc(1, 0));
  EXPECT_FALSE(g.remove_arc(1, 0));
  EXPECT_EQ(g.in_degree(0), 0);
}

TEST(Digraph, DegreeSumsEqualArcCount) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Digraph g = oracle::random_digraph(1 + trial % 12, 0.4, rng);
    long out = 0, in = 0;
    for (Vertex v = 0; v < g.order(); ++v) {
      out += g.out_degree(v);
      in += g.in_degree(v);
      EXPECT_FALSE(g.has_arc(v, v));
    }
    EXPECT_EQ(out, g.arc_count());
    EXPECT_EQ(in, g.arc_count());
    EXPECT_GE(total_min_degree(g), 2 * min_semidegree(g));
    EXPECT_EQ(min_semidegree(g), oracle::min_semidegree(g));
  }
}

TEST(Degrees, Examples) {
  EXPECT_EQ(min_semidegree(Digraph::complete(5)), 4);
  EXPECT_EQ(total_min_degree(Digraph::complete(5)), 8);
  EXPECT_EQ(min_semidegree(cycle3()), 1);
  EXPECT_EQ(total_min_degree(cycle3()), 2);
  EXPECT_EQ(min_semidegree(make_ex(9, 1).graph), 4);
  EXPECT_EQ(total_min_degree(make_ex(9, 0).graph), 10);
  EXPECT_THROW(min_semidegree(Digraph(0)), DomainError);
  EXPECT_THROW(total_min_degree(Digraph(0)), DomainError);
}

TEST(Pattern, TransitiveDegreeSignature) {
  for (int r = 1; r <= Pattern::kMaxOrder; ++r) {
    const Pattern t = Pattern::transitive(r);
    EXPECT_TRUE(t.is_tournament());
    for (int i = 0; i < r; ++i) {
      EXPECT_EQ(t.in_degree(i), i);
      EXPECT_EQ(t.out_degree(i), r - 1 - i);
    }
  }
  const Pattern c3 = Pattern::cyclic_triangle();
  for (int i = 0; i < 3; ++i) EXPECT_EQ(c3.out_degree(i), 1);
  EXPECT_EQ(Pattern::complete_minus_arc(3).arc_count(), 5);
}

TEST(Pattern, TournamentCountsByIsomorphism) {
  // Non-isomorphic tournaments on 1..6 vertices.
  const std::vector<std::size_t> expected{1, 1, 2, 4, 12, 56};
  for (int r = 1; r <= 6; ++r) EXPECT_EQ(all_tournaments(r).size(), expected[r - 1]) << r;
}

TEST(SpansCopy, Examples) {
  const std::vector<Vertex> abc{0, 1, 2};
  EXPECT_TRUE(spans_copy(Digraph::complete(3), abc, Pattern::cyclic_triangle()).has_value());
  EXPECT_FALSE(spans_copy(cycle3(), abc, Pattern::transitive(3)).has_value());
  Digraph t3(3);
  t3.add_arc(0, 1);
  t3.add_arc(0, 2);
  t3.add_arc(1, 2);
  const auto e = spans_copy(t3, abc, Pattern::transitive(3));
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(e->image, abc);
  EXPECT_TRUE(e->is_valid_in(t3));
  EXPECT_THROW(spans_copy(t3, std::vector<Vertex>{0, 1}, Pattern::transitive(3)), DomainError);
}

TEST(SpansCopy, AgreesWithPermutationOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int r = 3 + trial % 3;
    const Digraph g = oracle::random_digraph(r + 2, 0.7, rng);
    const auto family = all_tournaments(r);
    const Pattern& t = family[trial % family.size()];
    std::vector<Vertex> xs(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) xs[static_cast<std::size_t>(i)] = i + trial % 2;
    const auto e = spans_copy(g, xs, t);
    EXPECT_EQ(e.has_value(), oracle::spans(g, xs, t));
    if (e) { EXPECT_TRUE(e->is_valid_in(g)); }
  }
}

TEST(GammaIndependence, Examples) {
  const Digraph k10 = Digraph::complete(10);
  const VertexSet s(std::vector<Vertex>{0, 1, 2});
  EXPECT_TRUE(is_gamma_independent(k10, s, 0.06));
  EXPECT_FALSE(is_gamma_independent(k10, s, 0.05));
  EXPECT_TRUE(is_gamma_independent(Digraph(10), VertexSet::range(10), 0.0));
  // Reference order is explicit: relative to 3 vertices, 6 arcs exceed 0.06 * 9.
  EXPECT_FALSE(is_gamma_independent(k10, s, 0.06, 3));
}

TEST(AlphaContainsEx, Examples) {
  const Digraph ex9 = make_ex(9, 0).graph;
  EXPECT_EQ(ex9.arc_count(), 45);
  EXPECT_TRUE(alpha_contains_ex(ex9, 0.0, SearchMode::kExact).contains);
  Digraph minus = ex9;
  minus.remove_arc(minus.arcs().front().first, minus.arcs().front().second);
  const auto one = alpha_contains_ex(minus, 1.0 / 81, SearchMode::kExact);
  EXPECT_TRUE(one.contains);
  EXPECT_EQ(one.deficit, 1);
  const auto empty = alpha_contains_ex(Digraph(9), 0.1, SearchMode::kExact);
  EXPECT_FALSE(empty.contains);
  EXPECT_EQ(empty.deficit, 45);
  EXPECT_THROW(alpha_contains_ex(Digraph(13), 0.1, SearchMode::kExact), DomainError);
}

TEST(AlphaContainsEx, MonotoneAndHeuristicNeverOverclaims) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Digraph g = oracle::random_digraph(6 + trial % 4, 0.6, rng);
    const auto exact = alpha_contains_ex(g, 0.0, SearchMode::kExact);
    const double n2 = static_cast<double>(g.order()) * g.order();
    const double alpha = exact.deficit / n2;
    EXPECT_TRUE(alpha_contains_ex(g, alpha, SearchMode::kExact).contains);
    EXPECT_TRUE(alpha_contains_ex(g, alpha + 0.01, SearchMode::kExact).contains);
    if (exact.deficit > 0) {
      EXPECT_FALSE(alpha_contains_ex(g, (exact.deficit - 0.5) / n2, SearchMode::kExact).contains);
    }
    const auto heur = alpha_contains_ex(g, alpha, SearchMode::kHeuristic);
    EXPECT_GE(heur.deficit, exact.deficit);
    EXPECT_EQ(ex_deficit(g, heur.witness), heur.deficit);
  }
}

TEST(ParamHierarchy, ValidatesStrictDecrease) {
  const ParamHierarchy h{{"eps", 0.1}, {"xi", 0.01}, {"gamma", 0.001}};
  EXPECT_DOUBLE_EQ(h.get("xi"), 0.01);
  EXPECT_THROW((ParamHierarchy{{"eps", 0.1}, {"xi", 0.2}}), DomainError);
  EXPECT_THROW((ParamHierarchy{{"eps", 0.0}}), DomainError);
  EXPECT_THROW(h.get("beta"), DomainError);
}

TEST(Transformations, ReverseRelabelInduce) {
  std::mt19937_64 rng(3);
  const Digraph g = oracle::random_digraph(8, 0.5, rng);
  const Digraph rev = g.reversed();
  std::vector<Vertex> perm{7, 6, 5, 4, 3, 2, 1, 0};
  const Digraph rel = g.relabeled(perm);
  for (auto [u, v] : g.arcs()) {
    EXPECT_TRUE(rev.has_arc(v, u));
    EXPECT_TRUE(rel.has_arc(7 - u, 7 - v));
  }
  const VertexSet half = VertexSet::range(4);
  EXPECT_EQ(g.induced(half).arc_count(), g.arc_count_within(half));
  const Digraph und = underlying_graph(g);
  const Digraph dbl = double_edge_graph(g);
  for (Vertex u = 0; u < 8; ++u)
    for (Vertex v = 0; v < 8; ++v) {
      if (u == v) continue;
      EXPECT_EQ(und.has_arc(u, v), g.has_arc(u, v) || g.has_arc(v, u));
      EXPECT_EQ(dbl.has_arc(u, v), g.has_arc(u, v) && g.has_arc(v, u));
    }
}

}  // namespace
}  // namespace tpack
