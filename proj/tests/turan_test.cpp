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

#include <algorithm>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tpack/constructions.hpp"
#include "tpack/turan.hpp"

namespace tpack {
namespace {

/// Complete bipartite digraph with classes {0..h-1}, {h..2h-1}, every cross
/// pair joined both ways.
Digraph double_bipartite(int h) {
  Digraph g(2 * h);
  for (Vertex u = 0; u < h; ++u)
    for (Vertex v = h; v < 2 * h; ++v) {
      g.add_arc(u, v);
      g.add_arc(v, u);
    }
  return g;
}

bool is_complete_on(const Digraph& g, const VertexSet& s) {
  for (Vertex u : s)
    for (Vertex v : s)
      if (u != v && !g.has_arc(u, v)) return false;
  return true;
}

TEST(FindKrFromDensity, Examples) {
  const VertexSet k = find_kr_from_density(Digraph::complete(4), 3);
  EXPECT_EQ(k.size(), 3);
  Digraph pair(3);
  pair.add_arc(0, 1);
  pair.add_arc(1, 0);
  pair.add_arc(1, 2);
  pair.add_arc(2, 0);
  EXPECT_EQ(find_kr_from_density(pair, 2), VertexSet(std::vector<Vertex>{0, 1}));
  Digraph minus = Digraph::complete(4);
  minus.remove_arc(0, 1);
  minus.remove_arc(1, 0);
  EXPECT_EQ(minus.arc_count(), 10);
  EXPECT_FALSE(satisfies_density_bound(minus, 3));
  EXPECT_THROW(find_kr_from_density(minus, 3), DomainError);
}

TEST(FindKrFromDensity, NeverFailsAboveTheBound) {
  std::mt19937_64 rng(8);
  int tested = 0;
  for (int trial = 0; trial < 3000 && tested < 300; ++trial) {
    const int r = 2 + trial % 3;
    const int n = r + static_cast<int>(rng() % (13 - r));
    const Digraph g = oracle::random_digraph(n, 0.75 + 0.2 * ((trial / 3) % 2), rng);
    if (!satisfies_density_bound(g, r)) continue;
    ++tested;
    const VertexSet k = find_kr_from_density(g, r);
    EXPECT_EQ(k.size(), r);
    EXPECT_TRUE(is_complete_on(g, k));
  }
  EXPECT_GE(tested, 100);
}

TEST(CountCopies, Examples) {
  const auto t4 = all_tournaments(4);
  for (const auto& t : t4) EXPECT_EQ(count_copies(Digraph::complete(7), t), 35);
  EXPECT_EQ(count_copies(make_ex(3, 0).graph, Pattern::transitive(3)), 0);
  EXPECT_EQ(count_copies(make_ex(3, 0).graph, Pattern::cyclic_triangle()), 1);
}

TEST(CountCopies, MatchesNaiveEnumeration) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 5;
    const Digraph g = oracle::random_digraph(n, 0.6, rng);
    const int r = 3 + trial % 2;
    if (r > n) continue;
    const auto tours = all_tournaments(r);
    const Pattern& t = tours[trial % tours.size()];
    EXPECT_EQ(count_copies(g, t), oracle::count_spanning_sets(g, t));
  }
}

TEST(IndependentOrCopy, Examples) {
  const auto k = independent_or_copy(Digraph::complete(6), Pattern::transitive(4), 0.0);
  EXPECT_EQ(k.kind, IndependentOrCopy::Kind::kCopy);
  ASSERT_TRUE(k.copy.has_value());
  EXPECT_TRUE(k.copy->is_valid_in(Digraph::complete(6)));

  const Digraph bip = double_bipartite(4);
  const auto res = independent_or_copy(bip, Pattern::transitive(3), 0.0);
  EXPECT_EQ(res.kind, IndependentOrCopy::Kind::kIndependentSet);
  EXPECT_EQ(res.independent.size(), 4);
  EXPECT_EQ(bip.arc_count_within(res.independent), 0);
  EXPECT_TRUE(res.independent == VertexSet::range(4) || res.independent == bip.vertices() - VertexSet::range(4));
  EXPECT_DOUBLE_EQ(res.guaranteed_size, 4.0);

  const auto vacuous = independent_or_copy(bip, Pattern::transitive(3), 0.3);
  EXPECT_EQ(vacuous.kind, IndependentOrCopy::Kind::kIndependentSet);
  EXPECT_LT(vacuous.guaranteed_size, 0.0);
  EXPECT_EQ(bip.arc_count_within(vacuous.independent), 0);

  EXPECT_THROW(independent_or_copy(make_ex(9, 0).graph, Pattern::transitive(4), 0.0), DomainError);
}

TEST(IndependentOrCopy, CertificatesAreValid) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const int r = 3 + trial % 2;
    const int n = 8 + trial % 5;
    const Digraph g = oracle::random_digraph(n, 0.55 + 0.1 * (trial % 4), rng);
    const auto tours = all_tournaments(r);
    const Pattern& t = tours[trial % tours.size()];
    const double alpha = std::max(0.0, 1.0 - 1.0 / (r - 1) - static_cast<double>(min_semidegree(g)) / n);
    const auto res = independent_or_copy(g, t, alpha);
    if (res.kind == IndependentOrCopy::Kind::kCopy) {
      ASSERT_TRUE(res.copy.has_value());
      EXPECT_TRUE(res.copy->is_valid_in(g));
      EXPECT_EQ(res.copy->pattern, t);
    } else {
      EXPECT_EQ(g.arc_count_within(res.independent), 0);
      for (Vertex u : res.candidates.a) EXPECT_EQ(g.out_degree(u, res.candidates.b), 0);
      EXPECT_FALSE(res.from_dense_part);
    }
  }
}

TEST(ConsistentOrIndependent, Examples) {
  const auto k = consistent_or_independent(Digraph::complete(8), 4, 0.0);
  EXPECT_EQ(k.kind, ConsistentOrIndependent::Kind::kCopy);
  ASSERT_TRUE(k.copy.has_value());
  EXPECT_EQ(k.copy->pattern, Pattern::transitive(4));
  EXPECT_TRUE(k.copy->is_valid_in(Digraph::complete(8)));

  const Digraph bip = double_bipartite(4);
  const auto res = consistent_or_independent(bip, 3, 0.0);
  EXPECT_EQ(res.kind, ConsistentOrIndependent::Kind::kIndependentSet);
  EXPECT_EQ(res.independent, bip.vertices() - VertexSet::range(4));
  EXPECT_EQ(bip.arc_count_within(res.independent), 0);
}

TEST(ConsistentOrIndependent, SingleArcInsideTheCommonNeighbourhood) {
  Digraph g = double_bipartite(4);
  g.add_arc(5, 6);
  const auto res = consistent_or_independent(g, 3, 0.0);
  ASSERT_EQ(res.kind, ConsistentOrIndependent::Kind::kCopy);
  ASSERT_EQ(res.steps.back().turning_point, 1);
  EXPECT_EQ(res.copy->image, (std::vector<Vertex>{0, 5, 6}));
  EXPECT_TRUE(spans_copy(g, res.copy->image, Pattern::transitive(3)).has_value());
}

TEST(ConsistentOrIndependent, EveryStepIsConsistent) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const int r = 3 + static_cast<int>(seed % 4);
    const int n = 12;
    const Digraph g = random_digraph_disjunctive(n, (r - 2) * n / (r - 1) + 1, seed);
    const auto res = consistent_or_independent(g, r, 0.05);
    for (const auto& step : res.steps) EXPECT_TRUE(is_consistent(g, step, res.theta));
    EXPECT_EQ(static_cast<int>(res.steps.size()), std::max(1, r - 2));
    if (res.kind == ConsistentOrIndependent::Kind::kCopy) {
      EXPECT_TRUE(res.copy->is_valid_in(g));
    } else {
      EXPECT_EQ(g.arc_count_within(res.independent), 0);
    }
  }
}

TEST(ConsistentOrIndependent, RejectsHostsBelowTheDisjunction) {
  EXPECT_THROW(consistent_or_independent(Digraph(6), 3, 0.0), DomainError);
  EXPECT_THROW(consistent_or_independent(Digraph::complete(6), 9, 0.0), DomainError);
}

}  // namespace
}  // namespace tpack
