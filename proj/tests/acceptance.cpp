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

// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails or exceeds its time limit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tpack/absorb.hpp"
#include "tpack/complex.hpp"
#include "tpack/constructions.hpp"
#include "tpack/harness.hpp"
#include "tpack/packing.hpp"
#include "tpack/structure.hpp"
#include "tpack/t3_local_search.hpp"
#include "tpack/turan.hpp"

namespace tpack {
namespace {

const Pattern kT3 = Pattern::transitive(3);
const Pattern kC3 = Pattern::cyclic_triangle();

/// Collects failed checks for one criterion.
struct Checker {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

bool no_counterexamples(const SweepReport& r) {
  return r.counterexamples.empty() && r.budget_exceeded == 0 && r.packed == r.instances;
}

void extremal_degrees(Checker& c) {
  for (int n : {9, 15, 21})
    c.expect(min_semidegree(make_ex(n, 1).graph) == 2 * n / 3 - 2, "Ex1(" + std::to_string(n) + ")");
  for (auto [r, n] : std::vector<std::pair<int, int>>{{3, 6}, {3, 9}, {4, 8}})
    c.expect(min_semidegree(make_near_independent_extremal(n, r)) == (r - 1) * n / r - 1,
             "near-independent (" + std::to_string(n) + "," + std::to_string(r) + ")");
  const Digraph k = make_k3minus_example(6);
  c.expect(4 * min_semidegree(k) == 3 * k.order() - 5, "K3-minus example at m = 6");
}

void tightness(Checker& c) {
  c.expect(find_perfect_packing(make_ex(9, 1).graph, kC3).verdict == Verdict::kExhaustedNone,
           "Ex1(9) has a C3-factor");
  for (const auto& t : all_tournaments(3))
    c.expect(find_perfect_packing(make_near_independent_extremal(6, 3), t).verdict == Verdict::kExhaustedNone,
             "G'(6,3) has a " + t.name() + "-factor");
  c.expect(find_perfect_packing(make_source_counterexample(6), kC3).verdict == Verdict::kExhaustedNone,
           "source example has a C3-factor");
  c.expect(find_perfect_packing(make_k3minus_example(6), Pattern::complete_minus_arc(3)).verdict ==
               Verdict::kExhaustedNone,
           "K3-minus example has a K3-minus-factor");
}

void t3_desk_scale(Checker& c) {
  const auto exhaustive = sweep_semidegree(kT3, 6, SweepMode::kExhaustive, 0, 0);
  c.expect(exhaustive.instances == 6600 && no_counterexamples(exhaustive), "exhaustive n = 6");
  for (int n : {6, 9, 12})
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
      const Digraph g = random_digraph_cond_4_1(n, detail::instance_seed(seed, n));
      const auto res = t3_pack(g);
      const bool valid = verify_packing(g, kT3, res.packing);
      c.expect(valid, "t3_pack output invalid at n = " + std::to_string(n));
      if (n <= 9)
        c.expect((find_perfect_packing(g, kT3).verdict == Verdict::kPacked) == valid,
                 "solver disagrees at n = " + std::to_string(n));
    }
}

void extremal_positive(Checker& c) {
  for (int n : {9, 15}) {
    const Digraph g = make_ex(n, 0).graph;
    const auto staged = extremal_c3_pack_or_solve(g, 0.05);
    c.expect(verify_packing(g, kC3, staged.packing), "staged packing of Ex(" + std::to_string(n) + ")");
    const auto solved = find_perfect_packing(g, kC3);
    c.expect(solved.verdict == Verdict::kPacked && verify_packing(g, kC3, *solved.packing),
             "solver packing of Ex(" + std::to_string(n) + ")");
  }
}

void oracle_equivalence(Checker& c) {
  std::mt19937_64 rng(500);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 3 + trial % 5;
    const Digraph g = oracle::random_digraph(n, 0.3 + 0.1 * (trial % 6), rng);
    const auto tours = all_tournaments(3);
    const Pattern& t = tours[trial % tours.size()];
    const auto best = find_max_packing(g, t);
    c.expect(best.exact && static_cast<int>(best.packing.size()) == oracle::max_packing_size(g, {t}),
             "find_max_packing trial " + std::to_string(trial));
    c.expect(count_copies(g, t) == oracle::count_spanning_sets(g, t), "count_copies trial " + std::to_string(trial));
    std::vector<Vertex> xs(3);
    std::iota(xs.begin(), xs.end(), static_cast<Vertex>(trial % (n - 2)));
    c.expect(spans_copy(g, xs, t).has_value() == oracle::spans(g, xs, t), "spans_copy trial " + std::to_string(trial));
  }
}

void complex_properties(Checker& c) {
  const int n = 12;
  const int need = static_cast<int>(std::ceil((1.0 - 1.0 / 3 - 0.05) * n - 1e-9));
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Digraph g = random_digraph_min_semidegree(n, need, seed);
    const Complex j = build_complex(g, kT3);
    c.expect(check_km_hypothesis(j, 0.15).holds, "km hypothesis seed " + std::to_string(seed));
    c.expect(is_downward_closed(j), "downward closure seed " + std::to_string(seed));
    for (auto mode : {MatchingMode::kGreedy, MatchingMode::kExact}) {
      const auto m = top_layer_matching(j, mode);
      const Packing p = matching_to_packing(j, m);
      c.expect(verify_packing(g, kT3, p, false) && packing_to_matching(p) == m,
               "round trip seed " + std::to_string(seed));
    }
  }
}

void connectors(Checker& c) {
  for (int r : {3, 4, 5})
    for (int n = r + 1; n <= 12; ++n)
      for (const auto& t : all_tournaments(r)) {
        const long expected = std::lround(detail::binomial(n - 2, r - 1));
        c.expect(count_connectors(Digraph::complete(n), t, 0, 1).count == expected,
                 "complete n = " + std::to_string(n) + " " + t.name());
      }
  const Digraph g = make_near_independent_extremal(6, 3);
  const auto v = near_independent_set(6, 3).to_vector();
  long naive = 0;
  for (Vertex a = 0; a < 6; ++a)
    for (Vertex b = a + 1; b < 6; ++b) {
      if (a == v[0] || a == v[1] || b == v[0] || b == v[1]) continue;
      naive += oracle::spans(g, {a, b, v[0]}, kT3) && oracle::spans(g, {a, b, v[1]}, kT3);
    }
  const auto count = count_connectors(g, kT3, v[0], v[1]).count;
  c.expect(count == 3 && naive == 3, "G'(6,3) connector count " + std::to_string(count));
}

void absorbing(Checker& c) {
  const Digraph g = Digraph::complete(60);
  AbsorberOptions options;
  options.absorber_size = 6;
  options.candidates = 32;
  options.probes = 4;
  const AbsorberFamily f = build_absorbing_family(g, kC3, 0.3, 1, options);
  c.expect(check_family(g, f), "family invariants");
  const VertexSet cover = f.cover();
  c.expect(cover.size() <= 18, "|M| <= xi n");
  for (std::size_t i = 0; i < f.sets.size(); ++i)
    for (std::size_t j = i + 1; j < f.sets.size(); ++j)
      c.expect(!f.sets[i].intersects(f.sets[j]), "absorbers overlap");
  const VertexSet rest = g.vertices() - cover;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::mt19937_64 rng(seed);
    const int size = 3 * (1 + static_cast<int>(seed % 3));
    const VertexSet w = detail::random_subset(rest, size, rng);
    const Packing p = absorb(g, f, w);
    c.expect(verify_packing(g, kC3, p, false) && p.covered() == (cover | w),
             "absorb seed " + std::to_string(seed));
  }
}

bool naive_covering(const Digraph& g, int d, const VertexSet& x, Matching& m, Vertex from = 0) {
  if (static_cast<int>(m.size()) == d) return x.is_subset_of(matched_vertices(m));
  const VertexSet used = matched_vertices(m);
  for (Vertex u = from; u < g.order(); ++u) {
    if (used.contains(u)) continue;
    for (Vertex v : g.out_neighbors(u)) {
      if (v <= u || used.contains(v)) continue;
      m.push_back({u, v});
      if (naive_covering(g, d, x, m, u + 1)) return true;
      m.pop_back();
    }
  }
  return false;
}

Digraph random_min_degree_graph(int n, int d, std::mt19937_64& rng) {
  for (;;) {
    const Digraph g = oracle::random_graph(n, 0.3 + 0.1 * static_cast<double>(rng() % 6), rng);
    bool ok = true;
    for (Vertex v = 0; v < n; ++v) ok = ok && g.out_degree(v) >= d;
    if (ok) return g;
  }
}

void lemma_certificates(Checker& c) {
  std::mt19937_64 rng(1000);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 4 + trial % 9;
    const int d = 1 + static_cast<int>(rng() % (n / 2));
    const Digraph g = random_min_degree_graph(n, d, rng);
    std::vector<Vertex> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const VertexSet x(std::vector<Vertex>(perm.begin(), perm.begin() + d));
    const Matching m = d_matching_covering(g, d, x);
    c.expect(static_cast<int>(m.size()) == d && is_matching_in(g, m) && x.is_subset_of(matched_vertices(m)),
             "d-matching trial " + std::to_string(trial));
    if (n <= 8) {
      Matching probe;
      c.expect(naive_covering(g, d, x, probe), "exhaustive d-matching trial " + std::to_string(trial));
    }
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 * (3 + trial % 6);
    const double gamma = 0.05 * (1 + trial % 6);
    const int need = static_cast<int>(std::ceil((0.5 - gamma) * n - 1e-9));
    const Digraph g = random_min_degree_graph(n, need, rng);
    c.expect(validate_certificate(g, matching_or_certificate(g, gamma)),
             "certificate trial " + std::to_string(trial));
  }
  const std::vector<Edge> triangles{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
  const Digraph tt = make_graph(6, triangles);
  const auto cert = matching_or_certificate(tt, 1.0 / 6);
  c.expect(cert.kind == MatchCertificate::Kind::kClosePartition && cert.cross == 0 && validate_certificate(tt, cert),
           "two triangles");
}

void small_thresholds(Checker& c) {
  for (int n : {6, 9}) {
    const auto kr = sweep_total_degree_kr(3, n, 200, 12);
    c.expect(kr.instances == 200 && no_counterexamples(kr), "total degree K3 at n = " + std::to_string(n));
    const auto wang = sweep_wang(n, 200, 12);
    c.expect(wang.instances == 200 && no_counterexamples(wang), "C3 total degree at n = " + std::to_string(n));
  }
}

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<void(Checker&)> run;
};

}  // namespace
}  // namespace tpack

int main() {
  using namespace tpack;
  const std::vector<Criterion> criteria{
      {1, "extremal degree values", 1, extremal_degrees},
      {2, "tightness by exhaustive search", 60, tightness},
      {3, "T3-factors under the disjunctive 2n/3 condition", 600, t3_desk_scale},
      {4, "C3-factors of Ex(n)", 60, extremal_positive},
      {5, "oracle equivalence", 300, oracle_equivalence},
      {6, "complex properties", 120, complex_properties},
      {7, "connector counts", 60, connectors},
      {8, "absorbing family", 300, absorbing},
      {9, "matching lemma certificates", 300, lemma_certificates},
      {10, "total-degree thresholds by sampling", 300, small_thresholds},
  };
  int failed = 0;
  for (const auto& crit : criteria) {
    Checker checker;
    const auto start = std::chrono::steady_clock::now();
    try {
      crit.run(checker);
    } catch (const std::exception& e) {
      checker.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > crit.limit_seconds)
      checker.failures.push_back("took " + std::to_string(secs) + " s, limit " + std::to_string(crit.limit_seconds));
    const bool pass = checker.failures.empty();
    failed += !pass;
    std::printf("criterion %2d: %s  %s (%.2f s)\n", crit.id, pass ? "PASS" : "FAIL", crit.name.c_str(), secs);
    for (std::size_t i = 0; i < checker.failures.size() && i < 5; ++i)
      std::printf("    %s\n", checker.failures[i].c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
