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

// tpack: command-line front end. Exit codes: 0 completed, 2 negative
// outcome (no packing, counterexample, failed check), 3 solver budget
// exhausted, 1 error.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tpack/absorb.hpp"
#include "tpack/complex.hpp"
#include "tpack/constructions.hpp"
#include "tpack/containment.hpp"
#include "tpack/digraph.hpp"
#include "tpack/errors.hpp"
#include "tpack/harness.hpp"
#include "tpack/io.hpp"
#include "tpack/packing.hpp"
#include "tpack/structure.hpp"
#include "tpack/t3_local_search.hpp"
#include "tpack/turan.hpp"

namespace {

using namespace tpack;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNegative = 2;
constexpr int kExitBudget = 3;

std::vector<Vertex> parse_vertices(const std::string& text) {
  std::vector<Vertex> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw DomainError("bad vertex '" + item + "'");
    out.push_back(v);
  }
  return out;
}

VertexSet parse_set(const std::string& text, int n) {
  VertexSet s;
  for (Vertex v : parse_vertices(text)) {
    detail::require(v >= 0 && v < n, "vertex " + std::to_string(v) + " out of range");
    s.insert(v);
  }
  return s;
}

std::vector<Pattern> parse_family(const std::string& text) {
  std::vector<Pattern> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(pattern_by_name(item));
  detail::require(!out.empty(), "empty pattern family");
  return out;
}

void emit(const Json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw LoadError("cannot write " + path);
  out << j.dump(2) << '\n';
}

Json to_json(const ExPartition& p) {
  Json classes = Json::array();
  for (const auto& c : p.classes) classes.push_back(tpack::to_json(c));
  return {{"classes", classes}, {"shift", p.shift}};
}

Json to_json(const Matching& m) {
  Json edges = Json::array();
  for (auto [u, v] : m) edges.push_back({u, v});
  return edges;
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::kPacked: return kExitOk;
    case Verdict::kExhaustedNone: return kExitNegative;
    case Verdict::kBudgetExceeded: return kExitBudget;
  }
  return kExitError;
}

// ---------------------------------------------------------------------------

struct GenArgs {
  std::string family;
  int n = 0, r = 3, c = 0, m = 6, min = 0;
  double p = 0.5;
  std::uint64_t seed = 1;
  std::string out;
};

int run_gen(const GenArgs& a) {
  Digraph g(0);
  const std::string& f = a.family;
  if (f == "ex") g = make_ex(a.n, a.c).graph;
  else if (f == "near") g = make_near_independent_extremal(a.n, a.r);
  else if (f == "source") g = make_source_counterexample(a.n);
  else if (f == "k3minus") g = make_k3minus_example(a.m);
  else if (f == "g1") g = make_kr_total_degree_tightness(a.n, a.r);
  else if (f == "complete") g = Digraph::complete(a.n);
  else if (f == "random") g = random_digraph(a.n, a.p, a.seed);
  else if (f == "semidegree") g = random_digraph_min_semidegree(a.n, a.min, a.seed);
  else if (f == "disjunctive") g = random_digraph_disjunctive(a.n, a.min, a.seed);
  else if (f == "cond41") g = random_digraph_cond_4_1(a.n, a.seed);
  else if (f == "total") g = random_digraph_min_total_degree(a.n, a.min, a.seed);
  else throw DomainError("unknown family " + f);
  if (a.out.empty() || a.out == "-") write_edge_list(std::cout, g);
  else save_edge_list(a.out, g);
  return kExitOk;
}

struct SolveArgs {
  std::string graph, tournament = "t3", family;
  bool almost = false, time = false;
  std::uint64_t budget = kDefaultNodeBudget;
  std::string out;
};

int run_solve(const SolveArgs& a) {
  const Digraph g = load_edge_list(a.graph);
  const auto family = a.family.empty() ? std::vector<Pattern>{pattern_by_name(a.tournament)}
                                       : parse_family(a.family);
  if (a.almost) {
    const auto best = find_max_family_packing(g, family, g.vertices(), a.budget);
    Json j{{"verdict", best.exact ? "maximum" : "budget_exceeded"},
           {"nodes", best.nodes},
           {"uncovered", g.order() - best.packing.covered().size()},
           {"packing", to_json(best.packing)}};
    emit(j, a.out);
    return best.exact ? kExitOk : kExitBudget;
  }
  const auto cert = find_perfect_family_packing(g, family, a.budget);
  emit(to_json(cert, a.time), a.out);
  return verdict_exit(cert.verdict);
}

struct T3Args {
  std::string graph, trace, out;
  std::uint64_t budget = kDefaultNodeBudget;
};

int run_t3pack(const T3Args& a) {
  const Digraph g = load_edge_list(a.graph);
  const auto result = t3_pack(g, a.budget);
  emit({{"verified", verify_packing(g, Pattern::transitive(3), result.packing)},
        {"packing", to_json(result.packing)},
        {"swaps", result.trace.steps.size()}},
       a.out);
  if (!a.trace.empty()) {
    Json steps = Json::array();
    for (const auto& s : result.trace.steps) {
      Json removed = Json::array(), inserted = Json::array();
      for (const auto& e : s.removed) removed.push_back(to_json(e));
      for (const auto& e : s.inserted) inserted.push_back(to_json(e));
      steps.push_back({{"rule", to_string(s.rule)}, {"removed", removed}, {"inserted", inserted}});
    }
    emit({{"minimized", to_json(result.minimized)}, {"steps", steps}}, a.trace);
  }
  return kExitOk;
}

struct TuranArgs {
  std::string graph, op = "density", tournament = "t3", out;
  int r = 3;
  double alpha = 0.0;
};

int run_turan(const TuranArgs& a) {
  const Digraph g = load_edge_list(a.graph);
  if (a.op == "density") {
    const auto clique = find_complete_subdigraph(g, g.vertices(), a.r);
    Json j{{"r", a.r},
           {"arcs", g.arc_count()},
           {"density_bound_met", satisfies_density_bound(g, a.r)},
           {"clique", clique ? to_json(*clique) : Json(nullptr)}};
    emit(j, a.out);
    return clique ? kExitOk : kExitNegative;
  }
  if (a.op == "independent") {
    const auto res = independent_or_copy(g, pattern_by_name(a.tournament), a.alpha);
    const bool copy = res.kind == IndependentOrCopy::Kind::kCopy;
    Json j{{"kind", copy ? "copy" : "independent_set"},
           {"copy", res.copy ? to_json(*res.copy) : Json(nullptr)},
           {"independent", to_json(res.independent)},
           {"ab", {res.ab.first, res.ab.second}},
           {"base", res.base},
           {"a", to_json(res.candidates.a)},
           {"b", to_json(res.candidates.b)},
           {"from_dense_part", res.from_dense_part},
           {"guaranteed_size", res.guaranteed_size}};
    emit(j, a.out);
    return kExitOk;
  }
  if (a.op == "consistent") {
    const auto res = consistent_or_independent(g, a.r, a.alpha);
    Json steps = Json::array();
    for (const auto& s : res.steps) steps.push_back({{"order", s.order}, {"turning_point", s.turning_point}});
    const bool copy = res.kind == ConsistentOrIndependent::Kind::kCopy;
    Json j{{"kind", copy ? "copy" : "independent_set"},
           {"copy", res.copy ? to_json(*res.copy) : Json(nullptr)},
           {"independent", to_json(res.independent)},
           {"theta", res.theta},
           {"steps", steps},
           {"common", to_json(res.common)},
           {"guaranteed_size", res.guaranteed_size}};
    emit(j, a.out);
    return kExitOk;
  }
  throw DomainError("unknown --op " + a.op);
}

struct ComplexArgs {
  std::string graph, tournament = "t3", matching = "greedy", out;
  double eps = 0.15;
  bool report = false;
};

int run_complex(const ComplexArgs& a) {
  const Digraph g = load_edge_list(a.graph);
  const Complex j = build_complex(g, pattern_by_name(a.tournament));
  Json sizes = Json::array();
  for (const auto& layer : j.layers) sizes.push_back(layer.size());
  const auto km = check_km_hypothesis(j, a.eps);
  Json out{{"k", j.k()}, {"layer_sizes", sizes}, {"degree_sequence", km.degrees}};
  if (a.report) {
    out["downward_closed"] = is_downward_closed(j);
    out["km_check"] = {{"eps", a.eps},
                       {"holds", km.holds},
                       {"failing_layer", km.failing_layer},
                       {"bounds", km.bounds}};
  }
  const auto mode = a.matching == "exact" ? MatchingMode::kExact : MatchingMode::kGreedy;
  detail::require(a.matching == "exact" || a.matching == "greedy", "--matching is greedy or exact");
  const auto m = top_layer_matching(j, mode);
  out["matching"] = {{"mode", a.matching}, {"size", m.size()}, {"packing", to_json(matching_to_packing(j, m))}};
  emit(out, a.out);
  return kExitOk;
}

struct AbsorbArgs {
  std::string graph, tournament = "c3", family_file, w, out;
  double xi = 0.3;
  std::uint64_t seed = 1;
  int absorber_size = 0, candidates = 64, probes = 8, w_size = 0;
};

Json family_json(const AbsorberFamily& f) {
  Json sets = Json::array(), hits = Json::array();
  for (const auto& s : f.sets) sets.push_back(to_json(s));
  for (const auto& h : f.hits) {
    Json probes = Json::array();
    for (const auto& q : h) probes.push_back(to_json(q));
    hits.push_back(probes);
  }
  return {{"pattern", to_json(f.pattern)},
          {"absorber_size", f.absorber_size},
          {"xi", f.xi},
          {"candidates_drawn", f.candidates_drawn},
          {"candidates_absorbing", f.candidates_absorbing},
          {"cover", to_json(f.cover())},
          {"sets", sets},
          {"hits", hits}};
}

AbsorberFamily load_family(const std::string& path, const Pattern& t) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path);
  const Json j = Json::parse(in);
  AbsorberFamily f;
  f.pattern = t;
  f.absorber_size = j.at("absorber_size").get<int>();
  f.xi = j.at("xi").get<double>();
  auto to_set = [](const Json& v) {
    VertexSet s;
    for (const auto& x : v) s.insert(x.get<Vertex>());
    return s;
  };
  for (const auto& s : j.at("sets")) f.sets.push_back(to_set(s));
  for (const auto& h : j.at("hits")) {
    f.hits.emplace_back();
    for (const auto& q : h) f.hits.back().push_back(to_set(q));
  }
  detail::require(f.hits.size() == f.sets.size(), "family file: sets and hits differ in length");
  return f;
}

int run_absorb(const std::string& action, const AbsorbArgs& a) {
  const Digraph g = load_edge_list(a.graph);
  const Pattern t = pattern_by_name(a.tournament);
  if (action == "build") {
    AbsorberOptions options;
    options.absorber_size = a.absorber_size;
    options.candidates = a.candidates;
    options.probes = a.probes;
    emit(family_json(build_absorbing_family(g, t, a.xi, a.seed, options)), a.out);
    return kExitOk;
  }
  detail::require(!a.family_file.empty(), "--family is required");
  const AbsorberFamily f = load_family(a.family_file, t);
  if (action == "check") {
    const bool ok = check_family(g, f);
    emit({{"valid", ok}}, a.out);
    return ok ? kExitOk : kExitNegative;
  }
  VertexSet w;
  if (!a.w.empty()) {
    w = parse_set(a.w, g.order());
  } else {
    const auto free = (g.vertices() - f.cover()).to_vector();
    detail::require(a.w_size >= 0 && a.w_size <= static_cast<int>(free.size()),
                    "--w-size exceeds the vertices outside the family");
    std::vector<Vertex> pick;
    std::sample(free.begin(), free.end(), std::back_inserter(pick), a.w_size, std::mt19937_64(a.seed));
    for (Vertex v : pick) w.insert(v);
  }
  const Packing p = absorb(g, f, w);
  emit({{"w", to_json(w)},
        {"verified", verify_packing(g, std::span<const Pattern>(&t, 1), p, true, f.cover() | w)},
        {"packing", to_json(p)}},
       a.out);
  return kExitOk;
}

struct LemmaArgs {
  std::string graph, x, classes, out;
  int d = 0;
  double gamma = 0.1, delta = 0.1, alpha = 0.05;
  bool directed = false;
};

int run_lemma(const std::string& action, const LemmaArgs& a) {
  const Digraph g = load_edge_list(a.graph);
  if (action == "match") {
    const VertexSet x = parse_set(a.x, g.order());
    if (a.directed) {
      Json arcs = Json::array();
      for (auto [u, v] : d_matching_covering_digraph(g, a.d, x)) arcs.push_back({u, v});
      emit({{"d", a.d}, {"x", to_json(x)}, {"arcs", arcs}}, a.out);
    } else {
      emit({{"d", a.d}, {"x", to_json(x)}, {"matching", to_json(d_matching_covering(g, a.d, x))}},
           a.out);
    }
    return kExitOk;
  }
  if (action == "matchcert") {
    const auto c = a.directed ? matching_or_certificate_digraph(g, a.gamma)
                              : matching_or_certificate(g, a.gamma);
    emit({{"kind", to_string(c.kind)},
          {"valid", validate_certificate(g, c)},
          {"matching", to_json(c.matching)},
          {"core", to_json(c.core)},
          {"independent", to_json(c.independent)},
          {"a", to_json(c.a)},
          {"b", to_json(c.b)},
          {"cross", c.cross},
          {"gamma", c.gamma},
          {"factor", c.factor},
          {"directed", c.directed}},
         a.out);
    return kExitOk;
  }
  if (action == "classify") {
    std::vector<VertexSet> classes;
    if (!a.classes.empty()) {
      std::stringstream ss(a.classes);
      for (std::string part; std::getline(ss, part, ';');) classes.push_back(parse_set(part, g.order()));
    } else {
      const auto mode = g.order() <= kExactContainmentMaxOrder ? SearchMode::kExact : SearchMode::kHeuristic;
      const auto found = alpha_contains_ex(g, a.alpha, mode);
      classes.assign(found.witness.classes.begin(), found.witness.classes.end());
    }
    const auto cls = classify_vertices(g, classes, std::nullopt, a.delta);
    Json classes_json = Json::array(), vertices = Json::array();
    for (const auto& c : classes) classes_json.push_back(to_json(c));
    for (Vertex x = 0; x < g.order(); ++x) {
      Json per = Json::array();
      for (const auto& fl : cls.flags[static_cast<std::size_t>(x)])
        per.push_back({{"member", fl.member},
                       {"bad", fl.bad},
                       {"exceptional", fl.exceptional},
                       {"excellent", fl.excellent}});
      Json v{{"vertex", x}, {"classes", per}};
      if (!cls.externally_excellent.empty()) {
        v["externally_excellent"] = static_cast<bool>(cls.externally_excellent[static_cast<std::size_t>(x)]);
        v["internally_excellent"] = static_cast<bool>(cls.internally_excellent[static_cast<std::size_t>(x)]);
      }
      vertices.push_back(v);
    }
    emit({{"delta", a.delta}, {"classes", classes_json}, {"vertices", vertices}}, a.out);
    return kExitOk;
  }
  if (action == "expack") {
    ExtremalOptions options;
    options.gamma = a.gamma;
    const auto res = extremal_c3_pack_or_solve(g, a.alpha, options);
    Json j{{"fell_back", res.fell_back},
           {"failed_stage", res.failed_stage},
           {"verified", verify_packing(g, Pattern::cyclic_triangle(), res.packing)},
           {"packing", to_json(res.packing)}};
    if (res.staged) {
      Json moves = Json::array();
      for (auto [v, c] : res.staged->relocations) moves.push_back({{"vertex", v}, {"class", c}});
      j["initial"] = to_json(res.staged->initial);
      j["relocations"] = moves;
    }
    emit(j, a.out);
    return kExitOk;
  }
  throw DomainError("unknown lemma " + action);
}

struct VerifyArgs {
  int r = 3, n = 6, samples = 100, workers = 1;
  std::string tournament, mode = "random", out;
  std::uint64_t seed = 1, budget = kDefaultNodeBudget;
  bool time = false;
};

int run_verify(const std::string& kind, const VerifyArgs& a) {
  if (kind == "tightness") {
    const auto rep = tightness_suite(a.r, a.n, a.budget);
    emit(to_json(rep), a.out);
    return rep.all_pass() ? kExitOk : kExitNegative;
  }
  SweepOptions options;
  options.budget = a.budget;
  options.record_time = a.time;
  options.workers = a.workers;
  detail::require(a.mode == "random" || a.mode == "exhaustive", "--mode is random or exhaustive");
  const SweepMode mode = a.mode == "exhaustive" ? SweepMode::kExhaustive : SweepMode::kRandom;
  SweepReport rep;
  if (kind == "threshold") {
    const Pattern t = pattern_by_name(a.tournament.empty() ? "t" + std::to_string(a.r) : a.tournament);
    detail::require(t.order() == a.r, "--tournament must have order --r");
    rep = sweep_semidegree(t, a.n, mode, a.samples, a.seed, options);
  } else if (kind == "conj14") {
    rep = sweep_conjecture_1_4(a.r, a.n, mode, a.samples, a.seed, options);
  } else if (kind == "krtotal") {
    rep = sweep_total_degree_kr(a.r, a.n, a.samples, a.seed, options);
  } else if (kind == "wang") {
    rep = sweep_wang(a.n, a.samples, a.seed, options);
  } else {
    throw DomainError("unknown sweep " + kind);
  }
  if (a.out.empty() || a.out == "-") emit(to_json(rep), a.out);
  else write_report(rep, a.out);
  return rep.counterexamples.empty() ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tournament packings in dense digraphs: solvers, constructions and sweeps"};
  app.require_subcommand(1);
  int exit_code = kExitOk;

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Emit an edge list of a generated digraph");
  gen_cmd->add_option("family", gen.family,
                      "ex|near|source|k3minus|g1|complete|random|semidegree|disjunctive|cond41|total")
      ->required();
  gen_cmd->add_option("--n", gen.n, "Order");
  gen_cmd->add_option("--r", gen.r, "Tournament order (near, g1)");
  gen_cmd->add_option("--c", gen.c, "Class shift c of Ex_c (ex); 0 is balanced");
  gen_cmd->add_option("--m", gen.m, "Block size (k3minus)");
  gen_cmd->add_option("--p", gen.p, "Arc probability (random)");
  gen_cmd->add_option("--min", gen.min, "Degree threshold (semidegree, disjunctive, total)");
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--out", gen.out, "Output file (stdout if omitted)");
  gen_cmd->callback([&] { exit_code = run_gen(gen); });

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Exact perfect (or maximum) packing");
  solve_cmd->add_option("--graph", solve.graph)->required();
  solve_cmd->add_option("--tournament", solve.tournament, "t<r>|c3|k<r>|k<r>m|tour:<file>");
  solve_cmd->add_option("--family", solve.family, "Comma-separated patterns of one order");
  solve_cmd->add_flag("--almost", solve.almost, "Maximum packing instead of perfect");
  solve_cmd->add_option("--budget", solve.budget, "Search node budget");
  solve_cmd->add_flag("--time", solve.time, "Include wall time");
  solve_cmd->add_option("--out", solve.out);
  solve_cmd->callback([&] { exit_code = run_solve(solve); });

  T3Args t3;
  auto* t3_cmd = app.add_subcommand("t3pack", "T3-packing by triangle packing and swaps");
  t3_cmd->add_option("--graph", t3.graph)->required();
  t3_cmd->add_option("--trace", t3.trace, "Write the swap trace to this file");
  t3_cmd->add_option("--budget", t3.budget);
  t3_cmd->add_option("--out", t3.out);
  t3_cmd->callback([&] { exit_code = run_t3pack(t3); });

  TuranArgs turan;
  auto* turan_cmd = app.add_subcommand("turan", "Turan-type certificates");
  turan_cmd->add_option("--graph", turan.graph)->required();
  turan_cmd->add_option("--op", turan.op, "density|independent|consistent");
  turan_cmd->add_option("--r", turan.r);
  turan_cmd->add_option("--tournament", turan.tournament);
  turan_cmd->add_option("--alpha", turan.alpha);
  turan_cmd->add_option("--out", turan.out);
  turan_cmd->callback([&] { exit_code = run_turan(turan); });

  ComplexArgs cx;
  auto* cx_cmd = app.add_subcommand("complex", "Layered complex of a host and tournament");
  cx_cmd->add_option("--graph", cx.graph)->required();
  cx_cmd->add_option("--tournament", cx.tournament);
  cx_cmd->add_option("--eps", cx.eps);
  cx_cmd->add_option("--matching", cx.matching, "greedy|exact");
  cx_cmd->add_flag("--report", cx.report, "Add closure and degree-hypothesis checks");
  cx_cmd->add_option("--out", cx.out);
  cx_cmd->callback([&] { exit_code = run_complex(cx); });

  AbsorbArgs ab;
  std::string ab_action;
  auto* ab_cmd = app.add_subcommand("absorb", "Absorbing families");
  ab_cmd->add_option("action", ab_action, "build|check|apply")
      ->required()
      ->check(CLI::IsMember({"build", "check", "apply"}));
  ab_cmd->add_option("--graph", ab.graph)->required();
  ab_cmd->add_option("--tournament", ab.tournament);
  ab_cmd->add_option("--xi", ab.xi);
  ab_cmd->add_option("--seed", ab.seed);
  ab_cmd->add_option("--absorber-size", ab.absorber_size, "0 selects 2r^2");
  ab_cmd->add_option("--candidates", ab.candidates);
  ab_cmd->add_option("--probes", ab.probes);
  ab_cmd->add_option("--family", ab.family_file, "Family JSON from 'absorb build'");
  ab_cmd->add_option("--w", ab.w, "Comma-separated W (apply)");
  ab_cmd->add_option("--w-size", ab.w_size, "Random W of this size outside the family (apply)");
  ab_cmd->add_option("--out", ab.out);
  ab_cmd->callback([&] { exit_code = run_absorb(ab_action, ab); });

  LemmaArgs lm;
  std::string lm_action;
  auto* lm_cmd = app.add_subcommand("lemma", "Structural lemmas");
  lm_cmd->add_option("action", lm_action, "match|matchcert|classify|expack")
      ->required()
      ->check(CLI::IsMember({"match", "matchcert", "classify", "expack"}));
  lm_cmd->add_option("--graph", lm.graph)->required();
  lm_cmd->add_option("--d", lm.d);
  lm_cmd->add_option("--x", lm.x, "Comma-separated X (match)");
  lm_cmd->add_flag("--directed", lm.directed);
  lm_cmd->add_option("--gamma", lm.gamma);
  lm_cmd->add_option("--delta", lm.delta);
  lm_cmd->add_option("--alpha", lm.alpha);
  lm_cmd->add_option("--classes", lm.classes, "Classes as '0,1,2;3,4,5;...' (classify)");
  lm_cmd->add_option("--out", lm.out);
  lm_cmd->callback([&] { exit_code = run_lemma(lm_action, lm); });

  VerifyArgs vf;
  std::string vf_kind;
  auto* vf_cmd = app.add_subcommand("verify", "Threshold sweeps and tightness checks");
  vf_cmd->add_option("kind", vf_kind, "threshold|conj14|tightness|krtotal|wang")
      ->required()
      ->check(CLI::IsMember({"threshold", "conj14", "tightness", "krtotal", "wang"}));
  vf_cmd->add_option("--r", vf.r);
  vf_cmd->add_option("--n", vf.n);
  vf_cmd->add_option("--tournament", vf.tournament, "Pattern of order r (threshold)");
  vf_cmd->add_option("--mode", vf.mode, "random|exhaustive");
  vf_cmd->add_option("--samples", vf.samples);
  vf_cmd->add_option("--seed", vf.seed);
  vf_cmd->add_option("--budget", vf.budget);
  vf_cmd->add_option("--workers", vf.workers, "Solver threads");
  vf_cmd->add_flag("--time", vf.time, "Record wall time in the report");
  vf_cmd->add_option("--out", vf.out, "Report path; counterexamples go alongside");
  vf_cmd->callback([&] { exit_code = run_verify(vf_kind, vf); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; malformed command lines are errors.
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "tpack: " << e.what() << '\n';
    return kExitError;
  }
  return exit_code;
}
