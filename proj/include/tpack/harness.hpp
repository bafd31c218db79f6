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

// Degree-threshold sweeps: enumerate or sample hosts above a threshold,
// solve each, and collect re-verified counterexamples into a report.

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "tpack/constructions.hpp"
#include "tpack/digraph.hpp"
#include "tpack/io.hpp"
#include "tpack/packing.hpp"
#include "tpack/t3_local_search.hpp"

namespace tpack {

inline constexpr int kReportSchemaVersion = 1;

enum class SweepMode { kExhaustive, kRandom };

inline const char* to_string(SweepMode m) {
  return m == SweepMode::kExhaustive ? "exhaustive" : "random";
}

struct Counterexample {
  std::string edge_list;
  PackingCertificate certificate;
  /// Verdict of the second solver run on a relabelled copy.
  bool reverified = false;
};

struct SweepReport {
  std::string kind;
  int r = 0;
  std::string pattern;
  int n = 0;
  int threshold = 0;
  SweepMode mode = SweepMode::kRandom;
  int samples = 0;
  std::uint64_t seed = 0;
  /// The statement is proved for every n (no n0 caveat).
  bool all_n = false;

  std::int64_t instances = 0;
  std::int64_t packed = 0;
  std::int64_t budget_exceeded = 0;
  /// Instances packed by the fast path rather than the exact solver.
  std::int64_t fast_path = 0;
  std::vector<Counterexample> counterexamples;
  std::optional<double> seconds;

  std::string verdict() const {
    if (counterexamples.empty()) return all_n ? "consistent with theorem" : "below theorem's range";
    return all_n ? "counterexample" : "counterexample (below n0)";
  }
};

inline Json to_json(const SweepReport& r) {
  Json ces = Json::array();
  for (const auto& c : r.counterexamples)
    ces.push_back({{"edge_list", c.edge_list},
                   {"certificate", to_json(c.certificate)},
                   {"reverified", c.reverified}});
  Json j{{"schema_version", kReportSchemaVersion},
         {"kind", r.kind},
         {"parameters",
          {{"r", r.r},
           {"pattern", r.pattern},
           {"n", r.n},
           {"threshold", r.threshold},
           {"mode", to_string(r.mode)},
           {"samples", r.samples},
           {"seed", r.seed}}},
         {"instances", r.instances},
         {"packed", r.packed},
         {"budget_exceeded", r.budget_exceeded},
         {"fast_path", r.fast_path},
         {"verdict", r.verdict()},
         {"counterexamples", ces}};
  if (r.seconds) j["seconds"] = *r.seconds;
  return j;
}

/// Writes the report as JSON and every counterexample as
/// <stem>.ce<k>.txt next to it.
inline void write_report(const SweepReport& r, const std::string& path) {
  const std::filesystem::path p(path);
  std::ofstream out(p);
  if (!out) throw LoadError("cannot write " + path);
  out << to_json(r).dump(2) << '\n';
  for (std::size_t k = 0; k < r.counterexamples.size(); ++k) {
    std::filesystem::path ce = p;
    ce.replace_extension(".ce" + std::to_string(k) + ".txt");
    std::ofstream f(ce);
    if (!f) throw LoadError("cannot write " + ce.string());
    f << r.counterexamples[k].edge_list;
  }
}

struct SweepOptions {
  std::uint64_t budget = kDefaultNodeBudget;
  bool record_time = false;
  /// Solver threads; reports do not depend on this.
  int workers = 1;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of the i-th sampled instance.
inline std::uint64_t instance_seed(std::uint64_t seed, std::int64_t i) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(i)));
}

/// Complete digraph minus `missing`.
inline Digraph complement_of(const Digraph& missing) {
  Digraph g = Digraph::complete(missing.order());
  for (auto [u, v] : missing.arcs()) g.remove_arc(u, v);
  return g;
}

/// Visits every loopless digraph M on n vertices in which each vertex v has
/// allowed(out_M(v), in_M(v)) true, where `allowed` must be monotone (if it
/// holds for (a, b) it holds for smaller values). Out-sets are chosen vertex
/// by vertex; a vertex whose in-degree can no longer be admitted is pruned.
inline void for_each_missing_digraph(int n, const std::function<bool(int, int)>& allowed,
                                     const std::function<void(const Digraph&)>& visit) {
  Digraph m(n);
  std::vector<int> out(static_cast<std::size_t>(n), 0), in(static_cast<std::size_t>(n), 0);
  // A processed vertex's out-degree is final; its in-degree may still grow.
  auto ok_vertex = [&](Vertex v, bool processed) {
    const int o = processed ? out[static_cast<std::size_t>(v)] : 0;
    return allowed(o, in[static_cast<std::size_t>(v)]);
  };
  std::function<void(Vertex)> rec;
  std::function<void(Vertex, Vertex)> choose;
  choose = [&](Vertex u, Vertex target) {
    if (target == n) {
      if (allowed(out[static_cast<std::size_t>(u)], in[static_cast<std::size_t>(u)])) rec(u + 1);
      return;
    }
    choose(u, target + 1);
    if (target == u) return;
    m.add_arc(u, target);
    ++out[static_cast<std::size_t>(u)];
    ++in[static_cast<std::size_t>(target)];
    if (allowed(out[static_cast<std::size_t>(u)], 0) && ok_vertex(target, target < u))
      choose(u, target + 1);
    --in[static_cast<std::size_t>(target)];
    --out[static_cast<std::size_t>(u)];
    m.remove_arc(u, target);
  };
  rec = [&](Vertex u) {
    if (u == n) {
      visit(m);
      return;
    }
    choose(u, 0);
  };
  rec(0);
}

/// Relabels by reversing vertex ids, re-solves, and maps the verdict back.
inline bool reverify_unpackable(const Digraph& g, const std::vector<Pattern>& family,
                                std::uint64_t budget) {
  std::vector<Vertex> perm(static_cast<std::size_t>(g.order()));
  std::iota(perm.rbegin(), perm.rend(), 0);
  const auto again = find_perfect_family_packing(g.relabeled(perm), family, budget);
  return again.verdict == Verdict::kExhaustedNone;
}

using FastPath = std::function<std::optional<Packing>(const Digraph&)>;

struct Outcome {
  enum class Kind { kPacked, kFastPacked, kBudget, kCounterexample } kind = Kind::kPacked;
  std::optional<Counterexample> counterexample;
};

/// Solves one instance. `fast` may pack it first; a null result defers to
/// the exact solver.
inline Outcome solve_instance(const Digraph& g, const std::vector<Pattern>& family,
                              std::uint64_t budget, const FastPath& fast) {
  if (fast) {
    if (auto p = fast(g)) {
      ensure(verify_packing(g, family, *p, true), "fast path produced an invalid packing");
      return {Outcome::Kind::kFastPacked, std::nullopt};
    }
  }
  auto cert = find_perfect_family_packing(g, family, budget);
  switch (cert.verdict) {
    case Verdict::kPacked:
      ensure(verify_packing(g, family, *cert.packing, true), "solver produced an invalid packing");
      return {Outcome::Kind::kPacked, std::nullopt};
    case Verdict::kBudgetExceeded:
      return {Outcome::Kind::kBudget, std::nullopt};
    case Verdict::kExhaustedNone:
      break;
  }
  Counterexample ce{edge_list_string(g), cert, reverify_unpackable(g, family, budget)};
  ensure(ce.reverified, "solver verdict changed under relabelling");
  return {Outcome::Kind::kCounterexample, std::move(ce)};
}

/// Buffers instances, solves each buffer on a worker pool, and folds the
/// outcomes into the report in submission order.
class Sweeper {
 public:
  Sweeper(SweepReport& report, std::vector<Pattern> family, const SweepOptions& options,
          FastPath fast = nullptr)
      : report_(report), family_(std::move(family)), options_(options), fast_(std::move(fast)),
        workers_(std::max(1, options.workers)) {}

  void add(Digraph g) {
    buffer_.push_back(std::move(g));
    if (buffer_.size() >= kBatchPerWorker * static_cast<std::size_t>(workers_)) flush();
  }

  void flush() {
    std::vector<Outcome> outcomes(buffer_.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < buffer_.size();) {
        try {
          outcomes[i] = solve_instance(buffer_[i], family_, options_.budget, fast_);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    };
    if (workers_ == 1 || buffer_.size() < 2) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (int w = 0; w < workers_; ++w) pool.emplace_back(work);
    }
    if (error) std::rethrow_exception(error);
    for (auto& o : outcomes) {
      ++report_.instances;
      switch (o.kind) {
        case Outcome::Kind::kFastPacked:
          ++report_.fast_path;
          [[fallthrough]];
        case Outcome::Kind::kPacked:
          ++report_.packed;
          break;
        case Outcome::Kind::kBudget:
          ++report_.budget_exceeded;
          break;
        case Outcome::Kind::kCounterexample:
          report_.counterexamples.push_back(std::move(*o.counterexample));
          break;
      }
    }
    buffer_.clear();
  }

 private:
  static constexpr std::size_t kBatchPerWorker = 256;
  SweepReport& report_;
  std::vector<Pattern> family_;
  const SweepOptions& options_;
  FastPath fast_;
  int workers_;
  std::vector<Digraph> buffer_;
};

template <typename Body>
void timed(SweepReport& report, const SweepOptions& options, Body&& body) {
  const auto start = std::chrono::steady_clock::now();
  body();
  if (options.record_time)
    report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

/// ceil((1 - 1/r) n).
inline int semidegree_threshold(int r, int n) { return ((r - 1) * n + r - 1) / r; }

}  // namespace detail

/// Hosts with delta0 >= ceil((1 - 1/r) n), each solved for a perfect
/// T-packing. Exhaustive mode enumerates the missing arcs, which form a
/// digraph of maximum out- and in-degree D = n - 1 - threshold; only D <= 1
/// is supported.
inline SweepReport sweep_semidegree(const Pattern& t, int n, SweepMode mode, int samples,
                                    std::uint64_t seed, SweepOptions options = {}) {
  const int r = t.order();
  detail::require(n >= r && n % r == 0, "r must divide n");
  SweepReport report;
  report.kind = "threshold";
  report.r = r;
  report.pattern = t.name();
  report.n = n;
  report.threshold = detail::semidegree_threshold(r, n);
  report.mode = mode;
  report.samples = samples;
  report.seed = seed;
  report.all_n = (r == 3 && t == Pattern::transitive(3));
  const std::vector<Pattern> family{t};
  const int deficiency = n - 1 - report.threshold;
  if (mode == SweepMode::kExhaustive)
    detail::require(deficiency <= 1,
                    "exhaustive mode needs n - 1 - ceil((1 - 1/r) n) <= 1 (missing arcs form a "
                    "partial injection); got " + std::to_string(deficiency) + ", use random mode");
  detail::Sweeper sweeper(report, family, options);
  detail::timed(report, options, [&] {
    if (mode == SweepMode::kExhaustive) {
      detail::for_each_missing_digraph(
          n, [&](int o, int i) { return o <= deficiency && i <= deficiency; },
          [&](const Digraph& m) { sweeper.add(detail::complement_of(m)); });
    } else {
      for (int i = 0; i < samples; ++i)
        sweeper.add(
            random_digraph_min_semidegree(n, report.threshold, detail::instance_seed(seed, i)));
    }
    sweeper.flush();
  });
  return report;
}

/// Hosts where every vertex has d+ or d- at least ceil((1 - 1/r) n), solved
/// for T_r; r = 3 tries t3_pack first.
inline SweepReport sweep_conjecture_1_4(int r, int n, SweepMode mode, int samples,
                                        std::uint64_t seed, SweepOptions options = {}) {
  detail::require(r >= 2 && r <= Pattern::kMaxOrder && n >= r && n % r == 0, "r must divide n");
  SweepReport report;
  report.kind = "conj14";
  report.r = r;
  const Pattern t = Pattern::transitive(r);
  report.pattern = t.name();
  report.n = n;
  report.threshold = detail::semidegree_threshold(r, n);
  report.mode = mode;
  report.samples = samples;
  report.seed = seed;
  report.all_n = r == 3;
  const std::vector<Pattern> family{t};
  std::function<std::optional<Packing>(const Digraph&)> fast;
  if (r == 3 && report.threshold == two_thirds_threshold(n))
    fast = [&](const Digraph& g) -> std::optional<Packing> {
      try {
        return t3_pack(g, options.budget).packing;
      } catch (const SwapNotFound&) {
        return std::nullopt;
      } catch (const StageFailed&) {
        return std::nullopt;
      }
    };
  const int deficiency = n - 1 - report.threshold;
  if (mode == SweepMode::kExhaustive)
    detail::require(deficiency <= 1, "exhaustive mode needs n - 1 - ceil((1 - 1/r) n) <= 1");
  detail::Sweeper sweeper(report, family, options, fast);
  detail::timed(report, options, [&] {
    if (mode == SweepMode::kExhaustive) {
      detail::for_each_missing_digraph(
          n, [&](int o, int i) { return o <= deficiency || i <= deficiency; },
          [&](const Digraph& m) { sweeper.add(detail::complement_of(m)); });
    } else {
      for (int i = 0; i < samples; ++i)
        sweeper.add(random_digraph_disjunctive(n, report.threshold, detail::instance_seed(seed, i)));
    }
    sweeper.flush();
  });
  return report;
}

/// Hosts with total minimum degree >= (2 - 1/r) n - 1, solved for a perfect
/// K_r-packing as an exact cover of the double-edge graph by r-cliques.
inline SweepReport sweep_total_degree_kr(int r, int n, int samples, std::uint64_t seed,
                                         SweepOptions options = {}) {
  detail::require(r >= 2 && r <= Pattern::kMaxOrder && n >= r && n % r == 0, "r must divide n");
  SweepReport report;
  report.kind = "krtotal";
  report.r = r;
  const Pattern kr = Pattern::complete(r);
  report.pattern = kr.name();
  report.n = n;
  report.threshold = 2 * n - n / r - 1;
  report.mode = SweepMode::kRandom;
  report.samples = samples;
  report.seed = seed;
  report.all_n = true;
  const std::vector<Pattern> family{kr};
  detail::Sweeper sweeper(report, family, options, [&](const Digraph& g) -> std::optional<Packing> {
    auto cert = find_perfect_packing(double_edge_graph(g), kr, options.budget);
    if (cert.verdict != Verdict::kPacked) return std::nullopt;
    return cert.packing;
  });
  detail::timed(report, options, [&] {
    for (int i = 0; i < samples; ++i)
      sweeper.add(
          random_digraph_min_total_degree(n, report.threshold, detail::instance_seed(seed, i)));
    sweeper.flush();
  });
  return report;
}

/// Hosts with total minimum degree >= ceil((3n - 3)/2), solved for C3.
inline SweepReport sweep_wang(int n, int samples, std::uint64_t seed, SweepOptions options = {}) {
  detail::require(n >= 3 && n % 3 == 0, "3 must divide n");
  SweepReport report;
  report.kind = "wang";
  report.r = 3;
  const Pattern c3 = Pattern::cyclic_triangle();
  report.pattern = c3.name();
  report.n = n;
  report.threshold = (3 * n - 3 + 1) / 2;
  report.mode = SweepMode::kRandom;
  report.samples = samples;
  report.seed = seed;
  report.all_n = true;
  const std::vector<Pattern> family{c3};
  detail::Sweeper sweeper(report, family, options);
  detail::timed(report, options, [&] {
    for (int i = 0; i < samples; ++i)
      sweeper.add(
          random_digraph_min_total_degree(n, report.threshold, detail::instance_seed(seed, i)));
    sweeper.flush();
  });
  return report;
}

// ---------------------------------------------------------------------------
// Tightness checks on the explicit extremal families.

struct TightnessCheck {
  std::string name;
  std::string expected;
  std::string observed;
  bool pass = false;
};

struct TightnessReport {
  int r = 0;
  int n = 0;
  std::vector<TightnessCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

inline Json to_json(const TightnessReport& t) {
  Json checks = Json::array();
  for (const auto& c : t.checks)
    checks.push_back(
        {{"name", c.name}, {"expected", c.expected}, {"observed", c.observed}, {"pass", c.pass}});
  return {{"schema_version", kReportSchemaVersion},
          {"kind", "tightness"},
          {"parameters", {{"r", t.r}, {"n", t.n}}},
          {"all_pass", t.all_pass()},
          {"checks", checks}};
}

namespace detail {

inline void check_value(TightnessReport& rep, std::string name, long expected, long observed) {
  rep.checks.push_back({std::move(name), std::to_string(expected), std::to_string(observed),
                        expected == observed});
}

inline void check_verdict(TightnessReport& rep, std::string name, Verdict expected,
                          const PackingCertificate& c) {
  rep.checks.push_back(
      {std::move(name), to_string(expected), to_string(c.verdict), c.verdict == expected});
}

}  // namespace detail

/// Degree values and packing (non-)existence of every extremal family that
/// is defined at (r, n).
inline TightnessReport tightness_suite(int r, int n, std::uint64_t budget = kDefaultNodeBudget) {
  detail::require(r >= 2 && n > r && n % r == 0, "r must divide n, n > r");
  TightnessReport rep;
  rep.r = r;
  rep.n = n;

  const Digraph near = make_near_independent_extremal(n, r);
  detail::check_value(rep, "near_independent.min_semidegree", (r - 1) * n / r - 1,
                      min_semidegree(near));
  if (r <= 5)
    for (const auto& t : all_tournaments(r))
      detail::check_verdict(rep, "near_independent.no_packing." + t.name(), Verdict::kExhaustedNone,
                            find_perfect_packing(near, t, budget));

  if (r == 3) {
    const auto ex1 = make_ex(n, 1);
    detail::check_value(rep, "ex1.min_semidegree", 2 * n / 3 - 2, min_semidegree(ex1.graph));
    detail::check_verdict(rep, "ex1.no_packing.C3", Verdict::kExhaustedNone,
                          find_perfect_packing(ex1.graph, Pattern::cyclic_triangle(), budget));
    const std::vector<Pattern> family{Pattern::transitive(3), Pattern::cyclic_triangle()};
    detail::check_verdict(rep, "ex1.family_packing.T3_C3", Verdict::kPacked,
                          find_perfect_family_packing(ex1.graph, family, budget));

    const Digraph source = make_source_counterexample(n);
    detail::check_value(rep, "source.min_out_degree", n - 2, min_out_degree(source));
    detail::check_value(rep, "source.in_degree_of_source", 0, source.in_degree(n - 1));
    detail::check_verdict(rep, "source.no_packing.C3", Verdict::kExhaustedNone,
                          find_perfect_packing(source, Pattern::cyclic_triangle(), budget));

    const int m = (n - 3) / 2;
    if (n % 2 == 1 && m > 0 && m % 6 == 0) {
      const Digraph k3m = make_k3minus_example(m);
      detail::check_value(rep, "k3minus.min_semidegree", (3 * n - 5) / 4, min_semidegree(k3m));
      detail::check_verdict(rep, "k3minus.no_packing.K3-", Verdict::kExhaustedNone,
                            find_perfect_packing(k3m, Pattern::complete_minus_arc(3), budget));
    }
  }

  if (n / r + 1 < n) {
    const Digraph g1 = make_kr_total_degree_tightness(n, r);
    detail::check_value(rep, "kr_total.total_min_degree", 2 * n - n / r - 2, total_min_degree(g1));
    detail::check_verdict(rep, "kr_total.no_packing.K" + std::to_string(r), Verdict::kExhaustedNone,
                          find_perfect_packing(g1, Pattern::complete(r), budget));
  }
  return rep;
}

}  // namespace tpack
