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

// Edge-list files, tournaments by name, and JSON views of results.
//
// Edge-list format: the first line holds n, every further non-empty line a
// directed pair "u v" with 0 <= u, v < n. Text after '#' is ignored.

#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tpack/digraph.hpp"
#include "tpack/packing.hpp"

namespace tpack {

inline Digraph parse_edge_list(std::istream& in, const std::string& source = "<input>") {
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& why) {
    throw LoadError(source + ":" + std::to_string(line_no) + ": " + why);
  };
  auto strip = [](std::string& s) {
    if (auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
  };
  int n = -1;
  while (n < 0 && std::getline(in, line)) {
    ++line_no;
    strip(line);
    std::istringstream ls(line);
    std::string extra;
    if (!(ls >> n)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      fail("expected the vertex count");
    }
    if (n < 0 || n > VertexSet::kCapacity) fail("vertex count out of range");
    if (ls >> extra) fail("unexpected text after the vertex count");
  }
  if (n < 0) fail("missing vertex count");
  Digraph g(n);
  while (std::getline(in, line)) {
    ++line_no;
    strip(line);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    long u = 0, v = 0;
    std::string extra;
    if (!(ls >> u >> v) || (ls >> extra)) fail("expected \"u v\"");
    if (u < 0 || v < 0 || u >= n || v >= n) fail("vertex out of range");
    if (u == v) fail("loop " + std::to_string(u));
    if (!g.add_arc(static_cast<Vertex>(u), static_cast<Vertex>(v)))
      fail("duplicate arc " + std::to_string(u) + " " + std::to_string(v));
  }
  return g;
}

inline Digraph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path);
  return parse_edge_list(in, path);
}

inline void write_edge_list(std::ostream& out, const Digraph& g) {
  out << g.order() << '\n';
  for (auto [u, v] : g.arcs()) out << u << ' ' << v << '\n';
}

inline std::string edge_list_string(const Digraph& g) {
  std::ostringstream s;
  write_edge_list(s, g);
  return s.str();
}

inline void save_edge_list(const std::string& path, const Digraph& g) {
  std::ofstream out(path);
  if (!out) throw LoadError("cannot write " + path);
  write_edge_list(out, g);
}

/// t<r> (transitive), c3, k<r> (complete), k<r>m (complete minus an arc), or
/// tour:<file> holding an edge list that must be a tournament.
inline Pattern pattern_by_name(const std::string& name) {
  if (name.rfind("tour:", 0) == 0) {
    const Digraph g = load_edge_list(name.substr(5));
    if (g.order() > Pattern::kMaxOrder) throw LoadError("tournament files hold at most 8 vertices");
    Pattern p = Pattern::from_digraph(g, name.substr(5));
    if (!p.is_tournament()) throw LoadError(name.substr(5) + " is not a tournament");
    return p;
  }
  if (name == "c3") return Pattern::cyclic_triangle();
  auto order_after = [&](std::size_t pos, std::size_t len) {
    const std::string digits = name.substr(pos, len);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw DomainError("unknown pattern " + name);
    const int r = std::stoi(digits);
    detail::require(r >= 1 && r <= Pattern::kMaxOrder, "pattern order must lie in [1, 8]");
    return r;
  };
  if (name.size() >= 2 && name[0] == 't') return Pattern::transitive(order_after(1, std::string::npos));
  if (name.size() >= 3 && name[0] == 'k' && name.back() == 'm')
    return Pattern::complete_minus_arc(order_after(1, name.size() - 2));
  if (name.size() >= 2 && name[0] == 'k') return Pattern::complete(order_after(1, std::string::npos));
  throw DomainError("unknown pattern " + name + " (expected t<r>, c3, k<r>, k<r>m or tour:<file>)");
}

// ---------------------------------------------------------------------------
// JSON.

using Json = nlohmann::ordered_json;

inline Json to_json(const VertexSet& s) { return Json(s.to_vector()); }

inline Json to_json(const Pattern& p) {
  Json arcs = Json::array();
  for (auto [a, b] : p.arcs()) arcs.push_back({a, b});
  return {{"name", p.name()}, {"order", p.order()}, {"arcs", arcs}};
}

inline Json to_json(const Embedding& e) {
  return {{"pattern", e.pattern.name()}, {"image", e.image}};
}

inline Json to_json(const Packing& p) {
  Json elements = Json::array();
  for (const auto& e : p.elements) elements.push_back(to_json(e));
  return {{"host_order", p.host_order}, {"size", p.size()}, {"elements", elements}};
}

/// `include_time` adds the wall time, which makes output non-reproducible.
inline Json to_json(const PackingCertificate& c, bool include_time = false) {
  Json j{{"verdict", to_string(c.verdict)}, {"nodes", c.nodes}};
  j["packing"] = c.packing ? to_json(*c.packing) : Json(nullptr);
  if (include_time) j["seconds"] = c.seconds;
  return j;
}

inline Json to_json(const Digraph& g) {
  Json arcs = Json::array();
  for (auto [u, v] : g.arcs()) arcs.push_back({u, v});
  return {{"n", g.order()}, {"arcs", arcs}};
}

}  // namespace tpack
