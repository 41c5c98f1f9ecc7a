// Copyright 2026 The Rela authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Random forwarding graphs and FECs for checker tests.

#ifndef RELA_TESTS_FEC_GEN_H_
#define RELA_TESTS_FEC_GEN_H_

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "rela/location_db.h"
#include "rela/snapshot.h"
#include "rela/symbol_table.h"

namespace rela::testing {

// Interface names grouped by their location at `g`.
inline std::vector<std::vector<std::string>> InterfacePools(
    const LocationDb& db, Granularity g) {
  std::map<std::string, std::vector<std::string>> by_loc;
  for (const LocationRecord& r : db.records()) by_loc[r.At(g)].push_back(r.name);
  std::vector<std::vector<std::string>> out;
  for (auto& [loc, names] : by_loc) out.push_back(std::move(names));
  return out;
}

inline void RecomputeEnds(ForwardingGraph& graph) {
  std::set<std::string> has_in, has_out;
  for (const auto& [u, v] : graph.edges) {
    has_out.insert(u);
    has_in.insert(v);
  }
  graph.sources.clear();
  graph.sinks.clear();
  for (const GraphNode& n : graph.nodes) {
    if (!has_in.contains(n.id)) graph.sources.push_back(n.id);
    if (!has_out.contains(n.id)) graph.sinks.push_back(n.id);
  }
}

// A DAG over `nodes` nodes, each at a distinct location, so coarsening to the
// pools' granularity merges nothing. Every node after the first has an edge
// from an earlier node; up to `extra_edges` more forward edges are added.
// Sinks become drop nodes with probability `drop_prob`.
inline ForwardingGraph RandomGraph(
    std::mt19937& rng, const std::vector<std::vector<std::string>>& pools,
    int nodes, int extra_edges, double drop_prob) {
  nodes = std::min<int>(nodes, pools.size());
  std::vector<int> pick(pools.size());
  for (size_t i = 0; i < pick.size(); ++i) pick[i] = i;
  std::shuffle(pick.begin(), pick.end(), rng);
  ForwardingGraph g;
  for (int i = 0; i < nodes; ++i) {
    const std::vector<std::string>& pool = pools[pick[i]];
    g.nodes.push_back({absl::StrCat("n", i), pool[rng() % pool.size()]});
  }
  std::set<std::pair<int, int>> edges;
  for (int j = 1; j < nodes; ++j) edges.insert({static_cast<int>(rng() % j), j});
  for (int k = 0; k < extra_edges && nodes > 1; ++k) {
    int a = rng() % nodes, b = rng() % nodes;
    if (a != b) edges.insert({std::min(a, b), std::max(a, b)});
  }
  for (auto [a, b] : edges) g.edges.push_back({g.nodes[a].id, g.nodes[b].id});
  RecomputeEnds(g);
  std::bernoulli_distribution drop(drop_prob);
  for (GraphNode& n : g.nodes) {
    bool sink = std::find(g.sinks.begin(), g.sinks.end(), n.id) != g.sinks.end();
    bool source =
        std::find(g.sources.begin(), g.sources.end(), n.id) != g.sources.end();
    if (sink && !source && drop(rng)) n.loc = kDropName;
  }
  return g;
}

// Moves the head of one edge to another later node. Node locations are
// distinct, so the path language always changes.
inline bool MutateOneEdge(std::mt19937& rng, ForwardingGraph& g) {
  std::map<std::string, int> index;
  for (size_t i = 0; i < g.nodes.size(); ++i) index[g.nodes[i].id] = i;
  std::set<std::pair<std::string, std::string>> present(g.edges.begin(),
                                                        g.edges.end());
  std::vector<std::pair<size_t, std::string>> moves;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    const auto& [u, v] = g.edges[e];
    for (size_t w = index[u] + 1; w < g.nodes.size(); ++w) {
      const std::string& id = g.nodes[w].id;
      if (id != v && !present.contains({u, id})) moves.push_back({e, id});
    }
  }
  if (moves.empty()) return false;
  const auto& [e, w] = moves[rng() % moves.size()];
  g.edges[e].second = w;
  RecomputeEnds(g);
  return true;
}

inline Fec MakeFec(const std::string& id, const std::string& dst,
                   ForwardingGraph pre, ForwardingGraph post) {
  Fec f;
  f.id = id;
  f.dst_text = dst;
  f.traffic.dst = *IpPrefix::Parse(dst);
  for (const GraphNode& n : pre.nodes) {
    if (n.id == pre.sources.front()) f.ingress = n.loc;
  }
  f.traffic.ingress = f.ingress;
  f.pre = std::move(pre);
  f.post = std::move(post);
  return f;
}

// Source-to-sink paths of `graph` as location labels at `g`, by direct
// enumeration. Assumes no two adjacent nodes share a location at `g`.
inline std::set<Path> GraphPaths(const ForwardingGraph& graph,
                                 const LocationDb& db, Granularity g,
                                 const SymbolTable& symbols) {
  std::map<std::string, std::vector<std::string>> succ;
  std::map<std::string, Label> label;
  for (const GraphNode& n : graph.nodes) {
    label[n.id] = n.loc == kDropName ? kDrop : *symbols.Find(*db.Project(n.loc, g));
  }
  for (const auto& [u, v] : graph.edges) succ[u].push_back(v);
  std::set<std::string> sinks(graph.sinks.begin(), graph.sinks.end());
  std::set<Path> out;
  Path path;
  std::function<void(const std::string&)> walk = [&](const std::string& u) {
    path.push_back(label[u]);
    if (sinks.contains(u)) out.insert(path);
    for (const std::string& v : succ[u]) walk(v);
    path.pop_back();
  };
  for (const std::string& s : graph.sources) walk(s);
  return out;
}

}  // namespace rela::testing

#endif  // RELA_TESTS_FEC_GEN_H_
