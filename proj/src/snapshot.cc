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

#include "rela/snapshot.h"

#include <algorithm>
#include <map>
#include <set>

#include "absl/container/flat_hash_map.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"

namespace rela {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

absl::Status Invalid(std::string_view where, std::string_view what) {
  return absl::InvalidArgumentError(
      absl::StrCat(std::string(where), ": ", std::string(what)));
}

// Topological order of node indices, or nullopt on a cycle.
std::optional<std::vector<int>> TopoOrder(
    int n, const std::vector<std::vector<int>>& succ) {
  std::vector<int> indegree(n, 0);
  for (const auto& out : succ) {
    for (int v : out) ++indegree[v];
  }
  std::vector<int> order;
  for (int i = 0; i < n; ++i) {
    if (indegree[i] == 0) order.push_back(i);
  }
  for (size_t k = 0; k < order.size(); ++k) {
    for (int v : succ[order[k]]) {
      if (--indegree[v] == 0) order.push_back(v);
    }
  }
  if (static_cast<int>(order.size()) != n) return std::nullopt;
  return order;
}

absl::StatusOr<std::string> GetString(const Json& obj, const char* key,
                                      std::string_view where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    return Invalid(where, absl::StrCat("missing field \"", key, "\""));
  }
  if (!it->is_string()) {
    return Invalid(absl::StrCat(std::string(where), ".", key),
                   "expected a string");
  }
  return it->get<std::string>();
}

absl::StatusOr<std::vector<std::string>> GetStrings(const Json& obj,
                                                    const char* key,
                                                    std::string_view where) {
  std::string path = absl::StrCat(std::string(where), ".", key);
  auto it = obj.find(key);
  if (it == obj.end()) {
    return Invalid(where, absl::StrCat("missing field \"", key, "\""));
  }
  if (!it->is_array()) return Invalid(path, "expected an array");
  std::vector<std::string> out;
  for (size_t i = 0; i < it->size(); ++i) {
    if (!(*it)[i].is_string()) {
      return Invalid(absl::StrCat(path, "[", i, "]"), "expected a string");
    }
    out.push_back((*it)[i].get<std::string>());
  }
  return out;
}

absl::StatusOr<ForwardingGraph> ParseGraph(const Json& obj,
                                           std::string_view where) {
  if (!obj.is_object()) return Invalid(where, "expected an object");
  ForwardingGraph g;
  auto nodes = obj.find("nodes");
  if (nodes == obj.end() || !nodes->is_array()) {
    return Invalid(where, "missing array \"nodes\"");
  }
  for (size_t i = 0; i < nodes->size(); ++i) {
    std::string at = absl::StrCat(std::string(where), ".nodes[", i, "]");
    const Json& n = (*nodes)[i];
    if (!n.is_object()) return Invalid(at, "expected an object");
    absl::StatusOr<std::string> id = GetString(n, "id", at);
    if (!id.ok()) return id.status();
    absl::StatusOr<std::string> loc = GetString(n, "loc", at);
    if (!loc.ok()) return loc.status();
    g.nodes.push_back({*id, *loc});
  }
  auto edges = obj.find("edges");
  if (edges == obj.end() || !edges->is_array()) {
    return Invalid(where, "missing array \"edges\"");
  }
  for (size_t i = 0; i < edges->size(); ++i) {
    const Json& e = (*edges)[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() ||
        !e[1].is_string()) {
      return Invalid(absl::StrCat(std::string(where), ".edges[", i, "]"),
                     "expected [\"from\", \"to\"]");
    }
    g.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  absl::StatusOr<std::vector<std::string>> sources =
      GetStrings(obj, "sources", where);
  if (!sources.ok()) return sources.status();
  g.sources = *std::move(sources);
  absl::StatusOr<std::vector<std::string>> sinks =
      GetStrings(obj, "sinks", where);
  if (!sinks.ok()) return sinks.status();
  g.sinks = *std::move(sinks);
  return g;
}

OrderedJson GraphJson(const ForwardingGraph& g) {
  OrderedJson out;
  OrderedJson nodes = OrderedJson::array();
  for (const GraphNode& n : g.nodes) {
    OrderedJson node;
    node["id"] = n.id;
    node["loc"] = n.loc;
    nodes.push_back(std::move(node));
  }
  out["nodes"] = std::move(nodes);
  OrderedJson edges = OrderedJson::array();
  for (const auto& [u, v] : g.edges) edges.push_back({u, v});
  out["edges"] = std::move(edges);
  out["sources"] = g.sources;
  out["sinks"] = g.sinks;
  return out;
}

}  // namespace

absl::Status ValidateGraph(const ForwardingGraph& graph, const LocationDb& db,
                           Granularity g, std::string_view where) {
  std::set<std::string> known;
  if (g != Granularity::kInterface) {
    for (const std::string& name : db.Names(g)) known.insert(name);
  }
  absl::flat_hash_map<std::string, int> index;
  for (size_t i = 0; i < graph.nodes.size(); ++i) {
    const GraphNode& n = graph.nodes[i];
    std::string at = absl::StrCat(std::string(where), ".nodes[", i, "]");
    if (n.id.empty()) return Invalid(at, "empty node id");
    if (!index.emplace(n.id, i).second) {
      return Invalid(at, absl::StrCat("duplicate node id \"", n.id, "\""));
    }
    bool ok = n.loc == kDropName ||
              (g == Granularity::kInterface ? db.Find(n.loc) != nullptr
                                            : known.contains(n.loc));
    if (!ok) {
      return Invalid(at, absl::StrCat("unknown location \"", n.loc, "\""));
    }
  }
  int n = static_cast<int>(graph.nodes.size());
  std::vector<std::vector<int>> succ(n), pred(n);
  for (size_t i = 0; i < graph.edges.size(); ++i) {
    const auto& [u, v] = graph.edges[i];
    auto iu = index.find(u), iv = index.find(v);
    for (auto [it, name] : {std::pair(iu, &u), std::pair(iv, &v)}) {
      if (it == index.end()) {
        return Invalid(absl::StrCat(std::string(where), ".edges[", i, "]"),
                       absl::StrCat("undeclared node \"", *name, "\""));
      }
    }
    succ[iu->second].push_back(iv->second);
    pred[iv->second].push_back(iu->second);
  }
  std::vector<char> is_source(n, 0), is_sink(n, 0);
  for (auto [list, flags, key] :
       {std::tuple(&graph.sources, &is_source, "sources"),
        std::tuple(&graph.sinks, &is_sink, "sinks")}) {
    for (size_t i = 0; i < list->size(); ++i) {
      auto it = index.find((*list)[i]);
      if (it == index.end()) {
        return Invalid(absl::StrCat(std::string(where), ".", key, "[", i, "]"),
                       absl::StrCat("undeclared node \"", (*list)[i], "\""));
      }
      (*flags)[it->second] = 1;
    }
  }
  if (n > 0 && (graph.sources.empty() || graph.sinks.empty())) {
    return Invalid(where, "a nonempty graph needs sources and sinks");
  }
  if (!TopoOrder(n, succ).has_value()) {
    return Invalid(where, "graph has a cycle");
  }
  auto reach = [&](const std::vector<char>& start,
                   const std::vector<std::vector<int>>& adj) {
    std::vector<char> seen = start;
    std::vector<int> stack;
    for (int i = 0; i < n; ++i) {
      if (seen[i]) stack.push_back(i);
    }
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[u]) {
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    return seen;
  };
  std::vector<char> from_source = reach(is_source, succ);
  std::vector<char> to_sink = reach(is_sink, pred);
  for (int i = 0; i < n; ++i) {
    const GraphNode& node = graph.nodes[i];
    if (!from_source[i]) {
      return Invalid(where, absl::StrCat("node \"", node.id,
                                         "\" is unreachable from any source"));
    }
    if (!to_sink[i]) {
      return Invalid(where,
                     absl::StrCat("node \"", node.id, "\" reaches no sink"));
    }
    if (node.loc == kDropName && (!is_sink[i] || !succ[i].empty())) {
      return Invalid(where, absl::StrCat("drop node \"", node.id,
                                         "\" must be a sink with no successors"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<Fec> ParseFec(std::string_view text, const LocationDb& db) {
  Json doc = Json::parse(text.begin(), text.end(), nullptr, false);
  if (doc.is_discarded()) return absl::InvalidArgumentError("not valid JSON");
  if (!doc.is_object()) {
    return absl::InvalidArgumentError("expected a JSON object");
  }
  Fec fec;
  absl::StatusOr<std::string> id = GetString(doc, "id", "record");
  if (!id.ok()) return id.status();
  fec.id = *id;
  std::string prefix = absl::StrCat("fec \"", fec.id, "\": ");
  auto fail = [&](const absl::Status& s) {
    return absl::Status(s.code(), absl::StrCat(prefix, s.message()));
  };
  auto traffic = doc.find("traffic");
  if (traffic == doc.end() || !traffic->is_object()) {
    return fail(Invalid("record", "missing object \"traffic\""));
  }
  absl::StatusOr<std::string> dst = GetString(*traffic, "dstPrefix", "traffic");
  if (!dst.ok()) return fail(dst.status());
  fec.dst_text = *dst;
  absl::StatusOr<IpPrefix> dst_prefix = IpPrefix::Parse(*dst);
  if (!dst_prefix.ok()) {
    return fail(Invalid("traffic.dstPrefix",
                        std::string(dst_prefix.status().message())));
  }
  fec.traffic.dst = *dst_prefix;
  if (traffic->contains("srcPrefix")) {
    absl::StatusOr<std::string> src =
        GetString(*traffic, "srcPrefix", "traffic");
    if (!src.ok()) return fail(src.status());
    absl::StatusOr<IpPrefix> src_prefix = IpPrefix::Parse(*src);
    if (!src_prefix.ok()) {
      return fail(Invalid("traffic.srcPrefix",
                          std::string(src_prefix.status().message())));
    }
    fec.src_text = *src;
    fec.traffic.src = *src_prefix;
  }
  absl::StatusOr<std::string> ingress =
      GetString(*traffic, "ingress", "traffic");
  if (!ingress.ok()) return fail(ingress.status());
  if (db.Find(*ingress) == nullptr) {
    return fail(Invalid("traffic.ingress",
                        absl::StrCat("unknown location \"", *ingress, "\"")));
  }
  fec.ingress = fec.traffic.ingress = *ingress;
  for (auto [key, graph] : {std::pair("pre", &fec.pre),
                            std::pair("post", &fec.post)}) {
    auto it = doc.find(key);
    if (it == doc.end()) {
      return fail(Invalid("record", absl::StrCat("missing field \"", key, "\"")));
    }
    absl::StatusOr<ForwardingGraph> g = ParseGraph(*it, key);
    if (!g.ok()) return fail(g.status());
    absl::Status valid = ValidateGraph(*g, db, Granularity::kInterface, key);
    if (!valid.ok()) return fail(valid);
    *graph = *std::move(g);
  }
  return fec;
}

std::string SerializeFec(const Fec& fec) {
  OrderedJson out;
  out["id"] = fec.id;
  OrderedJson traffic;
  traffic["dstPrefix"] = fec.dst_text;
  if (fec.src_text.has_value()) traffic["srcPrefix"] = *fec.src_text;
  traffic["ingress"] = fec.ingress;
  out["traffic"] = std::move(traffic);
  out["pre"] = GraphJson(fec.pre);
  out["post"] = GraphJson(fec.post);
  return out.dump();
}

absl::StatusOr<std::optional<Fec>> FecReader::Next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    absl::StatusOr<Fec> fec = ParseFec(line, db_);
    if (!fec.ok()) {
      return absl::Status(fec.status().code(),
                          absl::StrCat("line ", line_, ": ",
                                       fec.status().message()));
    }
    if (!seen_.insert(fec->id).second) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_, ": fec \"", fec->id, "\": duplicate id"));
    }
    return std::optional<Fec>(*std::move(fec));
  }
  return std::optional<Fec>();
}

absl::StatusOr<ForwardingGraph> Coarsen(const ForwardingGraph& graph,
                                        Granularity to, const LocationDb& db) {
  if (to == Granularity::kInterface) return graph;
  absl::flat_hash_map<std::string, std::string> coarse_of;
  ForwardingGraph out;
  std::set<std::string> added;
  for (const GraphNode& n : graph.nodes) {
    std::string coarse =
        n.loc == kDropName ? std::string(kDropName) : *db.Project(n.loc, to);
    coarse_of[n.id] = coarse;
    if (added.insert(coarse).second) out.nodes.push_back({coarse, coarse});
  }
  std::set<std::pair<std::string, std::string>> edges;
  for (const auto& [u, v] : graph.edges) {
    const std::string& cu = coarse_of[u];
    const std::string& cv = coarse_of[v];
    if (cu != cv && edges.emplace(cu, cv).second) out.edges.emplace_back(cu, cv);
  }
  for (auto [from, into] : {std::pair(&graph.sources, &out.sources),
                            std::pair(&graph.sinks, &out.sinks)}) {
    std::set<std::string> seen;
    for (const std::string& id : *from) {
      if (seen.insert(coarse_of[id]).second) into->push_back(coarse_of[id]);
    }
  }
  absl::flat_hash_map<std::string, int> index;
  for (size_t i = 0; i < out.nodes.size(); ++i) index[out.nodes[i].id] = i;
  std::vector<std::vector<int>> succ(out.nodes.size());
  for (const auto& [u, v] : out.edges) succ[index[u]].push_back(index[v]);
  if (!TopoOrder(out.nodes.size(), succ).has_value()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "coarsening to ", GranularityName(to),
        " granularity creates a cycle; check the location database"));
  }
  return out;
}

Fsa GraphToFsa(const ForwardingGraph& graph, const SymbolTable& symbols) {
  Fsa fsa;
  StateId start = fsa.start();
  absl::flat_hash_map<std::string, StateId> state;
  std::vector<Label> label;
  for (const GraphNode& n : graph.nodes) {
    state[n.id] = fsa.AddState();
    label.push_back(n.loc == kDropName ? kDrop : *symbols.Find(n.loc));
  }
  absl::flat_hash_map<std::string, Label> label_of;
  for (size_t i = 0; i < graph.nodes.size(); ++i) {
    label_of[graph.nodes[i].id] = label[i];
  }
  for (const std::string& s : graph.sources) {
    fsa.AddArc(start, label_of[s], state[s]);
  }
  for (const auto& [u, v] : graph.edges) {
    fsa.AddArc(state[u], label_of[v], state[v]);
  }
  for (const std::string& s : graph.sinks) fsa.SetFinal(state[s]);
  return fsa;
}

}  // namespace rela
