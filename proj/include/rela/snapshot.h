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

// Forwarding-equivalence classes: per traffic class, the DAG of forwarding
// paths before and after a change.

#ifndef RELA_SNAPSHOT_H_
#define RELA_SNAPSHOT_H_

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/container/flat_hash_set.h"
#include "absl/status/statusor.h"
#include "rela/fsa.h"
#include "rela/location_db.h"
#include "rela/prefix.h"
#include "rela/symbol_table.h"

namespace rela {

inline constexpr char kDropName[] = "drop";

struct GraphNode {
  std::string id;
  std::string loc;
};

struct ForwardingGraph {
  std::vector<GraphNode> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::string> sources;
  std::vector<std::string> sinks;
};

struct Fec {
  std::string id;
  // Prefix texts as written; `traffic` holds the parsed form.
  std::string dst_text;
  std::optional<std::string> src_text;
  std::string ingress;
  Traffic traffic;
  ForwardingGraph pre;
  ForwardingGraph post;
};

// Checks node ids, edge endpoints, source and sink sets, acyclicity, that
// every node lies on some source-to-sink path and that drop nodes are sinks.
// Locations must be names at `g` in `db` or "drop". Messages start with
// `where` (for example "pre").
absl::Status ValidateGraph(const ForwardingGraph& graph, const LocationDb& db,
                           Granularity g, std::string_view where);

// One FEC record. Graph locations are interface names.
absl::StatusOr<Fec> ParseFec(std::string_view json, const LocationDb& db);

// Compact JSON with keys in canonical order; parsing and re-serializing a
// record written this way reproduces it byte for byte.
std::string SerializeFec(const Fec& fec);

// Newline-delimited FEC records; blank lines are skipped. Errors name the
// line and, when known, the FEC id. Ids must be unique.
class FecReader {
 public:
  FecReader(std::istream& in, const LocationDb& db) : in_(in), db_(db) {}

  // nullopt at end of input.
  absl::StatusOr<std::optional<Fec>> Next();

 private:
  std::istream& in_;
  const LocationDb& db_;
  int line_ = 0;
  absl::flat_hash_set<std::string> seen_;
};

// Merges vertices that map to the same entity at `to`, dropping self-edges
// and duplicate edges. Fails if the merged graph has a cycle.
absl::StatusOr<ForwardingGraph> Coarsen(const ForwardingGraph& graph,
                                        Granularity to, const LocationDb& db);

// Accepts exactly the location sequences of source-to-sink paths, endpoints
// included. Locations must be symbols of `symbols`.
Fsa GraphToFsa(const ForwardingGraph& graph, const SymbolTable& symbols);

}  // namespace rela

#endif  // RELA_SNAPSHOT_H_
