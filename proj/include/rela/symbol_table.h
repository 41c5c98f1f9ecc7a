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

#ifndef RELA_SYMBOL_TABLE_H_
#define RELA_SYMBOL_TABLE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/container/flat_hash_map.h"

namespace rela {

// Interned symbol id. Automata label their transitions with these.
using Label = std::int32_t;

// Label 0 is reserved for the empty string on every tape.
inline constexpr Label kEpsilon = 0;
// The reserved "drop" location. Distinct from every real location.
inline constexpr Label kDrop = 1;

enum class SymbolKind { kEpsilon, kDrop, kLocation, kMarker };

// Interns location names and allocates marker symbols. Ids are dense and
// assigned in insertion order, so a table built from the same sorted inputs
// always yields the same ids.
//
// Not thread-safe for mutation. Concurrent readers are fine once all symbols
// (including markers) have been allocated.
class SymbolTable {
 public:
  SymbolTable();

  // Returns the id for `name`, interning it as a location if it is new.
  // "drop" always maps to kDrop.
  Label InternLocation(std::string_view name);

  // Allocates a fresh output-only marker, named "#1", "#2", ...
  Label NewMarker();

  std::optional<Label> Find(std::string_view name) const;
  const std::string& Name(Label label) const { return names_[label]; }
  SymbolKind Kind(Label label) const { return kinds_[label]; }
  bool IsMarker(Label label) const { return Kind(label) == SymbolKind::kMarker; }
  int size() const { return static_cast<int>(names_.size()); }

  // All location symbols, in id order. Excludes drop and markers.
  std::vector<Label> Locations() const;

  // The complement universe: every location plus drop, in id order.
  std::vector<Label> Universe() const;

 private:
  std::vector<std::string> names_;
  std::vector<SymbolKind> kinds_;
  absl::flat_hash_map<std::string, Label> ids_;
  int marker_count_ = 0;
};

}  // namespace rela

#endif  // RELA_SYMBOL_TABLE_H_
