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

// The location database: one record per interface, each naming its device
// and group plus any number of free-form text attributes.

#ifndef RELA_LOCATION_DB_H_
#define RELA_LOCATION_DB_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "rela/symbol_table.h"

namespace rela {

enum class Granularity { kInterface, kDevice, kGroup };

absl::StatusOr<Granularity> ParseGranularity(std::string_view name);
const char* GranularityName(Granularity g);

struct LocationRecord {
  std::string name;
  std::string device;
  std::string group;
  // Every attribute, including name, device and group.
  std::map<std::string, std::string> attributes;

  const std::string& At(Granularity g) const;
};

class LocationDb {
 public:
  // `text` is a JSON array of flat objects with string values for at least
  // "name", "device" and "group". Numbers and booleans are kept as their
  // JSON text.
  static absl::StatusOr<LocationDb> FromJson(std::string_view text);
  static absl::StatusOr<LocationDb> Load(const std::string& path);

  const std::vector<LocationRecord>& records() const { return records_; }
  const LocationRecord* Find(std::string_view name) const;
  bool HasAttribute(std::string_view key) const;

  // Distinct location names at `g`, sorted.
  std::vector<std::string> Names(Granularity g) const;

  // The name at `g` of interface `name`, if `name` is in the database.
  std::optional<std::string> Project(std::string_view name,
                                     Granularity g) const;

 private:
  std::vector<LocationRecord> records_;
  absl::flat_hash_map<std::string, size_t> by_name_;
  std::vector<std::string> attribute_keys_;
};

// A symbol table holding every location of `db` at `g`, interned in sorted
// name order so ids are stable across runs.
SymbolTable MakeSymbolTable(const LocationDb& db, Granularity g);

// Reads a whole file. NotFound names the path.
absl::StatusOr<std::string> ReadFile(const std::string& path);

}  // namespace rela

#endif  // RELA_LOCATION_DB_H_
