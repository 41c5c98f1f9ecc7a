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

#include "rela/location_db.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"

namespace rela {

absl::StatusOr<Granularity> ParseGranularity(std::string_view name) {
  if (name == "interface") return Granularity::kInterface;
  if (name == "device") return Granularity::kDevice;
  if (name == "group") return Granularity::kGroup;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown granularity '", std::string(name),
                   "' (expected interface, device or group)"));
}

const char* GranularityName(Granularity g) {
  switch (g) {
    case Granularity::kInterface:
      return "interface";
    case Granularity::kDevice:
      return "device";
    case Granularity::kGroup:
      return "group";
  }
  return "";
}

const std::string& LocationRecord::At(Granularity g) const {
  switch (g) {
    case Granularity::kInterface:
      return name;
    case Granularity::kDevice:
      return device;
    case Granularity::kGroup:
      return group;
  }
  return name;
}

absl::StatusOr<LocationDb> LocationDb::FromJson(std::string_view text) {
  nlohmann::json doc =
      nlohmann::json::parse(text.begin(), text.end(), nullptr, false);
  if (doc.is_discarded()) {
    return absl::InvalidArgumentError("locations: not valid JSON");
  }
  if (!doc.is_array()) {
    return absl::InvalidArgumentError(
        "locations: expected a JSON array of records");
  }
  LocationDb db;
  std::set<std::string> keys;
  for (size_t i = 0; i < doc.size(); ++i) {
    const nlohmann::json& item = doc[i];
    std::string where = absl::StrCat("locations[", i, "]");
    if (!item.is_object()) {
      return absl::InvalidArgumentError(
          absl::StrCat(where, ": expected an object"));
    }
    LocationRecord record;
    for (auto it = item.begin(); it != item.end(); ++it) {
      const nlohmann::json& v = it.value();
      std::string value;
      if (v.is_string()) {
        value = v.get<std::string>();
      } else if (v.is_number() || v.is_boolean()) {
        value = v.dump();
      } else {
        return absl::InvalidArgumentError(absl::StrCat(
            where, ".", it.key(), ": attribute values must be scalars"));
      }
      record.attributes[it.key()] = value;
      keys.insert(it.key());
    }
    for (const char* required : {"name", "device", "group"}) {
      auto found = record.attributes.find(required);
      if (found == record.attributes.end() || found->second.empty()) {
        return absl::InvalidArgumentError(absl::StrCat(
            where, ": missing required attribute \"", required, "\""));
      }
    }
    record.name = record.attributes["name"];
    record.device = record.attributes["device"];
    record.group = record.attributes["group"];
    for (const std::string* n : {&record.name, &record.device, &record.group}) {
      if (*n == "drop") {
        return absl::InvalidArgumentError(
            absl::StrCat(where, ": \"drop\" is a reserved location name"));
      }
    }
    if (db.by_name_.contains(record.name)) {
      return absl::InvalidArgumentError(absl::StrCat(
          where, ": duplicate location name \"", record.name, "\""));
    }
    db.by_name_[record.name] = db.records_.size();
    db.records_.push_back(std::move(record));
  }
  db.attribute_keys_.assign(keys.begin(), keys.end());
  return db;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

absl::StatusOr<LocationDb> LocationDb::Load(const std::string& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<LocationDb> db = FromJson(*text);
  if (!db.ok()) {
    return absl::Status(db.status().code(),
                        absl::StrCat(path, ": ", db.status().message()));
  }
  return db;
}

const LocationRecord* LocationDb::Find(std::string_view name) const {
  auto it = by_name_.find(absl::string_view(name.data(), name.size()));
  return it == by_name_.end() ? nullptr : &records_[it->second];
}

bool LocationDb::HasAttribute(std::string_view key) const {
  return std::binary_search(attribute_keys_.begin(), attribute_keys_.end(),
                            key);
}

std::vector<std::string> LocationDb::Names(Granularity g) const {
  std::set<std::string> names;
  for (const LocationRecord& r : records_) names.insert(r.At(g));
  return {names.begin(), names.end()};
}

std::optional<std::string> LocationDb::Project(std::string_view name,
                                               Granularity g) const {
  const LocationRecord* r = Find(name);
  if (r == nullptr) return std::nullopt;
  return r->At(g);
}

SymbolTable MakeSymbolTable(const LocationDb& db, Granularity g) {
  SymbolTable symbols;
  for (const std::string& name : db.Names(g)) symbols.InternLocation(name);
  return symbols;
}

}  // namespace rela
