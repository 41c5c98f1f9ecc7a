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

#include "rela/symbol_table.h"

#include <string>

#include "absl/strings/str_cat.h"

namespace rela {

SymbolTable::SymbolTable() {
  names_ = {"<eps>", "drop"};
  kinds_ = {SymbolKind::kEpsilon, SymbolKind::kDrop};
  ids_["drop"] = kDrop;
}

Label SymbolTable::InternLocation(std::string_view name) {
  auto [it, inserted] =
      ids_.try_emplace(std::string(name), static_cast<Label>(names_.size()));
  if (inserted) {
    names_.emplace_back(name);
    kinds_.push_back(SymbolKind::kLocation);
  }
  return it->second;
}

Label SymbolTable::NewMarker() {
  std::string name = absl::StrCat("#", ++marker_count_);
  Label id = static_cast<Label>(names_.size());
  names_.push_back(name);
  kinds_.push_back(SymbolKind::kMarker);
  ids_[name] = id;
  return id;
}

std::optional<Label> SymbolTable::Find(std::string_view name) const {
  auto it = ids_.find(absl::string_view(name.data(), name.size()));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::vector<Label> SymbolTable::Locations() const {
  std::vector<Label> out;
  for (Label i = 0; i < size(); ++i) {
    if (kinds_[i] == SymbolKind::kLocation) out.push_back(i);
  }
  return out;
}

std::vector<Label> SymbolTable::Universe() const {
  std::vector<Label> out = {kDrop};
  for (Label l : Locations()) out.push_back(l);
  return out;
}

}  // namespace rela
