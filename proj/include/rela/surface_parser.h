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

#ifndef RELA_SURFACE_PARSER_H_
#define RELA_SURFACE_PARSER_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "rela/location_db.h"
#include "rela/surface_ast.h"
#include "rela/symbol_table.h"

namespace rela {

// Parses and resolves a spec file. `symbols` must hold every location of
// `db` at `granularity` (see MakeSymbolTable). Errors carry "line:column: ".
//
// Identifiers in regexes resolve, in order, to a regex definition, to every
// location whose name, device or group equals the identifier, or to the
// unique split of the identifier into such names ("a1a2d1"). A quoted string
// names exactly one location at the active granularity. `-` may separate
// concatenated regex terms.
//
// The fallback spec is the last `spec` definition, provided no later
// statement references it.
absl::StatusOr<surface::Program> ParseProgram(std::string_view source,
                                              const LocationDb& db,
                                              Granularity granularity,
                                              const SymbolTable& symbols);

// Evaluates a where() filter such as `group=="A1" and role!="spine"` and
// returns the sorted location names at `granularity` of matching records.
absl::StatusOr<std::vector<std::string>> ResolveWhere(std::string_view filter,
                                                      const LocationDb& db,
                                                      Granularity granularity);

}  // namespace rela

#endif  // RELA_SURFACE_PARSER_H_
