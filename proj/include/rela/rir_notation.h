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

// Debug notation for RIR trees, e.g.
//
//   [(PreState ▷ I(x1 · A1*)) = (PostState ▷ I(x1 · A1*))]
//
// Binary operators are always parenthesized, so printing is unambiguous and
// Parse*(Print(t)) reproduces t exactly. Symbols print by name, quoted with
// single quotes when the name is not a plain word.

#ifndef RELA_RIR_NOTATION_H_
#define RELA_RIR_NOTATION_H_

#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "rela/rir.h"
#include "rela/symbol_table.h"

namespace rela::rir {

std::string Print(const PathSet& p, const SymbolTable& symbols);
std::string Print(const Rel& r, const SymbolTable& symbols);
std::string Print(const Spec& s, const SymbolTable& symbols);

// Symbols must already exist in `symbols`.
absl::StatusOr<PathSetPtr> ParsePathSet(std::string_view text,
                                        const SymbolTable& symbols);
absl::StatusOr<RelPtr> ParseRel(std::string_view text,
                                const SymbolTable& symbols);
absl::StatusOr<SpecPtr> ParseSpec(std::string_view text,
                                  const SymbolTable& symbols);

}  // namespace rela::rir

#endif  // RELA_RIR_NOTATION_H_
