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

// Translation of surface specs into RIR equations
//   PreState ▷ R_pre = PostState ▷ R_post.

#ifndef RELA_COMPILER_H_
#define RELA_COMPILER_H_

#include <optional>
#include <string>
#include <vector>

#include "rela/prefix.h"
#include "rela/rir.h"
#include "rela/surface_ast.h"
#include "rela/symbol_table.h"

namespace rela {

// One `else` arm, with the relations it actually enforces: those of the arm
// restricted to paths outside the zones of higher-priority arms.
struct SubspecEntry {
  std::string label;
  rir::PathSetPtr zone;
  rir::RelPtr rpre;
  rir::RelPtr rpost;
};

// The marker standing for one any() argument, and that argument's text.
struct AnyMarker {
  Label marker;
  std::string text;
  rir::PathSetPtr target;
};

struct CompiledSpec {
  std::string name;
  rir::SpecPtr top;
  rir::RelPtr rpre;
  rir::RelPtr rpost;
  rir::PathSetPtr zone;
  // The arms of the top-level else chain in priority order (or the whole
  // spec when it is not an else), then arms of else chains nested in
  // concatenations.
  std::vector<SubspecEntry> subspecs;
  std::vector<AnyMarker> markers;
};

struct CompiledGuard {
  std::string name;
  PredicatePtr pred;
  CompiledSpec spec;
};

struct CompiledProgram {
  std::vector<CompiledGuard> guarded;
  std::optional<CompiledSpec> fallback;
};

class Compiler {
 public:
  // New markers are interned into `symbols`.
  explicit Compiler(SymbolTable& symbols);

  CompiledSpec Compile(const surface::Spec& spec);
  CompiledProgram Compile(const surface::Program& program);

  rir::PathSetPtr Lower(const surface::Regex& r);

 private:
  struct Parts;

  Parts Visit(const surface::Spec& s, CompiledSpec& out);
  Parts Atomic(const surface::Spec& s, CompiledSpec& out);

  SymbolTable& symbols_;
  rir::PathSetPtr dot_;
};

// Audit listing: "R_pre := ...", "R_post := ...", "Z := ...", "S := ..."
// followed by one block per sub-spec. Every right-hand side parses back with
// the RIR notation parser.
std::string EmitRir(const CompiledSpec& spec, const SymbolTable& symbols);

}  // namespace rela

#endif  // RELA_COMPILER_H_
