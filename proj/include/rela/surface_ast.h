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

// Resolved surface-language trees. Location tokens are already symbols of the
// active granularity and named definitions are inlined; a spec node that came
// from a named definition keeps the name in `name`.

#ifndef RELA_SURFACE_AST_H_
#define RELA_SURFACE_AST_H_

#include <memory>
#include <string>
#include <vector>

#include "rela/prefix.h"
#include "rela/symbol_table.h"

namespace rela::surface {

struct Regex;
using RegexPtr = std::shared_ptr<const Regex>;

struct Regex {
  enum class Kind { kLoc, kDot, kUnion, kConcat, kStar };
  Kind kind = Kind::kLoc;
  std::vector<Label> locs;  // sorted, unique, nonempty for kLoc
  RegexPtr a, b;
};

RegexPtr Loc(std::vector<Label> locs);
RegexPtr Dot();
// A union of two Loc nodes folds into one Loc.
RegexPtr Union(RegexPtr a, RegexPtr b);
RegexPtr Concat(RegexPtr a, RegexPtr b);
RegexPtr Star(RegexPtr a);

struct Modifier {
  enum class Kind { kPreserve, kAdd, kRemove, kReplace, kDrop, kAny };
  Kind kind = Kind::kPreserve;
  RegexPtr r1, r2;
  // Source text of the argument of any(), for reports. Not compared.
  std::string raw;
};

struct Spec;
using SpecPtr = std::shared_ptr<const Spec>;

struct Spec {
  enum class Kind { kAtomic, kConcat, kElse };
  Kind kind = Kind::kAtomic;
  RegexPtr zone;
  Modifier mod;
  SpecPtr a, b;
  std::string name;
};

SpecPtr Atomic(RegexPtr zone, Modifier mod);
SpecPtr ConcatSpec(SpecPtr a, SpecPtr b);
SpecPtr Else(SpecPtr a, SpecPtr b);
SpecPtr Named(SpecPtr s, std::string name);

struct GuardedSpec {
  std::string name;
  PredicatePtr pred;
  SpecPtr spec;
};

struct Program {
  std::vector<GuardedSpec> guarded;  // file order; first match wins
  SpecPtr fallback;                  // may be null
};

bool Same(const Regex& a, const Regex& b);
bool Same(const Modifier& a, const Modifier& b);
bool Same(const Spec& a, const Spec& b);
bool Same(const Program& a, const Program& b);

// Source text that parses back to an equal tree at the same granularity.
std::string Print(const Regex& r, const SymbolTable& symbols);
std::string Print(const Modifier& m, const SymbolTable& symbols);
std::string Print(const Spec& s, const SymbolTable& symbols);
std::string Print(const Program& p, const SymbolTable& symbols);

}  // namespace rela::surface

#endif  // RELA_SURFACE_AST_H_
