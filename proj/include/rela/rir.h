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

// The regular intermediate representation (RIR): path-set, relation and spec
// expressions. Nodes are immutable and shared; every node carries a
// structural hash so that equal subtrees can be evaluated once.

#ifndef RELA_RIR_H_
#define RELA_RIR_H_

#include <cstddef>
#include <memory>

#include "rela/symbol_table.h"

namespace rela::rir {

struct PathSet;
struct Rel;
struct Spec;
using PathSetPtr = std::shared_ptr<const PathSet>;
using RelPtr = std::shared_ptr<const Rel>;
using SpecPtr = std::shared_ptr<const Spec>;

struct PathSet {
  enum class Kind {
    kSym,
    kZero,
    kOne,
    kPreState,
    kPostState,
    kUnion,
    kConcat,
    kStar,
    kIntersect,
    kComplement,
    kImage,  // a ▷ rel
  };
  Kind kind;
  Label symbol = kEpsilon;
  PathSetPtr a, b;
  RelPtr rel;
  std::size_t hash = 0;
  // True when the denotation depends on PreState or PostState.
  bool env_dependent = false;
};

struct Rel {
  enum class Kind {
    kCross,     // a × b
    kIdentity,  // I(a)
    kZero,
    kOne,
    kUnion,
    kConcat,
    kStar,
    kCompose,  // x ∘ y, x applied first
  };
  Kind kind;
  PathSetPtr a, b;
  RelPtr x, y;
  std::size_t hash = 0;
  bool env_dependent = false;
};

struct Spec {
  enum class Kind { kEqual, kSubset, kAnd, kOr, kNot };
  Kind kind;
  PathSetPtr a, b;
  SpecPtr x, y;
  std::size_t hash = 0;
};

PathSetPtr Sym(Label a);
PathSetPtr Zero();
PathSetPtr One();
PathSetPtr PreState();
PathSetPtr PostState();
PathSetPtr Union(PathSetPtr a, PathSetPtr b);
PathSetPtr Concat(PathSetPtr a, PathSetPtr b);
PathSetPtr Star(PathSetPtr a);
PathSetPtr Intersect(PathSetPtr a, PathSetPtr b);
PathSetPtr Complement(PathSetPtr a);
PathSetPtr Image(PathSetPtr a, RelPtr rel);
// a \ b, lowered to a ∩ ¬b.
PathSetPtr Minus(PathSetPtr a, PathSetPtr b);

RelPtr Cross(PathSetPtr a, PathSetPtr b);
RelPtr Identity(PathSetPtr a);
RelPtr ZeroRel();
RelPtr OneRel();
RelPtr Union(RelPtr x, RelPtr y);
RelPtr Concat(RelPtr x, RelPtr y);
RelPtr Star(RelPtr x);
RelPtr Compose(RelPtr x, RelPtr y);

SpecPtr Equal(PathSetPtr a, PathSetPtr b);
SpecPtr Subset(PathSetPtr a, PathSetPtr b);
SpecPtr And(SpecPtr x, SpecPtr y);
SpecPtr Or(SpecPtr x, SpecPtr y);
SpecPtr Not(SpecPtr x);

// Deep structural equality. Pointer-equal nodes short-circuit.
bool Same(const PathSet& l, const PathSet& r);
bool Same(const Rel& l, const Rel& r);
bool Same(const Spec& l, const Spec& r);

}  // namespace rela::rir

#endif  // RELA_RIR_H_
