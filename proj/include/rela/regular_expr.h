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

// Plain constructor trees for regular languages and relations, and their
// translation into automata. These are the kernel-level entry points; the
// verifier's own IR lives in rir.h.

#ifndef RELA_REGULAR_EXPR_H_
#define RELA_REGULAR_EXPR_H_

#include <memory>
#include <span>

#include "absl/status/statusor.h"
#include "rela/fsa.h"
#include "rela/fst.h"

namespace rela {

struct RegularExpr;
using RegularExprPtr = std::shared_ptr<const RegularExpr>;

struct RegularExpr {
  enum class Kind {
    kSymbol,
    kEmpty,  // 0
    kUnit,   // 1
    kUnion,
    kConcat,
    kStar,
    kIntersect,
    kComplement,
  };
  Kind kind;
  Label symbol = kEpsilon;
  RegularExprPtr lhs, rhs;

  static RegularExprPtr Sym(Label a);
  static RegularExprPtr Empty();
  static RegularExprPtr Unit();
  static RegularExprPtr Union(RegularExprPtr x, RegularExprPtr y);
  static RegularExprPtr Concat(RegularExprPtr x, RegularExprPtr y);
  static RegularExprPtr Star(RegularExprPtr x);
  static RegularExprPtr Intersect(RegularExprPtr x, RegularExprPtr y);
  static RegularExprPtr Complement(RegularExprPtr x);
};

// Builds an acceptor for `expr`. Complement is taken relative to
// `universe`*. Fails with InvalidArgument if a symbol is not in `universe`.
absl::StatusOr<Fsa> BuildFsa(const RegularExpr& expr,
                             std::span<const Label> universe);

struct RelationExpr;
using RelationExprPtr = std::shared_ptr<const RelationExpr>;

struct RelationExpr {
  enum class Kind {
    kCross,
    kIdentity,
    kEmpty,
    kUnit,
    kUnion,
    kConcat,
    kStar,
    kCompose,
  };
  Kind kind;
  // Path-set operands of kCross (both) and kIdentity (first only).
  Fsa first, second;
  RelationExprPtr lhs, rhs;

  static RelationExprPtr Cross(Fsa p1, Fsa p2);
  static RelationExprPtr Identity(Fsa p);
  static RelationExprPtr Empty();
  static RelationExprPtr Unit();
  static RelationExprPtr Union(RelationExprPtr x, RelationExprPtr y);
  static RelationExprPtr Concat(RelationExprPtr x, RelationExprPtr y);
  static RelationExprPtr Star(RelationExprPtr x);
  static RelationExprPtr Compose(RelationExprPtr x, RelationExprPtr y);
};

Fst BuildFst(const RelationExpr& expr);

}  // namespace rela

#endif  // RELA_REGULAR_EXPR_H_
