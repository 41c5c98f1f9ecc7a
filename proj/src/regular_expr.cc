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

#include "rela/regular_expr.h"

#include <algorithm>
#include <memory>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace rela {

namespace {

RegularExprPtr MakeRegular(RegularExpr::Kind kind, RegularExprPtr lhs = nullptr,
                           RegularExprPtr rhs = nullptr, Label symbol = kEpsilon) {
  auto e = std::make_shared<RegularExpr>();
  e->kind = kind;
  e->symbol = symbol;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  return e;
}

std::shared_ptr<RelationExpr> MakeRelation(RelationExpr::Kind kind,
                                           RelationExprPtr lhs = nullptr,
                                           RelationExprPtr rhs = nullptr) {
  auto e = std::make_shared<RelationExpr>();
  e->kind = kind;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  return e;
}

}  // namespace

RegularExprPtr RegularExpr::Sym(Label a) {
  return MakeRegular(Kind::kSymbol, nullptr, nullptr, a);
}
RegularExprPtr RegularExpr::Empty() { return MakeRegular(Kind::kEmpty); }
RegularExprPtr RegularExpr::Unit() { return MakeRegular(Kind::kUnit); }
RegularExprPtr RegularExpr::Union(RegularExprPtr x, RegularExprPtr y) {
  return MakeRegular(Kind::kUnion, std::move(x), std::move(y));
}
RegularExprPtr RegularExpr::Concat(RegularExprPtr x, RegularExprPtr y) {
  return MakeRegular(Kind::kConcat, std::move(x), std::move(y));
}
RegularExprPtr RegularExpr::Star(RegularExprPtr x) {
  return MakeRegular(Kind::kStar, std::move(x));
}
RegularExprPtr RegularExpr::Intersect(RegularExprPtr x, RegularExprPtr y) {
  return MakeRegular(Kind::kIntersect, std::move(x), std::move(y));
}
RegularExprPtr RegularExpr::Complement(RegularExprPtr x) {
  return MakeRegular(Kind::kComplement, std::move(x));
}

absl::StatusOr<Fsa> BuildFsa(const RegularExpr& expr,
                             std::span<const Label> universe) {
  using Kind = RegularExpr::Kind;
  switch (expr.kind) {
    case Kind::kSymbol:
      if (std::find(universe.begin(), universe.end(), expr.symbol) ==
          universe.end()) {
        return absl::InvalidArgumentError(
            absl::StrCat("symbol ", expr.symbol, " is not in the alphabet"));
      }
      return SymbolFsa(expr.symbol);
    case Kind::kEmpty:
      return EmptyFsa();
    case Kind::kUnit:
      return EpsilonFsa();
    case Kind::kStar:
    case Kind::kComplement: {
      absl::StatusOr<Fsa> x = BuildFsa(*expr.lhs, universe);
      if (!x.ok()) return x.status();
      return expr.kind == Kind::kStar ? Star(*x) : Complement(*x, universe);
    }
    case Kind::kUnion:
    case Kind::kConcat:
    case Kind::kIntersect: {
      absl::StatusOr<Fsa> x = BuildFsa(*expr.lhs, universe);
      if (!x.ok()) return x.status();
      absl::StatusOr<Fsa> y = BuildFsa(*expr.rhs, universe);
      if (!y.ok()) return y.status();
      if (expr.kind == Kind::kUnion) return Union(*x, *y);
      if (expr.kind == Kind::kConcat) return Concat(*x, *y);
      return Intersect(*x, *y);
    }
  }
  return absl::InternalError("unhandled regular expression kind");
}

RelationExprPtr RelationExpr::Cross(Fsa p1, Fsa p2) {
  auto e = MakeRelation(Kind::kCross);
  e->first = std::move(p1);
  e->second = std::move(p2);
  return e;
}
RelationExprPtr RelationExpr::Identity(Fsa p) {
  auto e = MakeRelation(Kind::kIdentity);
  e->first = std::move(p);
  return e;
}
RelationExprPtr RelationExpr::Empty() { return MakeRelation(Kind::kEmpty); }
RelationExprPtr RelationExpr::Unit() { return MakeRelation(Kind::kUnit); }
RelationExprPtr RelationExpr::Union(RelationExprPtr x, RelationExprPtr y) {
  return MakeRelation(Kind::kUnion, std::move(x), std::move(y));
}
RelationExprPtr RelationExpr::Concat(RelationExprPtr x, RelationExprPtr y) {
  return MakeRelation(Kind::kConcat, std::move(x), std::move(y));
}
RelationExprPtr RelationExpr::Star(RelationExprPtr x) {
  return MakeRelation(Kind::kStar, std::move(x));
}
RelationExprPtr RelationExpr::Compose(RelationExprPtr x, RelationExprPtr y) {
  return MakeRelation(Kind::kCompose, std::move(x), std::move(y));
}

Fst BuildFst(const RelationExpr& expr) {
  using Kind = RelationExpr::Kind;
  switch (expr.kind) {
    case Kind::kCross:
      return Cross(expr.first, expr.second);
    case Kind::kIdentity:
      return Identity(expr.first);
    case Kind::kEmpty:
      return EmptyFst();
    case Kind::kUnit:
      return UnitFst();
    case Kind::kUnion:
      return Union(BuildFst(*expr.lhs), BuildFst(*expr.rhs));
    case Kind::kConcat:
      return Concat(BuildFst(*expr.lhs), BuildFst(*expr.rhs));
    case Kind::kStar:
      return Star(BuildFst(*expr.lhs));
    case Kind::kCompose:
      return Compose(BuildFst(*expr.lhs), BuildFst(*expr.rhs));
  }
  return EmptyFst();
}

}  // namespace rela
