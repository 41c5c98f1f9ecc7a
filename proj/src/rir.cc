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

#include "rela/rir.h"

#include <tuple>
#include <utility>

#include "absl/hash/hash.h"

namespace rela::rir {

namespace {

std::size_t HashOf(const PathSetPtr& p) { return p ? p->hash : 0; }
std::size_t HashOf(const RelPtr& r) { return r ? r->hash : 0; }
std::size_t HashOf(const SpecPtr& s) { return s ? s->hash : 0; }

template <typename... T>
std::size_t Mix(const T&... values) {
  return absl::Hash<std::tuple<T...>>{}(std::make_tuple(values...));
}

bool DependsOnEnv(const PathSetPtr& p) { return p && p->env_dependent; }
bool DependsOnEnv(const RelPtr& r) { return r && r->env_dependent; }

PathSetPtr MakePathSet(PathSet::Kind kind, PathSetPtr a = nullptr,
                       PathSetPtr b = nullptr, RelPtr rel = nullptr,
                       Label symbol = kEpsilon) {
  auto n = std::make_shared<PathSet>();
  n->kind = kind;
  n->symbol = symbol;
  n->hash = Mix(1, static_cast<int>(kind), symbol, HashOf(a),
                         HashOf(b), HashOf(rel));
  n->env_dependent = kind == PathSet::Kind::kPreState ||
                     kind == PathSet::Kind::kPostState || DependsOnEnv(a) ||
                     DependsOnEnv(b) || DependsOnEnv(rel);
  n->a = std::move(a);
  n->b = std::move(b);
  n->rel = std::move(rel);
  return n;
}

RelPtr MakeRel(Rel::Kind kind, PathSetPtr a, PathSetPtr b, RelPtr x,
               RelPtr y) {
  auto n = std::make_shared<Rel>();
  n->kind = kind;
  n->hash = Mix(2, static_cast<int>(kind), HashOf(a), HashOf(b),
                         HashOf(x), HashOf(y));
  n->env_dependent =
      DependsOnEnv(a) || DependsOnEnv(b) || DependsOnEnv(x) || DependsOnEnv(y);
  n->a = std::move(a);
  n->b = std::move(b);
  n->x = std::move(x);
  n->y = std::move(y);
  return n;
}

SpecPtr MakeSpec(Spec::Kind kind, PathSetPtr a, PathSetPtr b, SpecPtr x,
                 SpecPtr y) {
  auto n = std::make_shared<Spec>();
  n->kind = kind;
  n->hash = Mix(3, static_cast<int>(kind), HashOf(a), HashOf(b),
                         HashOf(x), HashOf(y));
  n->a = std::move(a);
  n->b = std::move(b);
  n->x = std::move(x);
  n->y = std::move(y);
  return n;
}

template <typename T>
bool SamePtr(const std::shared_ptr<const T>& l,
             const std::shared_ptr<const T>& r) {
  if (l == r) return true;
  if (!l || !r) return false;
  return Same(*l, *r);
}

}  // namespace

PathSetPtr Sym(Label a) {
  return MakePathSet(PathSet::Kind::kSym, nullptr, nullptr, nullptr, a);
}
PathSetPtr Zero() { return MakePathSet(PathSet::Kind::kZero); }
PathSetPtr One() { return MakePathSet(PathSet::Kind::kOne); }
PathSetPtr PreState() { return MakePathSet(PathSet::Kind::kPreState); }
PathSetPtr PostState() { return MakePathSet(PathSet::Kind::kPostState); }
PathSetPtr Union(PathSetPtr a, PathSetPtr b) {
  return MakePathSet(PathSet::Kind::kUnion, std::move(a), std::move(b));
}
PathSetPtr Concat(PathSetPtr a, PathSetPtr b) {
  return MakePathSet(PathSet::Kind::kConcat, std::move(a), std::move(b));
}
PathSetPtr Star(PathSetPtr a) {
  return MakePathSet(PathSet::Kind::kStar, std::move(a));
}
PathSetPtr Intersect(PathSetPtr a, PathSetPtr b) {
  return MakePathSet(PathSet::Kind::kIntersect, std::move(a), std::move(b));
}
PathSetPtr Complement(PathSetPtr a) {
  return MakePathSet(PathSet::Kind::kComplement, std::move(a));
}
PathSetPtr Image(PathSetPtr a, RelPtr rel) {
  return MakePathSet(PathSet::Kind::kImage, std::move(a), nullptr,
                     std::move(rel));
}
PathSetPtr Minus(PathSetPtr a, PathSetPtr b) {
  return Intersect(std::move(a), Complement(std::move(b)));
}

RelPtr Cross(PathSetPtr a, PathSetPtr b) {
  return MakeRel(Rel::Kind::kCross, std::move(a), std::move(b), nullptr,
                 nullptr);
}
RelPtr Identity(PathSetPtr a) {
  return MakeRel(Rel::Kind::kIdentity, std::move(a), nullptr, nullptr,
                 nullptr);
}
RelPtr ZeroRel() {
  return MakeRel(Rel::Kind::kZero, nullptr, nullptr, nullptr, nullptr);
}
RelPtr OneRel() {
  return MakeRel(Rel::Kind::kOne, nullptr, nullptr, nullptr, nullptr);
}
RelPtr Union(RelPtr x, RelPtr y) {
  return MakeRel(Rel::Kind::kUnion, nullptr, nullptr, std::move(x),
                 std::move(y));
}
RelPtr Concat(RelPtr x, RelPtr y) {
  return MakeRel(Rel::Kind::kConcat, nullptr, nullptr, std::move(x),
                 std::move(y));
}
RelPtr Star(RelPtr x) {
  return MakeRel(Rel::Kind::kStar, nullptr, nullptr, std::move(x), nullptr);
}
RelPtr Compose(RelPtr x, RelPtr y) {
  return MakeRel(Rel::Kind::kCompose, nullptr, nullptr, std::move(x),
                 std::move(y));
}

SpecPtr Equal(PathSetPtr a, PathSetPtr b) {
  return MakeSpec(Spec::Kind::kEqual, std::move(a), std::move(b), nullptr,
                  nullptr);
}
SpecPtr Subset(PathSetPtr a, PathSetPtr b) {
  return MakeSpec(Spec::Kind::kSubset, std::move(a), std::move(b), nullptr,
                  nullptr);
}
SpecPtr And(SpecPtr x, SpecPtr y) {
  return MakeSpec(Spec::Kind::kAnd, nullptr, nullptr, std::move(x),
                  std::move(y));
}
SpecPtr Or(SpecPtr x, SpecPtr y) {
  return MakeSpec(Spec::Kind::kOr, nullptr, nullptr, std::move(x),
                  std::move(y));
}
SpecPtr Not(SpecPtr x) {
  return MakeSpec(Spec::Kind::kNot, nullptr, nullptr, std::move(x), nullptr);
}

bool Same(const PathSet& l, const PathSet& r) {
  if (&l == &r) return true;
  return l.hash == r.hash && l.kind == r.kind && l.symbol == r.symbol &&
         SamePtr(l.a, r.a) && SamePtr(l.b, r.b) && SamePtr(l.rel, r.rel);
}

bool Same(const Rel& l, const Rel& r) {
  if (&l == &r) return true;
  return l.hash == r.hash && l.kind == r.kind && SamePtr(l.a, r.a) &&
         SamePtr(l.b, r.b) && SamePtr(l.x, r.x) && SamePtr(l.y, r.y);
}

bool Same(const Spec& l, const Spec& r) {
  if (&l == &r) return true;
  return l.hash == r.hash && l.kind == r.kind && SamePtr(l.a, r.a) &&
         SamePtr(l.b, r.b) && SamePtr(l.x, r.x) && SamePtr(l.y, r.y);
}

}  // namespace rela::rir
