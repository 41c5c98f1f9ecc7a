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

#include "rela/rir_eval.h"

#include <utility>

namespace rela::rir {

const Fsa* SharedCache::Find(const PathSetPtr& p) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = path_sets_.find(p);
  return it == path_sets_.end() ? nullptr : it->second.get();
}

const Fst* SharedCache::Find(const RelPtr& r) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = relations_.find(r);
  return it == relations_.end() ? nullptr : it->second.get();
}

const Fsa& SharedCache::Insert(const PathSetPtr& p, Fsa value) {
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = path_sets_.try_emplace(p, nullptr);
  if (inserted) it->second = std::make_unique<Fsa>(std::move(value));
  return *it->second;
}

const Fst& SharedCache::Insert(const RelPtr& r, Fst value) {
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = relations_.try_emplace(r, nullptr);
  if (inserted) it->second = std::make_unique<Fst>(std::move(value));
  return *it->second;
}

Evaluator::Evaluator(const SnapshotPair& env, std::span<const Label> universe,
                     SharedCache* shared)
    : env_(env), universe_(universe.begin(), universe.end()), shared_(shared) {}

const Fsa& Evaluator::Eval(const PathSetPtr& p) {
  auto it = path_sets_.find(p);
  if (it != path_sets_.end()) return *it->second;
  if (shared_ != nullptr && !p->env_dependent) {
    if (const Fsa* hit = shared_->Find(p)) return *hit;
    return shared_->Insert(p, Compute(*p));
  }
  Fsa value = Compute(*p);
  auto& slot = path_sets_[p];
  slot = std::make_unique<Fsa>(std::move(value));
  return *slot;
}

const Fst& Evaluator::Eval(const RelPtr& r) {
  auto it = relations_.find(r);
  if (it != relations_.end()) return *it->second;
  if (shared_ != nullptr && !r->env_dependent) {
    if (const Fst* hit = shared_->Find(r)) return *hit;
    return shared_->Insert(r, Compute(*r));
  }
  Fst value = Compute(*r);
  auto& slot = relations_[r];
  slot = std::make_unique<Fst>(std::move(value));
  return *slot;
}

Fsa Evaluator::Compute(const PathSet& p) {
  using Kind = PathSet::Kind;
  switch (p.kind) {
    case Kind::kSym:
      return Minimize(SymbolFsa(p.symbol));
    case Kind::kZero:
      return EmptyFsa();
    case Kind::kOne:
      return Minimize(EpsilonFsa());
    case Kind::kPreState:
      return Minimize(env_.pre);
    case Kind::kPostState:
      return Minimize(env_.post);
    case Kind::kUnion:
      return Minimize(Union(Eval(p.a), Eval(p.b)));
    case Kind::kConcat:
      return Minimize(Concat(Eval(p.a), Eval(p.b)));
    case Kind::kStar:
      return Minimize(Star(Eval(p.a)));
    case Kind::kIntersect:
      return Minimize(Intersect(Eval(p.a), Eval(p.b)));
    case Kind::kComplement:
      return Complement(Eval(p.a), universe_);
    case Kind::kImage:
      return Minimize(Image(Eval(p.a), Eval(p.rel)));
  }
  return EmptyFsa();
}

Fst Evaluator::Compute(const Rel& r) {
  using Kind = Rel::Kind;
  switch (r.kind) {
    case Kind::kCross:
      return Optimize(Cross(Eval(r.a), Eval(r.b)));
    case Kind::kIdentity:
      return Identity(Eval(r.a));
    case Kind::kZero:
      return EmptyFst();
    case Kind::kOne:
      return UnitFst();
    case Kind::kUnion:
      return Optimize(Union(Eval(r.x), Eval(r.y)));
    case Kind::kConcat:
      return Optimize(Concat(Eval(r.x), Eval(r.y)));
    case Kind::kStar:
      return Optimize(Star(Eval(r.x)));
    case Kind::kCompose:
      return Optimize(Compose(Eval(r.x), Eval(r.y)));
  }
  return EmptyFst();
}

namespace {

bool Check(const SpecPtr& s, bool positive, Evaluator& eval, Verdict& out) {
  using Kind = Spec::Kind;
  switch (s->kind) {
    case Kind::kEqual:
    case Kind::kSubset: {
      const Fsa& a = eval.Eval(s->a);
      const Fsa& b = eval.Eval(s->b);
      Fsa lhs_only = Difference(a, b);
      Fsa rhs_only = s->kind == Kind::kEqual ? Difference(b, a) : EmptyFsa();
      bool holds = IsEmpty(lhs_only) && IsEmpty(rhs_only);
      if (!holds && positive) {
        out.witnesses.push_back({s, std::move(lhs_only), std::move(rhs_only)});
      }
      return holds;
    }
    case Kind::kAnd: {
      bool x = Check(s->x, positive, eval, out);
      bool y = Check(s->y, positive, eval, out);
      return x && y;
    }
    case Kind::kOr: {
      // Witnesses of a failed disjunct only matter if the whole Or fails.
      Verdict local;
      bool x = Check(s->x, positive, eval, local);
      bool y = Check(s->y, positive, eval, local);
      if (!(x || y)) {
        for (LeafWitness& w : local.witnesses) {
          out.witnesses.push_back(std::move(w));
        }
      }
      return x || y;
    }
    case Kind::kNot:
      return !Check(s->x, !positive, eval, out);
  }
  return false;
}

}  // namespace

Verdict CheckSpec(const SpecPtr& s, Evaluator& eval) {
  Verdict v;
  v.holds = Check(s, true, eval, v);
  if (v.holds) v.witnesses.clear();
  return v;
}

Verdict CheckSpec(const SpecPtr& s, const SnapshotPair& env,
                  std::span<const Label> universe) {
  Evaluator eval(env, universe);
  return CheckSpec(s, eval);
}

Fsa EvalPathSet(const PathSetPtr& p, const SnapshotPair& env,
                std::span<const Label> universe) {
  Evaluator eval(env, universe);
  return eval.Eval(p);
}

Fst EvalRel(const RelPtr& r, const SnapshotPair& env,
            std::span<const Label> universe) {
  Evaluator eval(env, universe);
  return eval.Eval(r);
}

}  // namespace rela::rir
