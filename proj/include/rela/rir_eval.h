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

// Evaluation of RIR expressions to automata against one snapshot pair, and
// spec satisfaction checking.

#ifndef RELA_RIR_EVAL_H_
#define RELA_RIR_EVAL_H_

#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "rela/fsa.h"
#include "rela/fst.h"
#include "rela/rir.h"

namespace rela::rir {

// The path sets M (pre) and N (post) that PreState and PostState denote.
struct SnapshotPair {
  Fsa pre;
  Fsa post;
};

namespace internal {

template <typename Node>
struct NodeHash {
  std::size_t operator()(const std::shared_ptr<const Node>& n) const {
    return n->hash;
  }
};

template <typename Node>
struct NodeEq {
  bool operator()(const std::shared_ptr<const Node>& l,
                  const std::shared_ptr<const Node>& r) const {
    return Same(*l, *r);
  }
};

template <typename Node, typename Value>
using NodeMap = absl::flat_hash_map<std::shared_ptr<const Node>, Value,
                                    NodeHash<Node>, NodeEq<Node>>;

}  // namespace internal

// Results for subexpressions that do not mention PreState or PostState.
// Shared by every evaluation of one compiled program, across threads.
class SharedCache {
 public:
  const Fsa* Find(const PathSetPtr& p) const;
  const Fst* Find(const RelPtr& r) const;
  const Fsa& Insert(const PathSetPtr& p, Fsa value);
  const Fst& Insert(const RelPtr& r, Fst value);

 private:
  mutable std::mutex mu_;
  // Values are boxed so references stay valid across rehashing.
  internal::NodeMap<PathSet, std::unique_ptr<Fsa>> path_sets_;
  internal::NodeMap<Rel, std::unique_ptr<Fst>> relations_;
};

// Evaluates expressions for one environment. Path sets come back minimized
// and relations optimized. Structurally equal subtrees are evaluated once.
class Evaluator {
 public:
  // `universe` is Σ, the alphabet complements are taken over. `shared` may
  // be null.
  Evaluator(const SnapshotPair& env, std::span<const Label> universe,
            SharedCache* shared = nullptr);

  const Fsa& Eval(const PathSetPtr& p);
  const Fst& Eval(const RelPtr& r);

 private:
  Fsa Compute(const PathSet& p);
  Fst Compute(const Rel& r);

  const SnapshotPair& env_;
  std::vector<Label> universe_;
  SharedCache* shared_;
  internal::NodeMap<PathSet, std::unique_ptr<Fsa>> path_sets_;
  internal::NodeMap<Rel, std::unique_ptr<Fst>> relations_;
};

// One failed Equal or Subset leaf under positive polarity. `lhs_only` is
// L(a) \ L(b); `rhs_only` is L(b) \ L(a) (always empty for Subset).
struct LeafWitness {
  SpecPtr leaf;
  Fsa lhs_only;
  Fsa rhs_only;
};

struct Verdict {
  bool holds = true;
  std::vector<LeafWitness> witnesses;
};

Verdict CheckSpec(const SpecPtr& s, Evaluator& eval);
Verdict CheckSpec(const SpecPtr& s, const SnapshotPair& env,
                  std::span<const Label> universe);

Fsa EvalPathSet(const PathSetPtr& p, const SnapshotPair& env,
                std::span<const Label> universe);
Fst EvalRel(const RelPtr& r, const SnapshotPair& env,
            std::span<const Label> universe);

}  // namespace rela::rir

#endif  // RELA_RIR_EVAL_H_
