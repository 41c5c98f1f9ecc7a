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

// Finite-state acceptors over interned labels, and the language-level
// operations the verifier needs: boolean closure, determinization,
// minimization, difference, equivalence and shortest-string enumeration.
//
// Every operation is a pure function of its arguments; an `Fsa` is a value
// and may be shared read-only between threads.

#ifndef RELA_FSA_H_
#define RELA_FSA_H_

#include <cstdint>
#include <span>
#include <vector>

#include "rela/symbol_table.h"

namespace rela {

using StateId = std::int32_t;

struct Arc {
  Label label;  // kEpsilon for an empty move.
  StateId next;

  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// A string over labels. Used both for snapshot paths and for witnesses.
using Path = std::vector<Label>;

class Fsa {
 public:
  // A single non-accepting start state: the empty language.
  Fsa();

  StateId AddState();
  void AddArc(StateId from, Label label, StateId to);
  void SetFinal(StateId state, bool is_final = true);
  void SetStart(StateId state) { start_ = state; }

  StateId start() const { return start_; }
  int NumStates() const { return static_cast<int>(arcs_.size()); }
  int NumArcs() const;
  bool IsFinal(StateId state) const { return final_[state] != 0; }
  std::span<const Arc> Arcs(StateId state) const { return arcs_[state]; }

  // True when produced by Determinize/Minimize (or marked by a caller that
  // knows): no epsilon arcs and at most one arc per (state, label), with each
  // state's arcs sorted by label.
  bool deterministic() const { return deterministic_; }
  void MarkDeterministic() { deterministic_ = true; }

  // Sorts every state's arcs by (label, next) and removes duplicates.
  void SortArcs();

  // Labels that occur on some arc, sorted and unique. Excludes kEpsilon.
  std::vector<Label> Alphabet() const;

 private:
  std::vector<std::vector<Arc>> arcs_;
  std::vector<char> final_;
  StateId start_ = 0;
  bool deterministic_ = false;
};

// Basic languages.
Fsa EmptyFsa();
Fsa EpsilonFsa();
Fsa SymbolFsa(Label label);
// One-symbol strings, one per label in `labels`.
Fsa SymbolSetFsa(std::span<const Label> labels);
// Accepts exactly `path`.
Fsa PathFsa(std::span<const Label> path);

// Regular closure. Results may contain epsilon arcs.
Fsa Union(const Fsa& x, const Fsa& y);
Fsa Concat(const Fsa& x, const Fsa& y);
Fsa Star(const Fsa& x);

// Product construction over the determinized inputs. Deterministic result.
Fsa Intersect(const Fsa& x, const Fsa& y);

// universe* \ L(x). Strings using labels outside `universe` (for instance
// markers) are never in the result. Deterministic and minimal.
Fsa Complement(const Fsa& x, std::span<const Label> universe);

// Subset construction with epsilon closure. Only accessible subsets are
// built; states that cannot reach a final state may remain.
Fsa Determinize(const Fsa& x);

// Removes states that are not both reachable from the start and able to
// reach a final state. Preserves determinism.
Fsa Trim(const Fsa& x);

// Partition-refinement minimization (Hopcroft/Valmari, partial DFAs).
// Determinizes first when `x` is not deterministic. The result is trimmed and
// its states are numbered in breadth-first order from the start, so equal
// languages yield identical automata.
Fsa Minimize(const Fsa& x);

bool IsEmpty(const Fsa& x);
bool Accepts(const Fsa& x, std::span<const Label> path);

// True iff the accepted language is finite.
bool IsFinite(const Fsa& x);

// L(x) \ L(y), by a product of det(x) with the completion of det(y). The
// completion is taken over the labels of both operands, so the result is
// the exact set difference even when markers are involved.
Fsa Difference(const Fsa& x, const Fsa& y);

// Language equality: both directed differences are empty.
bool Equivalent(const Fsa& x, const Fsa& y);

// Up to `limit` accepted strings, shortest first, ties broken
// lexicographically by label id.
struct PathList {
  std::vector<Path> paths;
  // Set iff the language has strings beyond those listed.
  bool truncated = false;

  friend bool operator==(const PathList&, const PathList&) = default;
};

PathList EnumerateShortest(const Fsa& x, int limit);

}  // namespace rela

#endif  // RELA_FSA_H_
