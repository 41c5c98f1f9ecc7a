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

// Two-tape transducers denoting regular relations between paths.

#ifndef RELA_FST_H_
#define RELA_FST_H_

#include <span>
#include <vector>

#include "rela/fsa.h"

namespace rela {

struct FstArc {
  Label in;   // kEpsilon: reads nothing.
  Label out;  // kEpsilon: writes nothing.
  StateId next;

  friend bool operator==(const FstArc&, const FstArc&) = default;
  friend auto operator<=>(const FstArc&, const FstArc&) = default;
};

class Fst {
 public:
  // A single non-accepting start state: the empty relation.
  Fst();

  StateId AddState();
  void AddArc(StateId from, Label in, Label out, StateId to);
  void SetFinal(StateId state, bool is_final = true);
  void SetStart(StateId state) { start_ = state; }

  StateId start() const { return start_; }
  int NumStates() const { return static_cast<int>(arcs_.size()); }
  int NumArcs() const;
  bool IsFinal(StateId state) const { return final_[state] != 0; }
  std::span<const FstArc> Arcs(StateId state) const { return arcs_[state]; }

  // Sorts every state's arcs by (in, out, next) and removes duplicates.
  // Composition and image rely on input-sorted arcs and call this on copies
  // that are not already sorted.
  void SortArcs();
  bool sorted() const { return sorted_; }

 private:
  std::vector<std::vector<FstArc>> arcs_;
  std::vector<char> final_;
  StateId start_ = 0;
  bool sorted_ = false;
};

Fst EmptyFst();
// {(eps, eps)}.
Fst UnitFst();

// P1 x P2: reads a string of P1 while writing nothing, then writes a string
// of P2 while reading nothing. Size is linear in the operands.
Fst Cross(const Fsa& p1, const Fsa& p2);
// {(p, p) | p in P}.
Fst Identity(const Fsa& p);

Fst Union(const Fst& x, const Fst& y);
// Component-wise concatenation of related pairs.
Fst Concat(const Fst& x, const Fst& y);
Fst Star(const Fst& x);

// Relational composition: (a, c) whenever (a, b) in x and (b, c) in y.
// Uses a sequencing epsilon filter, so each related pair is produced without
// redundant interleavings of x's output-epsilon and y's input-epsilon moves.
Fst Compose(const Fst& x, const Fst& y);

// { q | exists p in L(p_set) with (p, q) in r }, i.e. the output projection
// of Identity(p_set) composed with r.
Fsa Image(const Fsa& p_set, const Fst& r);

Fsa InputProjection(const Fst& r);
Fsa OutputProjection(const Fst& r);

// Removes epsilon:epsilon arcs, then determinizes and minimizes the
// transducer as an acceptor over (in, out) label pairs. The relation is
// unchanged; the result has sorted arcs.
Fst Optimize(const Fst& r);

// Direct membership test: is (in, out) in the relation?
bool Relates(const Fst& r, std::span<const Label> in, std::span<const Label> out);

}  // namespace rela

#endif  // RELA_FST_H_
