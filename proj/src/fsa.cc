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

#include "rela/fsa.h"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <deque>
#include <span>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"

namespace rela {

Fsa::Fsa() : arcs_(1), final_(1, 0) {}

StateId Fsa::AddState() {
  arcs_.emplace_back();
  final_.push_back(0);
  return static_cast<StateId>(arcs_.size() - 1);
}

void Fsa::AddArc(StateId from, Label label, StateId to) {
  assert(from < NumStates());
  assert(to < NumStates());
  arcs_[from].push_back({label, to});
}

void Fsa::SetFinal(StateId state, bool is_final) {
  final_[state] = is_final ? 1 : 0;
}

int Fsa::NumArcs() const {
  int n = 0;
  for (const auto& arcs : arcs_) n += static_cast<int>(arcs.size());
  return n;
}

void Fsa::SortArcs() {
  for (auto& arcs : arcs_) {
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  }
}

std::vector<Label> Fsa::Alphabet() const {
  std::vector<Label> out;
  for (const auto& arcs : arcs_) {
    for (const Arc& arc : arcs) {
      if (arc.label != kEpsilon) out.push_back(arc.label);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Appends a copy of `src` to `dst` and returns the id offset of its states.
StateId Append(Fsa& dst, const Fsa& src) {
  StateId offset = dst.NumStates();
  for (StateId s = 0; s < src.NumStates(); ++s) {
    StateId t = dst.AddState();
    dst.SetFinal(t, src.IsFinal(s));
  }
  for (StateId s = 0; s < src.NumStates(); ++s) {
    for (const Arc& arc : src.Arcs(s)) {
      dst.AddArc(offset + s, arc.label, offset + arc.next);
    }
  }
  return offset;
}

// Looks up the unique arc for `label` in a deterministic state's sorted arcs.
// Returns -1 when there is none.
StateId Step(std::span<const Arc> arcs, Label label) {
  auto it = std::lower_bound(
      arcs.begin(), arcs.end(), label,
      [](const Arc& arc, Label l) { return arc.label < l; });
  if (it == arcs.end() || it->label != label) return -1;
  return it->next;
}

void EpsilonClosure(const Fsa& x, std::vector<StateId>& states) {
  std::vector<char> seen(x.NumStates(), 0);
  std::vector<StateId> stack;
  for (StateId s : states) {
    if (!seen[s]) {
      seen[s] = 1;
      stack.push_back(s);
    }
  }
  states.clear();
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    states.push_back(s);
    for (const Arc& arc : x.Arcs(s)) {
      if (arc.label == kEpsilon && !seen[arc.next]) {
        seen[arc.next] = 1;
        stack.push_back(arc.next);
      }
    }
  }
  std::sort(states.begin(), states.end());
}

// Renumbers a deterministic automaton's states in breadth-first order from
// the start, visiting arcs in label order. Unreachable states are dropped.
Fsa CanonicalOrder(const Fsa& x) {
  std::vector<StateId> id(x.NumStates(), -1);
  std::vector<StateId> order;
  id[x.start()] = 0;
  order.push_back(x.start());
  for (size_t i = 0; i < order.size(); ++i) {
    for (const Arc& arc : x.Arcs(order[i])) {
      if (id[arc.next] < 0) {
        id[arc.next] = static_cast<StateId>(order.size());
        order.push_back(arc.next);
      }
    }
  }
  Fsa out;
  for (size_t i = 1; i < order.size(); ++i) out.AddState();
  for (size_t i = 0; i < order.size(); ++i) {
    StateId s = order[i];
    out.SetFinal(static_cast<StateId>(i), x.IsFinal(s));
    for (const Arc& arc : x.Arcs(s)) {
      out.AddArc(static_cast<StateId>(i), arc.label, id[arc.next]);
    }
  }
  out.SortArcs();
  out.MarkDeterministic();
  return out;
}

// Refinable partition used by Valmari's minimization. `marks` and `touched`
// are shared scratch arrays sized to the larger of the two partitions.
struct RefinablePartition {
  int num_sets = 0;
  std::vector<int> elems;     // Elements grouped by set.
  std::vector<int> location;  // Position of each element in `elems`.
  std::vector<int> set_of;    // Set containing each element.
  std::vector<int> first;     // First position of each set.
  std::vector<int> past;      // One past the last position of each set.

  void Init(int n) {
    num_sets = n > 0 ? 1 : 0;
    elems.resize(n);
    location.resize(n);
    set_of.assign(n, 0);
    first.assign(n + 1, 0);
    past.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) elems[i] = location[i] = i;
    if (num_sets) past[0] = n;
  }

  void Mark(int e, std::vector<int>& marks, std::vector<int>& touched,
            int& num_touched) {
    int s = set_of[e];
    int i = location[e];
    int j = first[s] + marks[s];
    elems[i] = elems[j];
    location[elems[i]] = i;
    elems[j] = e;
    location[e] = j;
    if (!marks[s]++) touched[num_touched++] = s;
  }

  void Split(std::vector<int>& marks, std::vector<int>& touched,
             int& num_touched) {
    while (num_touched) {
      int s = touched[--num_touched];
      int j = first[s] + marks[s];
      if (j == past[s]) {
        marks[s] = 0;
        continue;
      }
      if (marks[s] <= past[s] - j) {
        first[num_sets] = first[s];
        past[num_sets] = first[s] = j;
      } else {
        past[num_sets] = past[s];
        first[num_sets] = past[s] = j;
      }
      for (int i = first[num_sets]; i < past[num_sets]; ++i) {
        set_of[elems[i]] = num_sets;
      }
      marks[s] = marks[num_sets++] = 0;
    }
  }
};

}  // namespace

Fsa EmptyFsa() {
  Fsa out;
  out.MarkDeterministic();
  return out;
}

Fsa EpsilonFsa() {
  Fsa out;
  out.SetFinal(0);
  out.MarkDeterministic();
  return out;
}

Fsa SymbolFsa(Label label) {
  Label labels[] = {label};
  return SymbolSetFsa(labels);
}

Fsa SymbolSetFsa(std::span<const Label> labels) {
  Fsa out;
  StateId accept = out.AddState();
  out.SetFinal(accept);
  for (Label l : labels) {
    assert(l != kEpsilon);
    out.AddArc(0, l, accept);
  }
  out.SortArcs();
  out.MarkDeterministic();
  return out;
}

Fsa PathFsa(std::span<const Label> path) {
  Fsa out;
  StateId s = 0;
  for (Label l : path) {
    StateId t = out.AddState();
    out.AddArc(s, l, t);
    s = t;
  }
  out.SetFinal(s);
  out.MarkDeterministic();
  return out;
}

Fsa Union(const Fsa& x, const Fsa& y) {
  Fsa out;
  StateId ox = Append(out, x);
  StateId oy = Append(out, y);
  out.AddArc(0, kEpsilon, ox + x.start());
  out.AddArc(0, kEpsilon, oy + y.start());
  return out;
}

Fsa Concat(const Fsa& x, const Fsa& y) {
  Fsa out;
  StateId ox = Append(out, x);
  StateId oy = Append(out, y);
  out.AddArc(0, kEpsilon, ox + x.start());
  for (StateId s = 0; s < x.NumStates(); ++s) {
    if (x.IsFinal(s)) {
      out.SetFinal(ox + s, false);
      out.AddArc(ox + s, kEpsilon, oy + y.start());
    }
  }
  return out;
}

Fsa Star(const Fsa& x) {
  Fsa out;
  out.SetFinal(0);
  StateId ox = Append(out, x);
  out.AddArc(0, kEpsilon, ox + x.start());
  for (StateId s = 0; s < x.NumStates(); ++s) {
    if (x.IsFinal(s)) out.AddArc(ox + s, kEpsilon, 0);
  }
  return out;
}

Fsa Determinize(const Fsa& x) {
  if (x.deterministic()) return x;
  absl::flat_hash_map<std::vector<StateId>, StateId> ids;
  std::vector<std::vector<StateId>> subsets;
  Fsa out;

  std::vector<StateId> initial = {x.start()};
  EpsilonClosure(x, initial);
  ids.emplace(initial, 0);
  subsets.push_back(initial);

  std::vector<std::pair<Label, StateId>> moves;
  for (size_t i = 0; i < subsets.size(); ++i) {
    const StateId from = static_cast<StateId>(i);
    moves.clear();
    bool is_final = false;
    for (StateId s : subsets[i]) {
      is_final |= x.IsFinal(s);
      for (const Arc& arc : x.Arcs(s)) {
        if (arc.label != kEpsilon) moves.emplace_back(arc.label, arc.next);
      }
    }
    out.SetFinal(from, is_final);
    std::sort(moves.begin(), moves.end());
    for (size_t j = 0; j < moves.size();) {
      Label label = moves[j].first;
      std::vector<StateId> target;
      for (; j < moves.size() && moves[j].first == label; ++j) {
        if (target.empty() || target.back() != moves[j].second) {
          target.push_back(moves[j].second);
        }
      }
      EpsilonClosure(x, target);
      auto [it, inserted] =
          ids.try_emplace(target, static_cast<StateId>(subsets.size()));
      if (inserted) {
        out.AddState();
        subsets.push_back(std::move(target));
      }
      out.AddArc(from, label, it->second);
    }
  }
  out.MarkDeterministic();
  return out;
}

Fsa Trim(const Fsa& x) {
  const int n = x.NumStates();
  std::vector<char> accessible(n, 0);
  std::vector<StateId> stack = {x.start()};
  accessible[x.start()] = 1;
  std::vector<std::vector<StateId>> reverse(n);
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (const Arc& arc : x.Arcs(s)) {
      reverse[arc.next].push_back(s);
      if (!accessible[arc.next]) {
        accessible[arc.next] = 1;
        stack.push_back(arc.next);
      }
    }
  }
  std::vector<char> live(n, 0);
  for (StateId s = 0; s < n; ++s) {
    if (accessible[s] && x.IsFinal(s)) {
      live[s] = 1;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (StateId p : reverse[s]) {
      if (!live[p]) {
        live[p] = 1;
        stack.push_back(p);
      }
    }
  }
  if (!live[x.start()]) return EmptyFsa();

  std::vector<StateId> id(n, -1);
  Fsa out;
  id[x.start()] = 0;
  out.SetFinal(0, x.IsFinal(x.start()));
  for (StateId s = 0; s < n; ++s) {
    if (live[s] && s != x.start()) {
      id[s] = out.AddState();
      out.SetFinal(id[s], x.IsFinal(s));
    }
  }
  for (StateId s = 0; s < n; ++s) {
    if (id[s] < 0) continue;
    for (const Arc& arc : x.Arcs(s)) {
      if (id[arc.next] >= 0) out.AddArc(id[s], arc.label, id[arc.next]);
    }
  }
  if (x.deterministic()) out.MarkDeterministic();
  return out;
}

Fsa Minimize(const Fsa& x) {
  Fsa dfa = Trim(x.deterministic() ? x : Determinize(x));
  const int num_states = dfa.NumStates();
  bool any_final = false;
  for (StateId s = 0; s < num_states; ++s) any_final |= dfa.IsFinal(s);
  if (!any_final) return EmptyFsa();

  std::vector<int> tail, head;
  std::vector<Label> label;
  for (StateId s = 0; s < num_states; ++s) {
    for (const Arc& arc : dfa.Arcs(s)) {
      tail.push_back(s);
      label.push_back(arc.label);
      head.push_back(arc.next);
    }
  }
  const int num_arcs = static_cast<int>(tail.size());
  std::vector<int> marks(std::max(num_states, num_arcs) + 1, 0);
  std::vector<int> touched(std::max(num_states, num_arcs) + 1, 0);
  int num_touched = 0;

  RefinablePartition blocks;
  blocks.Init(num_states);
  for (StateId s = 0; s < num_states; ++s) {
    if (dfa.IsFinal(s)) blocks.Mark(s, marks, touched, num_touched);
  }
  blocks.Split(marks, touched, num_touched);

  // Arcs partitioned by label ("cords").
  RefinablePartition cords;
  cords.Init(num_arcs);
  if (num_arcs > 0) {
    std::sort(cords.elems.begin(), cords.elems.end(),
              [&](int a, int b) { return label[a] < label[b]; });
    cords.num_sets = marks[0] = 0;
    Label current = label[cords.elems[0]];
    for (int i = 0; i < num_arcs; ++i) {
      int t = cords.elems[i];
      if (label[t] != current) {
        current = label[t];
        cords.past[cords.num_sets++] = i;
        cords.first[cords.num_sets] = i;
        marks[cords.num_sets] = 0;
      }
      cords.set_of[t] = cords.num_sets;
      cords.location[t] = i;
    }
    cords.past[cords.num_sets++] = num_arcs;
  }

  // Incoming arcs per state.
  std::vector<int> in_offset(num_states + 1, 0);
  for (int t = 0; t < num_arcs; ++t) ++in_offset[head[t] + 1];
  for (int s = 0; s < num_states; ++s) in_offset[s + 1] += in_offset[s];
  std::vector<int> incoming(num_arcs);
  {
    std::vector<int> fill(in_offset.begin(), in_offset.end() - 1);
    for (int t = 0; t < num_arcs; ++t) incoming[fill[head[t]]++] = t;
  }

  int b = 1;
  int c = 0;
  while (c < cords.num_sets) {
    for (int i = cords.first[c]; i < cords.past[c]; ++i) {
      blocks.Mark(tail[cords.elems[i]], marks, touched, num_touched);
    }
    blocks.Split(marks, touched, num_touched);
    ++c;
    while (b < blocks.num_sets) {
      for (int i = blocks.first[b]; i < blocks.past[b]; ++i) {
        int s = blocks.elems[i];
        for (int j = in_offset[s]; j < in_offset[s + 1]; ++j) {
          cords.Mark(incoming[j], marks, touched, num_touched);
        }
      }
      cords.Split(marks, touched, num_touched);
      ++b;
    }
  }

  Fsa quotient;
  for (int i = 1; i < blocks.num_sets; ++i) quotient.AddState();
  for (StateId s = 0; s < num_states; ++s) {
    if (dfa.IsFinal(s)) quotient.SetFinal(blocks.set_of[s]);
  }
  for (int t = 0; t < num_arcs; ++t) {
    int from = blocks.set_of[tail[t]];
    // Only the first state of each block contributes its arcs.
    if (blocks.location[tail[t]] == blocks.first[from]) {
      quotient.AddArc(from, label[t], blocks.set_of[head[t]]);
    }
  }
  quotient.SetStart(blocks.set_of[dfa.start()]);
  return CanonicalOrder(quotient);
}

Fsa Intersect(const Fsa& x, const Fsa& y) {
  Fsa dx = Determinize(x);
  Fsa dy = Determinize(y);
  absl::flat_hash_map<std::pair<StateId, StateId>, StateId> ids;
  std::vector<std::pair<StateId, StateId>> pairs = {{dx.start(), dy.start()}};
  ids.emplace(pairs[0], 0);
  Fsa out;
  for (size_t i = 0; i < pairs.size(); ++i) {
    auto [p, q] = pairs[i];
    const StateId from = static_cast<StateId>(i);
    out.SetFinal(from, dx.IsFinal(p) && dy.IsFinal(q));
    for (const Arc& arc : dx.Arcs(p)) {
      StateId next_q = Step(dy.Arcs(q), arc.label);
      if (next_q < 0) continue;
      auto key = std::make_pair(arc.next, next_q);
      auto [it, inserted] =
          ids.try_emplace(key, static_cast<StateId>(pairs.size()));
      if (inserted) {
        out.AddState();
        pairs.push_back(key);
      }
      out.AddArc(from, arc.label, it->second);
    }
  }
  out.MarkDeterministic();
  return Trim(out);
}

Fsa Complement(const Fsa& x, std::span<const Label> universe) {
  std::vector<Label> sigma(universe.begin(), universe.end());
  std::sort(sigma.begin(), sigma.end());
  sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());

  Fsa d = Minimize(x);
  Fsa out;
  for (StateId s = 1; s < d.NumStates(); ++s) out.AddState();
  const StateId sink = out.AddState();
  for (StateId s = 0; s < d.NumStates(); ++s) {
    out.SetFinal(s, !d.IsFinal(s));
    for (Label a : sigma) {
      StateId next = Step(d.Arcs(s), a);
      out.AddArc(s, a, next < 0 ? sink : next);
    }
  }
  out.SetFinal(sink);
  for (Label a : sigma) out.AddArc(sink, a, sink);
  out.SetStart(d.start());
  out.MarkDeterministic();
  return Minimize(out);
}

bool IsEmpty(const Fsa& x) {
  std::vector<char> seen(x.NumStates(), 0);
  std::vector<StateId> stack = {x.start()};
  seen[x.start()] = 1;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    if (x.IsFinal(s)) return false;
    for (const Arc& arc : x.Arcs(s)) {
      if (!seen[arc.next]) {
        seen[arc.next] = 1;
        stack.push_back(arc.next);
      }
    }
  }
  return true;
}

bool Accepts(const Fsa& x, std::span<const Label> path) {
  std::vector<StateId> current = {x.start()};
  EpsilonClosure(x, current);
  for (Label l : path) {
    std::vector<StateId> next;
    for (StateId s : current) {
      for (const Arc& arc : x.Arcs(s)) {
        if (arc.label == l) next.push_back(arc.next);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    EpsilonClosure(x, next);
    current = std::move(next);
    if (current.empty()) return false;
  }
  for (StateId s : current) {
    if (x.IsFinal(s)) return true;
  }
  return false;
}

namespace {

bool HasCycle(const Fsa& x) {
  // 0 = unvisited, 1 = on stack, 2 = done.
  std::vector<char> color(x.NumStates(), 0);
  std::vector<std::pair<StateId, size_t>> stack;
  for (StateId root = 0; root < x.NumStates(); ++root) {
    if (color[root]) continue;
    stack.emplace_back(root, 0);
    color[root] = 1;
    while (!stack.empty()) {
      auto& [s, i] = stack.back();
      auto arcs = x.Arcs(s);
      if (i == arcs.size()) {
        color[s] = 2;
        stack.pop_back();
        continue;
      }
      StateId next = arcs[i++].next;
      if (color[next] == 1) return true;
      if (color[next] == 0) {
        color[next] = 1;
        stack.emplace_back(next, 0);
      }
    }
  }
  return false;
}

}  // namespace

bool IsFinite(const Fsa& x) { return !HasCycle(Minimize(x)); }

Fsa Difference(const Fsa& x, const Fsa& y) {
  Fsa dx = Determinize(x);
  Fsa dy = Determinize(y);
  // State -1 on the right is the completion sink: it rejects everything.
  absl::flat_hash_map<std::pair<StateId, StateId>, StateId> ids;
  std::vector<std::pair<StateId, StateId>> pairs = {{dx.start(), dy.start()}};
  ids.emplace(pairs[0], 0);
  Fsa out;
  for (size_t i = 0; i < pairs.size(); ++i) {
    auto [p, q] = pairs[i];
    const StateId from = static_cast<StateId>(i);
    out.SetFinal(from, dx.IsFinal(p) && (q < 0 || !dy.IsFinal(q)));
    for (const Arc& arc : dx.Arcs(p)) {
      StateId next_q = q < 0 ? -1 : Step(dy.Arcs(q), arc.label);
      auto key = std::make_pair(arc.next, next_q);
      auto [it, inserted] =
          ids.try_emplace(key, static_cast<StateId>(pairs.size()));
      if (inserted) {
        out.AddState();
        pairs.push_back(key);
      }
      out.AddArc(from, arc.label, it->second);
    }
  }
  out.MarkDeterministic();
  return Trim(out);
}

bool Equivalent(const Fsa& x, const Fsa& y) {
  return IsEmpty(Difference(x, y)) && IsEmpty(Difference(y, x));
}

PathList EnumerateShortest(const Fsa& x, int limit) {
  assert(limit >= 1);
  PathList result;
  Fsa d = Minimize(x);
  if (IsEmpty(d)) return result;

  const int n = d.NumStates();
  const bool finite = !HasCycle(d);
  // A trimmed acyclic automaton has no accepted string longer than n - 1.
  const int max_len = finite ? n - 1 : -1;

  // reach[r][q]: some accepted string of length exactly r starts at q.
  std::vector<std::vector<char>> reach;
  auto extend_reach = [&](int len) {
    while (static_cast<int>(reach.size()) <= len) {
      std::vector<char> row(n, 0);
      if (reach.empty()) {
        for (StateId s = 0; s < n; ++s) row[s] = d.IsFinal(s);
      } else {
        const auto& prev = reach.back();
        for (StateId s = 0; s < n; ++s) {
          for (const Arc& arc : d.Arcs(s)) {
            if (prev[arc.next]) {
              row[s] = 1;
              break;
            }
          }
        }
      }
      reach.push_back(std::move(row));
    }
  };

  std::vector<Path> found;
  const size_t wanted = static_cast<size_t>(limit) + 1;
  Path prefix;
  // Depth-first in label order yields lexicographic order within a length.
  auto visit = [&](auto&& self, StateId s, int remaining) -> void {
    if (found.size() >= wanted) return;
    if (remaining == 0) {
      found.push_back(prefix);
      return;
    }
    for (const Arc& arc : d.Arcs(s)) {
      if (!reach[remaining - 1][arc.next]) continue;
      prefix.push_back(arc.label);
      self(self, arc.next, remaining - 1);
      prefix.pop_back();
      if (found.size() >= wanted) return;
    }
  };

  for (int len = 0; found.size() < wanted; ++len) {
    if (finite && len > max_len) break;
    extend_reach(len);
    if (reach[len][d.start()]) visit(visit, d.start(), len);
  }
  result.truncated = found.size() > static_cast<size_t>(limit);
  if (result.truncated) found.resize(limit);
  result.paths = std::move(found);
  return result;
}

}  // namespace rela
