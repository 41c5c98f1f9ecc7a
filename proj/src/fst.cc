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

#include "rela/fst.h"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"

namespace rela {

Fst::Fst() : arcs_(1), final_(1, 0) {}

StateId Fst::AddState() {
  arcs_.emplace_back();
  final_.push_back(0);
  return static_cast<StateId>(arcs_.size() - 1);
}

void Fst::AddArc(StateId from, Label in, Label out, StateId to) {
  assert(from < NumStates());
  assert(to < NumStates());
  arcs_[from].push_back({in, out, to});
  sorted_ = false;
}

void Fst::SetFinal(StateId state, bool is_final) {
  final_[state] = is_final ? 1 : 0;
}

int Fst::NumArcs() const {
  int n = 0;
  for (const auto& arcs : arcs_) n += static_cast<int>(arcs.size());
  return n;
}

void Fst::SortArcs() {
  for (auto& arcs : arcs_) {
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  }
  sorted_ = true;
}

namespace {

StateId Append(Fst& dst, const Fst& src) {
  StateId offset = dst.NumStates();
  for (StateId s = 0; s < src.NumStates(); ++s) {
    dst.SetFinal(dst.AddState(), src.IsFinal(s));
  }
  for (StateId s = 0; s < src.NumStates(); ++s) {
    for (const FstArc& arc : src.Arcs(s)) {
      dst.AddArc(offset + s, arc.in, arc.out, offset + arc.next);
    }
  }
  return offset;
}

// Lifts an acceptor onto one or both tapes.
enum class Tape { kInput, kOutput, kBoth };

StateId AppendLifted(Fst& dst, const Fsa& src, Tape tape) {
  StateId offset = dst.NumStates();
  for (StateId s = 0; s < src.NumStates(); ++s) {
    dst.SetFinal(dst.AddState(), src.IsFinal(s));
  }
  for (StateId s = 0; s < src.NumStates(); ++s) {
    for (const Arc& arc : src.Arcs(s)) {
      Label in = tape == Tape::kOutput ? kEpsilon : arc.label;
      Label out = tape == Tape::kInput ? kEpsilon : arc.label;
      dst.AddArc(offset + s, in, out, offset + arc.next);
    }
  }
  return offset;
}

// Arcs of a state whose input label is `in`; arcs must be sorted.
std::span<const FstArc> ArcsWithInput(std::span<const FstArc> arcs, Label in) {
  auto lo = std::lower_bound(
      arcs.begin(), arcs.end(), in,
      [](const FstArc& arc, Label l) { return arc.in < l; });
  auto hi = std::upper_bound(
      lo, arcs.end(), in, [](Label l, const FstArc& arc) { return l < arc.in; });
  return {lo, hi};
}

const Fst& SortedView(const Fst& r, Fst& storage) {
  if (r.sorted()) return r;
  storage = r;
  storage.SortArcs();
  return storage;
}

// Product-state key for composition-like constructions.
using Triple = std::tuple<StateId, StateId, int>;

Fst RemoveEpsilonPairs(const Fst& r) {
  const int n = r.NumStates();
  Fst out;
  for (StateId s = 1; s < n; ++s) out.AddState();
  out.SetStart(r.start());
  std::vector<char> seen(n, 0);
  std::vector<StateId> stack, closure;
  for (StateId s = 0; s < n; ++s) {
    closure.clear();
    stack.assign(1, s);
    seen[s] = 1;
    while (!stack.empty()) {
      StateId q = stack.back();
      stack.pop_back();
      closure.push_back(q);
      for (const FstArc& arc : r.Arcs(q)) {
        if (arc.in == kEpsilon && arc.out == kEpsilon && !seen[arc.next]) {
          seen[arc.next] = 1;
          stack.push_back(arc.next);
        }
      }
    }
    bool is_final = false;
    for (StateId q : closure) {
      seen[q] = 0;
      is_final |= r.IsFinal(q);
      for (const FstArc& arc : r.Arcs(q)) {
        if (arc.in != kEpsilon || arc.out != kEpsilon) {
          out.AddArc(s, arc.in, arc.out, arc.next);
        }
      }
    }
    out.SetFinal(s, is_final);
  }
  return out;
}

}  // namespace

Fst EmptyFst() {
  Fst out;
  out.SortArcs();
  return out;
}

Fst UnitFst() {
  Fst out;
  out.SetFinal(0);
  out.SortArcs();
  return out;
}

Fst Cross(const Fsa& p1, const Fsa& p2) {
  Fst out;
  StateId o1 = AppendLifted(out, p1, Tape::kInput);
  StateId o2 = AppendLifted(out, p2, Tape::kOutput);
  out.AddArc(0, kEpsilon, kEpsilon, o1 + p1.start());
  for (StateId s = 0; s < p1.NumStates(); ++s) {
    if (p1.IsFinal(s)) {
      out.SetFinal(o1 + s, false);
      out.AddArc(o1 + s, kEpsilon, kEpsilon, o2 + p2.start());
    }
  }
  return out;
}

Fst Identity(const Fsa& p) {
  Fst out;
  StateId o = AppendLifted(out, p, Tape::kBoth);
  out.AddArc(0, kEpsilon, kEpsilon, o + p.start());
  return out;
}

Fst Union(const Fst& x, const Fst& y) {
  Fst out;
  StateId ox = Append(out, x);
  StateId oy = Append(out, y);
  out.AddArc(0, kEpsilon, kEpsilon, ox + x.start());
  out.AddArc(0, kEpsilon, kEpsilon, oy + y.start());
  return out;
}

Fst Concat(const Fst& x, const Fst& y) {
  Fst out;
  StateId ox = Append(out, x);
  StateId oy = Append(out, y);
  out.AddArc(0, kEpsilon, kEpsilon, ox + x.start());
  for (StateId s = 0; s < x.NumStates(); ++s) {
    if (x.IsFinal(s)) {
      out.SetFinal(ox + s, false);
      out.AddArc(ox + s, kEpsilon, kEpsilon, oy + y.start());
    }
  }
  return out;
}

Fst Star(const Fst& x) {
  Fst out;
  out.SetFinal(0);
  StateId ox = Append(out, x);
  out.AddArc(0, kEpsilon, kEpsilon, ox + x.start());
  for (StateId s = 0; s < x.NumStates(); ++s) {
    if (x.IsFinal(s)) out.AddArc(ox + s, kEpsilon, kEpsilon, 0);
  }
  return out;
}

Fst Compose(const Fst& x, const Fst& y) {
  Fst y_storage;
  const Fst& ys = SortedView(y, y_storage);
  // Filter state 0: x may still take output-epsilon moves. Filter state 1:
  // y has taken an input-epsilon move since the last matched move, so x must
  // wait. Every interleaving is reordered to "x first", which is unique.
  absl::flat_hash_map<Triple, StateId> ids;
  std::vector<Triple> states = {{x.start(), ys.start(), 0}};
  ids.emplace(states[0], 0);
  Fst out;
  auto target = [&](StateId p, StateId q, int f) {
    Triple key{p, q, f};
    auto [it, inserted] = ids.try_emplace(key, static_cast<StateId>(states.size()));
    if (inserted) {
      out.AddState();
      states.push_back(key);
    }
    return it->second;
  };
  for (size_t i = 0; i < states.size(); ++i) {
    auto [p, q, f] = states[i];
    const StateId from = static_cast<StateId>(i);
    out.SetFinal(from, x.IsFinal(p) && ys.IsFinal(q));
    for (const FstArc& a : x.Arcs(p)) {
      if (a.out == kEpsilon) {
        if (f == 0) out.AddArc(from, a.in, kEpsilon, target(a.next, q, 0));
        continue;
      }
      for (const FstArc& b : ArcsWithInput(ys.Arcs(q), a.out)) {
        out.AddArc(from, a.in, b.out, target(a.next, b.next, 0));
      }
    }
    for (const FstArc& b : ArcsWithInput(ys.Arcs(q), kEpsilon)) {
      out.AddArc(from, kEpsilon, b.out, target(p, b.next, 1));
    }
  }
  return out;
}

Fsa Image(const Fsa& p_set, const Fst& r) {
  Fst r_storage;
  const Fst& rs = SortedView(r, r_storage);
  absl::flat_hash_map<Triple, StateId> ids;
  std::vector<Triple> states = {{p_set.start(), rs.start(), 0}};
  ids.emplace(states[0], 0);
  Fsa out;
  auto target = [&](StateId p, StateId q, int f) {
    Triple key{p, q, f};
    auto [it, inserted] = ids.try_emplace(key, static_cast<StateId>(states.size()));
    if (inserted) {
      out.AddState();
      states.push_back(key);
    }
    return it->second;
  };
  for (size_t i = 0; i < states.size(); ++i) {
    auto [p, q, f] = states[i];
    const StateId from = static_cast<StateId>(i);
    out.SetFinal(from, p_set.IsFinal(p) && rs.IsFinal(q));
    for (const Arc& a : p_set.Arcs(p)) {
      if (a.label == kEpsilon) {
        if (f == 0) out.AddArc(from, kEpsilon, target(a.next, q, 0));
        continue;
      }
      for (const FstArc& b : ArcsWithInput(rs.Arcs(q), a.label)) {
        out.AddArc(from, b.out, target(a.next, b.next, 0));
      }
    }
    for (const FstArc& b : ArcsWithInput(rs.Arcs(q), kEpsilon)) {
      out.AddArc(from, b.out, target(p, b.next, 1));
    }
  }
  return out;
}

Fsa InputProjection(const Fst& r) {
  Fsa out;
  for (StateId s = 1; s < r.NumStates(); ++s) out.AddState();
  for (StateId s = 0; s < r.NumStates(); ++s) {
    out.SetFinal(s, r.IsFinal(s));
    for (const FstArc& arc : r.Arcs(s)) out.AddArc(s, arc.in, arc.next);
  }
  out.SetStart(r.start());
  return out;
}

Fsa OutputProjection(const Fst& r) {
  Fsa out;
  for (StateId s = 1; s < r.NumStates(); ++s) out.AddState();
  for (StateId s = 0; s < r.NumStates(); ++s) {
    out.SetFinal(s, r.IsFinal(s));
    for (const FstArc& arc : r.Arcs(s)) out.AddArc(s, arc.out, arc.next);
  }
  out.SetStart(r.start());
  return out;
}

Fst Optimize(const Fst& r) {
  Fst plain = RemoveEpsilonPairs(r);
  // Encode each (in, out) pair as one acceptor label; 0 stays epsilon.
  absl::flat_hash_map<std::pair<Label, Label>, Label> codes;
  std::vector<std::pair<Label, Label>> pairs = {{kEpsilon, kEpsilon}};
  Fsa encoded;
  for (StateId s = 1; s < plain.NumStates(); ++s) encoded.AddState();
  encoded.SetStart(plain.start());
  for (StateId s = 0; s < plain.NumStates(); ++s) {
    encoded.SetFinal(s, plain.IsFinal(s));
    for (const FstArc& arc : plain.Arcs(s)) {
      auto key = std::make_pair(arc.in, arc.out);
      auto [it, inserted] =
          codes.try_emplace(key, static_cast<Label>(pairs.size()));
      if (inserted) pairs.push_back(key);
      encoded.AddArc(s, it->second, arc.next);
    }
  }
  Fsa minimal = Minimize(encoded);
  Fst out;
  for (StateId s = 1; s < minimal.NumStates(); ++s) out.AddState();
  out.SetStart(minimal.start());
  for (StateId s = 0; s < minimal.NumStates(); ++s) {
    out.SetFinal(s, minimal.IsFinal(s));
    for (const Arc& arc : minimal.Arcs(s)) {
      auto [in, o] = pairs[arc.label];
      out.AddArc(s, in, o, arc.next);
    }
  }
  out.SortArcs();
  return out;
}

bool Relates(const Fst& r, std::span<const Label> in,
             std::span<const Label> out) {
  using Config = std::tuple<StateId, size_t, size_t>;
  absl::flat_hash_set<Config> seen;
  std::vector<Config> stack = {{r.start(), 0, 0}};
  seen.insert(stack[0]);
  while (!stack.empty()) {
    auto [s, i, j] = stack.back();
    stack.pop_back();
    if (i == in.size() && j == out.size() && r.IsFinal(s)) return true;
    for (const FstArc& arc : r.Arcs(s)) {
      size_t ni = i, nj = j;
      if (arc.in != kEpsilon) {
        if (i == in.size() || in[i] != arc.in) continue;
        ++ni;
      }
      if (arc.out != kEpsilon) {
        if (j == out.size() || out[j] != arc.out) continue;
        ++nj;
      }
      Config next{arc.next, ni, nj};
      if (seen.insert(next).second) stack.push_back(next);
    }
  }
  return false;
}

}  // namespace rela
