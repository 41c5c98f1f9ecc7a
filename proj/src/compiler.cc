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

#include "rela/compiler.h"

#include "absl/strings/str_cat.h"
#include "rela/rir_notation.h"

namespace rela {

using surface::Modifier;
using surface::Regex;
using surface::Spec;

struct Compiler::Parts {
  rir::RelPtr rpre, rpost;
  rir::PathSetPtr zone;
  // Arms of the else chain rooted here (empty unless an else).
  std::vector<SubspecEntry> chain;
  // Arms of else chains below a concatenation.
  std::vector<SubspecEntry> nested;
};

namespace {

rir::PathSetPtr UnionAll(const std::vector<rir::PathSetPtr>& items, size_t lo,
                         size_t hi) {
  if (hi - lo == 1) return items[lo];
  size_t mid = lo + (hi - lo) / 2;
  return rir::Union(UnionAll(items, lo, mid), UnionAll(items, mid, hi));
}

rir::PathSetPtr SymSet(const std::vector<Label>& labels) {
  if (labels.empty()) return rir::Zero();
  std::vector<rir::PathSetPtr> syms;
  for (Label l : labels) syms.push_back(rir::Sym(l));
  return UnionAll(syms, 0, syms.size());
}

SubspecEntry Restrict(SubspecEntry e, const rir::PathSetPtr& outside) {
  rir::RelPtr filter = rir::Identity(rir::Complement(outside));
  e.zone = rir::Minus(e.zone, outside);
  e.rpre = rir::Compose(filter, e.rpre);
  e.rpost = rir::Compose(filter, e.rpost);
  return e;
}

}  // namespace

Compiler::Compiler(SymbolTable& symbols)
    : symbols_(symbols), dot_(SymSet(symbols.Locations())) {}

rir::PathSetPtr Compiler::Lower(const Regex& r) {
  switch (r.kind) {
    case Regex::Kind::kLoc:
      return SymSet(r.locs);
    case Regex::Kind::kDot:
      return dot_;
    case Regex::Kind::kUnion:
      return rir::Union(Lower(*r.a), Lower(*r.b));
    case Regex::Kind::kConcat:
      return rir::Concat(Lower(*r.a), Lower(*r.b));
    case Regex::Kind::kStar:
      return rir::Star(Lower(*r.a));
  }
  return rir::Zero();
}

Compiler::Parts Compiler::Atomic(const Spec& s, CompiledSpec& out) {
  rir::PathSetPtr d = Lower(*s.zone);
  const Modifier& m = s.mod;
  Parts p;
  switch (m.kind) {
    case Modifier::Kind::kPreserve:
      p.rpre = p.rpost = rir::Identity(d);
      p.zone = d;
      break;
    case Modifier::Kind::kAdd: {
      rir::PathSetPtr add = Lower(*m.r1);
      rir::PathSetPtr dp = rir::Union(d, add);
      p.rpre = rir::Union(rir::Identity(dp), rir::Cross(d, add));
      p.rpost = rir::Identity(dp);
      p.zone = dp;
      break;
    }
    case Modifier::Kind::kRemove:
      p.rpre = rir::Identity(rir::Minus(d, Lower(*m.r1)));
      p.rpost = rir::Identity(d);
      p.zone = d;
      break;
    case Modifier::Kind::kReplace: {
      rir::PathSetPtr p1 = Lower(*m.r1);
      rir::PathSetPtr p2 = Lower(*m.r2);
      rir::PathSetPtr dp2 = rir::Union(d, p2);
      p.rpre = rir::Union(rir::Identity(rir::Minus(dp2, p1)),
                          rir::Cross(rir::Intersect(d, p1), p2));
      p.rpost = rir::Identity(dp2);
      p.zone = dp2;
      break;
    }
    case Modifier::Kind::kDrop: {
      rir::PathSetPtr dd = rir::Union(d, rir::Sym(kDrop));
      p.rpre = rir::Cross(dd, rir::Sym(kDrop));
      p.rpost = rir::Identity(dd);
      p.zone = dd;
      break;
    }
    case Modifier::Kind::kAny: {
      rir::PathSetPtr target = Lower(*m.r1);
      Label marker = symbols_.NewMarker();
      rir::PathSetPtr mark = rir::Sym(marker);
      p.zone = rir::Union(d, target);
      p.rpre = rir::Cross(p.zone, mark);
      p.rpost = rir::Union(rir::Cross(target, mark),
                           rir::Identity(rir::Minus(d, target)));
      out.markers.push_back(
          {marker, m.raw.empty() ? surface::Print(*m.r1, symbols_) : m.raw,
           target});
      break;
    }
  }
  return p;
}

Compiler::Parts Compiler::Visit(const Spec& s, CompiledSpec& out) {
  if (s.kind == Spec::Kind::kAtomic) return Atomic(s, out);
  Parts a = Visit(*s.a, out);
  Parts b = Visit(*s.b, out);
  Parts p;
  p.nested = std::move(a.nested);
  p.nested.insert(p.nested.end(), b.nested.begin(), b.nested.end());
  if (s.kind == Spec::Kind::kConcat) {
    p.rpre = rir::Concat(a.rpre, b.rpre);
    p.rpost = rir::Concat(a.rpost, b.rpost);
    p.zone = rir::Concat(a.zone, b.zone);
    for (Parts* child : {&a, &b}) {
      p.nested.insert(p.nested.end(), child->chain.begin(), child->chain.end());
    }
    return p;
  }
  rir::RelPtr outside = rir::Identity(rir::Complement(a.zone));
  p.rpre = rir::Union(a.rpre, rir::Compose(outside, b.rpre));
  p.rpost = rir::Union(a.rpost, rir::Compose(outside, b.rpost));
  p.zone = rir::Union(a.zone, b.zone);
  if (s.a->kind == Spec::Kind::kElse && s.a->name.empty()) {
    p.chain = std::move(a.chain);
  } else {
    p.chain.push_back({s.a->name, a.zone, a.rpre, a.rpost});
  }
  if (s.b->kind == Spec::Kind::kElse && s.b->name.empty()) {
    for (SubspecEntry& e : b.chain) p.chain.push_back(Restrict(e, a.zone));
  } else {
    p.chain.push_back(
        Restrict({s.b->name, b.zone, b.rpre, b.rpost}, a.zone));
  }
  return p;
}

CompiledSpec Compiler::Compile(const Spec& spec) {
  CompiledSpec out;
  out.name = spec.name;
  Parts p = Visit(spec, out);
  out.rpre = p.rpre;
  out.rpost = p.rpost;
  out.zone = p.zone;
  out.top = rir::Equal(rir::Image(rir::PreState(), p.rpre),
                       rir::Image(rir::PostState(), p.rpost));
  if (spec.kind == Spec::Kind::kElse) {
    out.subspecs = std::move(p.chain);
  } else {
    out.subspecs.push_back({spec.name, p.zone, p.rpre, p.rpost});
  }
  out.subspecs.insert(out.subspecs.end(), p.nested.begin(), p.nested.end());
  for (size_t i = 0; i < out.subspecs.size(); ++i) {
    if (out.subspecs[i].label.empty()) {
      out.subspecs[i].label = absl::StrCat("arm ", i + 1);
    }
  }
  return out;
}

CompiledProgram Compiler::Compile(const surface::Program& program) {
  CompiledProgram out;
  for (const surface::GuardedSpec& g : program.guarded) {
    out.guarded.push_back({g.name, g.pred, Compile(*g.spec)});
  }
  if (program.fallback != nullptr) out.fallback = Compile(*program.fallback);
  return out;
}

std::string EmitRir(const CompiledSpec& spec, const SymbolTable& symbols) {
  std::string out;
  absl::StrAppend(&out, "# spec ", spec.name.empty() ? "-" : spec.name, "\n");
  for (const AnyMarker& m : spec.markers) {
    absl::StrAppend(&out, "# ", symbols.Name(m.marker), " = any(", m.text,
                    ")\n");
  }
  absl::StrAppend(&out, "R_pre := ", rir::Print(*spec.rpre, symbols), "\n");
  absl::StrAppend(&out, "R_post := ", rir::Print(*spec.rpost, symbols), "\n");
  absl::StrAppend(&out, "Z := ", rir::Print(*spec.zone, symbols), "\n");
  absl::StrAppend(&out, "S := ", rir::Print(*spec.top, symbols), "\n");
  for (const SubspecEntry& e : spec.subspecs) {
    absl::StrAppend(&out, "# sub-spec ", e.label, "\n");
    absl::StrAppend(&out, "Z[", e.label, "] := ",
                    rir::Print(*e.zone, symbols), "\n");
    absl::StrAppend(&out, "R_pre[", e.label, "] := ",
                    rir::Print(*e.rpre, symbols), "\n");
    absl::StrAppend(&out, "R_post[", e.label, "] := ",
                    rir::Print(*e.rpost, symbols), "\n");
  }
  return out;
}

}  // namespace rela
