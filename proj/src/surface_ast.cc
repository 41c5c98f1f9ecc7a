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

#include "rela/surface_ast.h"

#include <algorithm>
#include <cassert>
#include <set>

#include "absl/strings/str_cat.h"

namespace rela::surface {

RegexPtr Loc(std::vector<Label> locs) {
  std::sort(locs.begin(), locs.end());
  locs.erase(std::unique(locs.begin(), locs.end()), locs.end());
  assert(!locs.empty());
  auto r = std::make_shared<Regex>();
  r->locs = std::move(locs);
  return r;
}

RegexPtr Dot() {
  auto r = std::make_shared<Regex>();
  r->kind = Regex::Kind::kDot;
  return r;
}

RegexPtr Union(RegexPtr a, RegexPtr b) {
  if (a->kind == Regex::Kind::kLoc && b->kind == Regex::Kind::kLoc) {
    std::vector<Label> locs = a->locs;
    locs.insert(locs.end(), b->locs.begin(), b->locs.end());
    return Loc(std::move(locs));
  }
  auto r = std::make_shared<Regex>();
  r->kind = Regex::Kind::kUnion;
  r->a = std::move(a);
  r->b = std::move(b);
  return r;
}

RegexPtr Concat(RegexPtr a, RegexPtr b) {
  auto r = std::make_shared<Regex>();
  r->kind = Regex::Kind::kConcat;
  r->a = std::move(a);
  r->b = std::move(b);
  return r;
}

RegexPtr Star(RegexPtr a) {
  auto r = std::make_shared<Regex>();
  r->kind = Regex::Kind::kStar;
  r->a = std::move(a);
  return r;
}

SpecPtr Atomic(RegexPtr zone, Modifier mod) {
  auto s = std::make_shared<Spec>();
  s->zone = std::move(zone);
  s->mod = std::move(mod);
  return s;
}

SpecPtr ConcatSpec(SpecPtr a, SpecPtr b) {
  auto s = std::make_shared<Spec>();
  s->kind = Spec::Kind::kConcat;
  s->a = std::move(a);
  s->b = std::move(b);
  return s;
}

SpecPtr Else(SpecPtr a, SpecPtr b) {
  auto s = std::make_shared<Spec>();
  s->kind = Spec::Kind::kElse;
  s->a = std::move(a);
  s->b = std::move(b);
  return s;
}

SpecPtr Named(SpecPtr s, std::string name) {
  auto out = std::make_shared<Spec>(*s);
  out->name = std::move(name);
  return out;
}

namespace {

bool SamePtr(const RegexPtr& a, const RegexPtr& b) {
  if (!a || !b) return !a && !b;
  return Same(*a, *b);
}

bool SamePtr(const SpecPtr& a, const SpecPtr& b) {
  if (!a || !b) return !a && !b;
  return Same(*a, *b);
}

}  // namespace

bool Same(const Regex& a, const Regex& b) {
  return a.kind == b.kind && a.locs == b.locs && SamePtr(a.a, b.a) &&
         SamePtr(a.b, b.b);
}

bool Same(const Modifier& a, const Modifier& b) {
  return a.kind == b.kind && SamePtr(a.r1, b.r1) && SamePtr(a.r2, b.r2);
}

bool Same(const Spec& a, const Spec& b) {
  if (a.kind != b.kind || a.name != b.name) return false;
  if (a.kind == Spec::Kind::kAtomic) {
    return Same(*a.zone, *b.zone) && Same(a.mod, b.mod);
  }
  return Same(*a.a, *b.a) && Same(*a.b, *b.b);
}

bool Same(const Program& a, const Program& b) {
  if (a.guarded.size() != b.guarded.size()) return false;
  for (size_t i = 0; i < a.guarded.size(); ++i) {
    const GuardedSpec& x = a.guarded[i];
    const GuardedSpec& y = b.guarded[i];
    if (x.name != y.name || !SamePredicate(*x.pred, *y.pred) ||
        !Same(*x.spec, *y.spec)) {
      return false;
    }
  }
  return SamePtr(a.fallback, b.fallback);
}

namespace {

std::string Quote(const std::string& name) {
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string LocName(Label l, const SymbolTable& symbols) {
  return l == kDrop ? "drop" : Quote(std::string(symbols.Name(l)));
}

bool IsAtom(const Regex& r) {
  return r.kind == Regex::Kind::kDot || r.kind == Regex::Kind::kUnion ||
         (r.kind == Regex::Kind::kLoc && r.locs.size() == 1);
}

std::string SpecExpr(const Spec& s, const SymbolTable& symbols, bool top,
                     bool use_names);

void BlockItems(const Spec& s, const SymbolTable& symbols, bool top,
                bool use_names, std::vector<std::string>& items) {
  bool opaque = use_names && !top && !s.name.empty();
  if (s.kind == Spec::Kind::kConcat && !opaque) {
    BlockItems(*s.a, symbols, false, use_names, items);
    items.push_back(SpecExpr(*s.b, symbols, false, use_names));
    return;
  }
  items.push_back(SpecExpr(s, symbols, top, use_names));
}

std::string SpecExpr(const Spec& s, const SymbolTable& symbols, bool top,
                     bool use_names) {
  if (use_names && !top && !s.name.empty()) return s.name;
  switch (s.kind) {
    case Spec::Kind::kAtomic:
      return absl::StrCat(Print(*s.zone, symbols), " : ",
                          Print(s.mod, symbols));
    case Spec::Kind::kConcat: {
      std::vector<std::string> items;
      BlockItems(s, symbols, true, use_names, items);
      std::string out = "{ ";
      for (const std::string& item : items) absl::StrAppend(&out, item, "; ");
      return out + "}";
    }
    case Spec::Kind::kElse: {
      std::string rhs = SpecExpr(*s.b, symbols, false, use_names);
      bool wrap = s.b->kind == Spec::Kind::kElse &&
                  !(use_names && !s.b->name.empty());
      return absl::StrCat(SpecExpr(*s.a, symbols, false, use_names), " else ",
                          wrap ? absl::StrCat("(", rhs, ")") : rhs);
    }
  }
  return "";
}

}  // namespace

std::string Print(const Regex& r, const SymbolTable& symbols) {
  switch (r.kind) {
    case Regex::Kind::kLoc: {
      if (r.locs.size() == 1) return LocName(r.locs[0], symbols);
      std::string out = "(";
      for (size_t i = 0; i < r.locs.size(); ++i) {
        absl::StrAppend(&out, i ? "|" : "", LocName(r.locs[i], symbols));
      }
      return out + ")";
    }
    case Regex::Kind::kDot:
      return ".";
    case Regex::Kind::kUnion:
      return absl::StrCat("(", Print(*r.a, symbols), "|", Print(*r.b, symbols),
                          ")");
    case Regex::Kind::kConcat: {
      std::string rhs = Print(*r.b, symbols);
      if (r.b->kind == Regex::Kind::kConcat) rhs = absl::StrCat("(", rhs, ")");
      return absl::StrCat(Print(*r.a, symbols), " ", rhs);
    }
    case Regex::Kind::kStar: {
      std::string inner = Print(*r.a, symbols);
      if (!IsAtom(*r.a) && r.a->kind != Regex::Kind::kStar &&
          r.a->kind != Regex::Kind::kLoc) {
        inner = absl::StrCat("(", inner, ")");
      }
      return inner + "*";
    }
  }
  return "";
}

std::string Print(const Modifier& m, const SymbolTable& symbols) {
  switch (m.kind) {
    case Modifier::Kind::kPreserve:
      return "preserve";
    case Modifier::Kind::kDrop:
      return "drop";
    case Modifier::Kind::kAdd:
      return absl::StrCat("add(", Print(*m.r1, symbols), ")");
    case Modifier::Kind::kRemove:
      return absl::StrCat("remove(", Print(*m.r1, symbols), ")");
    case Modifier::Kind::kAny:
      return absl::StrCat("any(", Print(*m.r1, symbols), ")");
    case Modifier::Kind::kReplace:
      return absl::StrCat("replace(", Print(*m.r1, symbols), ", ",
                          Print(*m.r2, symbols), ")");
  }
  return "";
}

std::string Print(const Spec& s, const SymbolTable& symbols) {
  return SpecExpr(s, symbols, true, false);
}

std::string Print(const Program& p, const SymbolTable& symbols) {
  std::string out;
  std::set<std::string> emitted;
  auto define = [&](const Spec& s, auto& self) -> void {
    if (!s.name.empty() && emitted.contains(s.name)) return;
    if (s.kind != Spec::Kind::kAtomic) {
      self(*s.a, self);
      self(*s.b, self);
    }
    if (!s.name.empty()) {
      absl::StrAppend(&out, "spec ", s.name, " := ",
                      SpecExpr(s, symbols, true, true), "\n");
      emitted.insert(s.name);
    }
  };
  for (const GuardedSpec& g : p.guarded) {
    define(*g.spec, define);
    absl::StrAppend(&out, "pspec ", g.name, " := ", PrintPredicate(*g.pred),
                    " -> ", SpecExpr(*g.spec, symbols, false, true), "\n");
  }
  if (p.fallback != nullptr) {
    const Spec& s = *p.fallback;
    if (s.kind != Spec::Kind::kAtomic) {
      define(*s.a, define);
      define(*s.b, define);
    }
    absl::StrAppend(&out, "spec ", s.name.empty() ? "main" : s.name, " := ",
                    SpecExpr(s, symbols, true, true), "\n");
  }
  return out;
}

}  // namespace rela::surface
