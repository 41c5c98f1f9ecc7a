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

#include "rela/rir_notation.h"

#include <cctype>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace rela::rir {

namespace {

constexpr char kUnion[] = "|";
constexpr char kConcat[] = "·";
constexpr char kIntersect[] = "∩";
constexpr char kComplement[] = "¬";
constexpr char kImage[] = "▷";
constexpr char kCross[] = "×";
constexpr char kCompose[] = "∘";
constexpr char kSubset[] = "⊆";
constexpr char kAnd[] = "∧";
constexpr char kOr[] = "∨";

bool IsWordChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#';
}

bool IsReserved(std::string_view w) {
  return w == "0" || w == "1" || w == "PreState" || w == "PostState" ||
         w == "I";
}

std::string SymbolText(Label a, const SymbolTable& symbols) {
  const std::string& name = symbols.Name(a);
  bool plain = !name.empty() && !IsReserved(name);
  for (char c : name) plain = plain && IsWordChar(c);
  if (plain) return name;
  std::string out = "'";
  for (char c : name) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  return out + "'";
}

std::string Binary(const std::string& l, const char* op,
                   const std::string& r) {
  return absl::StrCat("(", l, " ", op, " ", r, ")");
}

}  // namespace

std::string Print(const PathSet& p, const SymbolTable& symbols) {
  using Kind = PathSet::Kind;
  switch (p.kind) {
    case Kind::kSym:
      return SymbolText(p.symbol, symbols);
    case Kind::kZero:
      return "0";
    case Kind::kOne:
      return "1";
    case Kind::kPreState:
      return "PreState";
    case Kind::kPostState:
      return "PostState";
    case Kind::kUnion:
      return Binary(Print(*p.a, symbols), kUnion, Print(*p.b, symbols));
    case Kind::kConcat:
      return Binary(Print(*p.a, symbols), kConcat, Print(*p.b, symbols));
    case Kind::kIntersect:
      return Binary(Print(*p.a, symbols), kIntersect, Print(*p.b, symbols));
    case Kind::kStar:
      // A bare "¬x*" reads as ¬(x*), so a starred complement is grouped.
      if (p.a->kind == Kind::kComplement) {
        return absl::StrCat("(", Print(*p.a, symbols), ")*");
      }
      return Print(*p.a, symbols) + "*";
    case Kind::kComplement:
      return absl::StrCat(kComplement, Print(*p.a, symbols));
    case Kind::kImage:
      return Binary(Print(*p.a, symbols), kImage, Print(*p.rel, symbols));
  }
  return "";
}

std::string Print(const Rel& r, const SymbolTable& symbols) {
  using Kind = Rel::Kind;
  switch (r.kind) {
    case Kind::kCross:
      return Binary(Print(*r.a, symbols), kCross, Print(*r.b, symbols));
    case Kind::kIdentity:
      return absl::StrCat("I(", Print(*r.a, symbols), ")");
    case Kind::kZero:
      return "0";
    case Kind::kOne:
      return "1";
    case Kind::kUnion:
      return Binary(Print(*r.x, symbols), kUnion, Print(*r.y, symbols));
    case Kind::kConcat:
      return Binary(Print(*r.x, symbols), kConcat, Print(*r.y, symbols));
    case Kind::kStar:
      return Print(*r.x, symbols) + "*";
    case Kind::kCompose:
      return Binary(Print(*r.x, symbols), kCompose, Print(*r.y, symbols));
  }
  return "";
}

std::string Print(const Spec& s, const SymbolTable& symbols) {
  using Kind = Spec::Kind;
  switch (s.kind) {
    case Kind::kEqual:
      return absl::StrCat("[", Print(*s.a, symbols), " = ",
                          Print(*s.b, symbols), "]");
    case Kind::kSubset:
      return absl::StrCat("[", Print(*s.a, symbols), " ", kSubset, " ",
                          Print(*s.b, symbols), "]");
    case Kind::kAnd:
      return Binary(Print(*s.x, symbols), kAnd, Print(*s.y, symbols));
    case Kind::kOr:
      return Binary(Print(*s.x, symbols), kOr, Print(*s.y, symbols));
    case Kind::kNot:
      return absl::StrCat(kComplement, Print(*s.x, symbols));
  }
  return "";
}

namespace {

// Recursive-descent parser. Relations and path sets share the "(" and the
// constants 0 and 1, so relation parsing backtracks to a path set when it
// finds "×".
class Parser {
 public:
  Parser(std::string_view text, const SymbolTable& symbols)
      : text_(text), symbols_(symbols) {}

  template <typename T>
  absl::StatusOr<T> Finish(T value) {
    SkipSpace();
    if (value == nullptr || pos_ != text_.size()) {
      size_t at = value == nullptr ? error_pos_ : pos_;
      std::string what = value == nullptr ? error_ : "unexpected trailing text";
      return absl::InvalidArgumentError(
          absl::StrCat("RIR notation, offset ", at, ": ", what));
    }
    return value;
  }

  PathSetPtr PathSetExpr() {
    PathSetPtr p = PathSetAtom();
    while (p != nullptr && Eat("*")) p = Star(p);
    return p;
  }

  RelPtr RelExpr() {
    RelPtr r = RelAtom();
    while (r != nullptr && Eat("*")) r = Star(r);
    return r;
  }

  SpecPtr SpecExpr() {
    SkipSpace();
    if (Eat(kComplement)) {
      SpecPtr x = SpecExpr();
      return x ? Not(x) : nullptr;
    }
    if (Eat("[")) {
      PathSetPtr a = PathSetExpr();
      if (a == nullptr) return nullptr;
      bool subset = false;
      if (Eat(kSubset)) {
        subset = true;
      } else if (!Eat("=")) {
        return Fail<Spec>("expected '=' or '⊆'");
      }
      PathSetPtr b = PathSetExpr();
      if (b == nullptr) return nullptr;
      if (!Eat("]")) return Fail<Spec>("expected ']'");
      return subset ? Subset(a, b) : Equal(a, b);
    }
    if (Eat("(")) {
      SpecPtr x = SpecExpr();
      if (x == nullptr) return nullptr;
      bool conj = false;
      if (Eat(kAnd)) {
        conj = true;
      } else if (!Eat(kOr)) {
        return Fail<Spec>("expected '∧' or '∨'");
      }
      SpecPtr y = SpecExpr();
      if (y == nullptr) return nullptr;
      if (!Eat(")")) return Fail<Spec>("expected ')'");
      return conj ? And(x, y) : Or(x, y);
    }
    return Fail<Spec>("expected a spec");
  }

 private:
  PathSetPtr PathSetAtom() {
    SkipSpace();
    if (Eat(kComplement)) {
      PathSetPtr a = PathSetExpr();
      return a ? Complement(a) : nullptr;
    }
    if (Eat("(")) {
      PathSetPtr a = PathSetExpr();
      if (a == nullptr) return nullptr;
      if (Eat(")")) return a;
      PathSetPtr result;
      if (Eat(kImage)) {
        RelPtr r = RelExpr();
        if (r == nullptr) return nullptr;
        result = Image(a, r);
      } else if (Eat(kUnion)) {
        PathSetPtr b = PathSetExpr();
        if (b == nullptr) return nullptr;
        result = Union(a, b);
      } else if (Eat(kConcat)) {
        PathSetPtr b = PathSetExpr();
        if (b == nullptr) return nullptr;
        result = Concat(a, b);
      } else if (Eat(kIntersect)) {
        PathSetPtr b = PathSetExpr();
        if (b == nullptr) return nullptr;
        result = Intersect(a, b);
      } else {
        return Fail<PathSet>("expected a path-set operator");
      }
      if (!Eat(")")) return Fail<PathSet>("expected ')'");
      return result;
    }
    if (PeekChar() == '\'') {
      std::string name;
      if (!Quoted(name)) return nullptr;
      return SymbolNamed(name);
    }
    std::string_view word = Word();
    if (word.empty()) return Fail<PathSet>("expected a path set");
    if (word == "0") return Zero();
    if (word == "1") return One();
    if (word == "PreState") return PreState();
    if (word == "PostState") return PostState();
    return SymbolNamed(word);
  }

  RelPtr RelAtom() {
    SkipSpace();
    size_t start = pos_;
    if (Eat("(")) {
      RelPtr x = RelExpr();
      if (x != nullptr) {
        RelPtr result;
        if (Eat(kUnion)) {
          RelPtr y = RelExpr();
          if (y == nullptr) return nullptr;
          result = Union(x, y);
        } else if (Eat(kConcat)) {
          RelPtr y = RelExpr();
          if (y == nullptr) return nullptr;
          result = Concat(x, y);
        } else if (Eat(kCompose)) {
          RelPtr y = RelExpr();
          if (y == nullptr) return nullptr;
          result = Compose(x, y);
        }
        if (result != nullptr) {
          if (!Eat(")")) return Fail<Rel>("expected ')'");
          return result;
        }
      }
      // Not a binary relation: must be a cross product of path sets.
      pos_ = start + 1;
      PathSetPtr a = PathSetExpr();
      if (a == nullptr) return nullptr;
      if (!Eat(kCross)) return Fail<Rel>("expected a relation operator");
      PathSetPtr b = PathSetExpr();
      if (b == nullptr) return nullptr;
      if (!Eat(")")) return Fail<Rel>("expected ')'");
      return Cross(a, b);
    }
    std::string_view word = Word();
    if (word == "0") return ZeroRel();
    if (word == "1") return OneRel();
    if (word == "I" && Eat("(")) {
      PathSetPtr a = PathSetExpr();
      if (a == nullptr) return nullptr;
      if (!Eat(")")) return Fail<Rel>("expected ')'");
      return Identity(a);
    }
    pos_ = start;
    return Fail<Rel>("expected a relation");
  }

  PathSetPtr SymbolNamed(std::string_view name) {
    std::optional<Label> id = symbols_.Find(name);
    if (!id.has_value()) {
      return Fail<PathSet>(absl::StrCat("unknown symbol '", std::string(name), "'"));
    }
    return Sym(*id);
  }

  bool Quoted(std::string& out) {
    ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '\'') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      out += text_[pos_++];
    }
    if (pos_ >= text_.size()) {
      Fail<PathSet>("unterminated quoted symbol");
      return false;
    }
    ++pos_;
    return true;
  }

  std::string_view Word() {
    SkipSpace();
    size_t start = pos_;
    while (pos_ < text_.size() && IsWordChar(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  char PeekChar() {
    SkipSpace();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool Eat(std::string_view token) {
    SkipSpace();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  // Records the error furthest into the input, which is the useful one
  // after backtracking.
  template <typename T>
  std::shared_ptr<const T> Fail(std::string message) {
    if (error_.empty() || pos_ >= error_pos_) {
      error_ = std::move(message);
      error_pos_ = pos_;
    }
    return nullptr;
  }

  std::string_view text_;
  const SymbolTable& symbols_;
  size_t pos_ = 0;
  std::string error_;
  size_t error_pos_ = 0;
};

}  // namespace

absl::StatusOr<PathSetPtr> ParsePathSet(std::string_view text,
                                        const SymbolTable& symbols) {
  Parser parser(text, symbols);
  return parser.Finish(parser.PathSetExpr());
}

absl::StatusOr<RelPtr> ParseRel(std::string_view text,
                                const SymbolTable& symbols) {
  Parser parser(text, symbols);
  return parser.Finish(parser.RelExpr());
}

absl::StatusOr<SpecPtr> ParseSpec(std::string_view text,
                                  const SymbolTable& symbols) {
  Parser parser(text, symbols);
  return parser.Finish(parser.SpecExpr());
}

}  // namespace rela::rir
