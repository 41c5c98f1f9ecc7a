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

#include "rela/surface_parser.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace rela {
namespace {

using surface::RegexPtr;
using surface::SpecPtr;

struct ParseError {
  size_t pos;
  std::string message;
  // Semantic errors are never retried by backtracking.
  bool fatal;
};

bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool IsReserved(std::string_view word) {
  return word == "regex" || word == "spec" || word == "pspec" ||
         word == "else";
}

class Cursor {
 public:
  explicit Cursor(std::string_view src) : src_(src) {}

  size_t pos() const { return pos_; }
  void set_pos(size_t p) { pos_ = p; }
  std::string_view src() const { return src_; }

  void Skip() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool AtEnd() {
    Skip();
    return pos_ >= src_.size();
  }

  char PeekChar() {
    Skip();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  bool Peek(std::string_view token) {
    Skip();
    return src_.substr(pos_, token.size()) == token;
  }

  bool Accept(std::string_view token) {
    if (!Peek(token)) return false;
    pos_ += token.size();
    return true;
  }

  void Expect(std::string_view token) {
    if (!Accept(token)) {
      Fail(absl::StrCat("expected '", std::string(token), "'"));
    }
  }

  std::string PeekWord() {
    Skip();
    size_t end = pos_;
    while (end < src_.size() && IsIdentChar(src_[end])) ++end;
    return std::string(src_.substr(pos_, end - pos_));
  }

  bool AcceptKeyword(std::string_view word) {
    if (PeekWord() != word) return false;
    pos_ += word.size();
    return true;
  }

  std::string Ident(const char* what) {
    std::string word = PeekWord();
    if (word.empty()) Fail(absl::StrCat("expected ", what));
    pos_ += word.size();
    return word;
  }

  std::string String() {
    Skip();
    if (pos_ >= src_.size() || src_[pos_] != '"') Fail("expected string");
    size_t start = pos_++;
    std::string out;
    while (pos_ < src_.size() && src_[pos_] != '"') {
      if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) ++pos_;
      out += src_[pos_++];
    }
    if (pos_ >= src_.size()) {
      pos_ = start;
      Fail("unterminated string");
    }
    ++pos_;
    return out;
  }

  [[noreturn]] void Fail(std::string message) const {
    throw ParseError{pos_, std::move(message), false};
  }
  [[noreturn]] void Fatal(size_t at, std::string message) const {
    throw ParseError{at, std::move(message), true};
  }

 private:
  std::string_view src_;
  size_t pos_ = 0;
};

std::string Located(std::string_view src, const ParseError& e) {
  size_t line = 1, col = 1;
  for (size_t i = 0; i < e.pos && i < src.size(); ++i) {
    if (src[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return absl::StrCat(line, ":", col, ": ", e.message);
}

// Attribute filters inside where(); evaluated to one flag per record.
class FilterParser {
 public:
  FilterParser(Cursor& in, const LocationDb& db) : in_(in), db_(db) {}

  std::vector<bool> Parse() {
    std::vector<bool> out = And();
    while (in_.Accept("||") || in_.AcceptKeyword("or")) {
      std::vector<bool> rhs = And();
      for (size_t i = 0; i < out.size(); ++i) out[i] = out[i] || rhs[i];
    }
    return out;
  }

 private:
  std::vector<bool> And() {
    std::vector<bool> out = Atom();
    while (in_.Accept("&&") || in_.AcceptKeyword("and")) {
      std::vector<bool> rhs = Atom();
      for (size_t i = 0; i < out.size(); ++i) out[i] = out[i] && rhs[i];
    }
    return out;
  }

  std::vector<bool> Atom() {
    if (in_.Accept("(")) {
      std::vector<bool> out = Parse();
      in_.Expect(")");
      return out;
    }
    in_.Skip();
    size_t at = in_.pos();
    std::string key = in_.Ident("attribute name");
    if (!db_.HasAttribute(key)) {
      in_.Fatal(at, absl::StrCat("unknown attribute '", key, "'"));
    }
    bool equal;
    if (in_.Accept("==")) {
      equal = true;
    } else if (in_.Accept("!=")) {
      equal = false;
    } else {
      in_.Fail("expected '==' or '!='");
    }
    std::string value =
        in_.PeekChar() == '"' ? in_.String() : in_.Ident("attribute value");
    std::vector<bool> out;
    for (const LocationRecord& r : db_.records()) {
      auto it = r.attributes.find(key);
      bool match = it != r.attributes.end() && it->second == value;
      out.push_back(match == equal);
    }
    return out;
  }

  Cursor& in_;
  const LocationDb& db_;
};

class Parser {
 public:
  Parser(std::string_view src, const LocationDb& db, Granularity g,
         const SymbolTable& symbols)
      : in_(src), db_(db), g_(g), symbols_(symbols) {
    for (const LocationRecord& r : db.records()) {
      Label l = *symbols.Find(r.At(g));
      for (const std::string* key : {&r.name, &r.device, &r.group}) {
        loc_index_[*key].push_back(l);
      }
    }
  }

  surface::Program Program() {
    surface::Program program;
    std::optional<std::string> last_spec;
    while (!in_.AtEnd()) {
      if (in_.AcceptKeyword("regex")) {
        std::string name = DefName();
        in_.Expect(":=");
        regex_defs_[name] = Regex();
      } else if (in_.AcceptKeyword("spec")) {
        std::string name = DefName();
        in_.Expect(":=");
        spec_defs_[name] = surface::Named(SpecExpr(), name);
        last_spec = name;
      } else if (in_.AcceptKeyword("pspec")) {
        std::string name = DefName();
        in_.Expect(":=");
        PredicatePtr pred = Predicate();
        in_.Expect("->");
        program.guarded.push_back({name, pred, SpecExpr()});
      } else {
        in_.Fail("expected 'regex', 'spec' or 'pspec'");
      }
      while (in_.Accept(";")) {
      }
    }
    if (last_spec.has_value() && !referenced_.contains(*last_spec)) {
      program.fallback = spec_defs_[*last_spec];
    }
    return program;
  }

  std::vector<bool> Filter() { return FilterParser(in_, db_).Parse(); }
  Cursor& cursor() { return in_; }

 private:
  std::string DefName() {
    in_.Skip();
    size_t at = in_.pos();
    std::string name = in_.Ident("a name");
    if (IsReserved(name)) in_.Fatal(at, absl::StrCat("'", name, "' is reserved"));
    if (regex_defs_.contains(name) || spec_defs_.contains(name) ||
        def_names_.contains(name)) {
      in_.Fatal(at, absl::StrCat("'", name, "' is already defined"));
    }
    def_names_.insert(name);
    return name;
  }

  // Specs.

  SpecPtr SpecExpr() {
    SpecPtr out = SpecSeq();
    while (in_.AcceptKeyword("else")) out = surface::Else(out, SpecSeq());
    return out;
  }

  bool StartsSpecTerm() {
    char c = in_.PeekChar();
    if (c == '{' || c == '(' || c == '.' || c == '"') return true;
    std::string word = in_.PeekWord();
    return !word.empty() && !IsReserved(word);
  }

  SpecPtr SpecSeq() {
    SpecPtr out = SpecTerm();
    while (StartsSpecTerm()) out = surface::ConcatSpec(out, SpecTerm());
    return out;
  }

  SpecPtr SpecTerm() {
    if (in_.Accept("{")) {
      if (in_.Peek("}")) in_.Fail("empty spec block");
      SpecPtr out = SpecExpr();
      while (in_.Accept(";")) {
        if (in_.Peek("}")) break;
        out = surface::ConcatSpec(out, SpecExpr());
      }
      in_.Expect("}");
      return out;
    }
    in_.Skip();
    size_t start = in_.pos();
    try {
      RegexPtr zone = Regex();
      in_.Expect(":");
      return surface::Atomic(zone, Modifier());
    } catch (const ParseError& atomic) {
      if (atomic.fatal) throw;
      in_.set_pos(start);
      try {
        if (in_.Accept("(")) {
          SpecPtr out = SpecExpr();
          in_.Expect(")");
          return out;
        }
        std::string word = in_.PeekWord();
        auto it = spec_defs_.find(word);
        if (word.empty() || it == spec_defs_.end()) throw atomic;
        in_.Ident("a spec name");
        referenced_.insert(word);
        return it->second;
      } catch (const ParseError& other) {
        if (other.fatal || other.pos > atomic.pos) throw;
        throw atomic;
      }
    }
  }

  surface::Modifier Modifier() {
    in_.Skip();
    size_t at = in_.pos();
    std::string word = in_.PeekWord();
    surface::Modifier m;
    if (word == "preserve") {
      m.kind = surface::Modifier::Kind::kPreserve;
    } else if (word == "drop") {
      m.kind = surface::Modifier::Kind::kDrop;
    } else if (word == "add" || word == "remove" || word == "any") {
      m.kind = word == "add"      ? surface::Modifier::Kind::kAdd
               : word == "remove" ? surface::Modifier::Kind::kRemove
                                  : surface::Modifier::Kind::kAny;
    } else if (word == "replace") {
      m.kind = surface::Modifier::Kind::kReplace;
    } else {
      in_.Fail(
          "expected a modifier (preserve, add, remove, replace, drop, any)");
    }
    in_.set_pos(at + word.size());
    if (m.kind == surface::Modifier::Kind::kPreserve ||
        m.kind == surface::Modifier::Kind::kDrop) {
      return m;
    }
    in_.Expect("(");
    in_.Skip();
    size_t arg_start = in_.pos();
    m.r1 = Regex();
    size_t arg_end = in_.pos();
    if (m.kind == surface::Modifier::Kind::kReplace) {
      in_.Expect(",");
      m.r2 = Regex();
    }
    in_.Expect(")");
    if (m.kind == surface::Modifier::Kind::kAny) {
      m.raw = std::string(in_.src().substr(arg_start, arg_end - arg_start));
    }
    return m;
  }

  // Regexes.

  RegexPtr Regex() {
    RegexPtr out = Cat();
    while (in_.Accept("|")) out = surface::Union(out, Cat());
    return out;
  }

  // True if the next token can continue a concatenation.
  bool StartsAtom() {
    char c = in_.PeekChar();
    if (c == '(' || c == '.' || c == '"') return true;
    std::string word = in_.PeekWord();
    if (word.empty() || IsReserved(word)) return false;
    if (word == "where" || word == "drop") return true;
    return Lookup(word).has_value();
  }

  RegexPtr Cat() {
    RegexPtr out = Post();
    while (true) {
      if (in_.Peek("->")) break;
      if (in_.Accept("-")) {
        out = surface::Concat(out, Post());
      } else if (StartsAtom()) {
        out = surface::Concat(out, Post());
      } else {
        break;
      }
    }
    return out;
  }

  RegexPtr Post() {
    RegexPtr out = Atom();
    while (in_.Accept("*")) out = surface::Star(out);
    return out;
  }

  RegexPtr Atom() {
    if (in_.Accept("(")) {
      RegexPtr out = Regex();
      in_.Expect(")");
      return out;
    }
    if (in_.Accept(".")) return surface::Dot();
    in_.Skip();
    size_t at = in_.pos();
    if (in_.PeekChar() == '"') {
      std::string name = in_.String();
      std::optional<Label> l = symbols_.Find(name);
      if (!l.has_value() || symbols_.Kind(*l) != SymbolKind::kLocation) {
        in_.Fatal(at, absl::StrCat("no location \"", name, "\" at ",
                                   GranularityName(g_), " granularity"));
      }
      return surface::Loc({*l});
    }
    std::string word = in_.PeekWord();
    if (word.empty()) in_.Fail("expected a location, '.', '(' or where()");
    if (IsReserved(word)) in_.Fail(absl::StrCat("unexpected '", word, "'"));
    in_.set_pos(at + word.size());
    if (word == "drop") return surface::Loc({kDrop});
    if (word == "where") {
      in_.Expect("(");
      std::vector<bool> hits = Filter();
      in_.Expect(")");
      std::vector<Label> locs;
      for (size_t i = 0; i < hits.size(); ++i) {
        if (hits[i]) locs.push_back(*symbols_.Find(db_.records()[i].At(g_)));
      }
      if (locs.empty()) in_.Fatal(at, "where() matches no location");
      return surface::Loc(std::move(locs));
    }
    std::optional<RegexPtr> r = Lookup(word);
    if (!r.has_value()) {
      in_.set_pos(at);
      in_.Fail(absl::StrCat("undefined name '", word, "'"));
    }
    return *r;
  }

  std::optional<RegexPtr> Direct(std::string_view word) const {
    std::string key(word);
    if (auto it = regex_defs_.find(key); it != regex_defs_.end()) {
      return it->second;
    }
    if (auto it = loc_index_.find(key); it != loc_index_.end()) {
      return surface::Loc(it->second);
    }
    return std::nullopt;
  }

  // Direct lookup, else the unique split of `word` into known names.
  std::optional<RegexPtr> Lookup(const std::string& word) {
    if (auto r = Direct(word)) return r;
    if (auto it = split_cache_.find(word); it != split_cache_.end()) {
      return it->second;
    }
    size_t n = word.size();
    // ways[i]: number of splits of word[i..] (capped at 2); next[i]: the end
    // of the first piece of one such split.
    std::vector<int> ways(n + 1, 0);
    std::vector<size_t> next(n + 1, 0);
    ways[n] = 1;
    for (size_t i = n; i-- > 0;) {
      for (size_t j = i + 1; j <= n; ++j) {
        if (ways[j] == 0 || !Direct(word.substr(i, j - i))) continue;
        if (ways[i] == 0) next[i] = j;
        ways[i] = std::min(2, ways[i] + ways[j]);
      }
    }
    std::optional<RegexPtr> out;
    if (ways[0] > 1) {
      in_.Fatal(in_.pos(),
                absl::StrCat("name '", word, "' splits ambiguously"));
    }
    if (ways[0] == 1) {
      for (size_t i = 0; i < n; i = next[i]) {
        RegexPtr piece = *Direct(word.substr(i, next[i] - i));
        out = out ? surface::Concat(*out, piece) : piece;
      }
    }
    split_cache_[word] = out;
    return out;
  }

  // Predicates.

  PredicatePtr Predicate() {
    PredicatePtr out = PredAnd();
    while (in_.Accept("||") || in_.AcceptKeyword("or")) {
      out = PrefixPredicate::Or(out, PredAnd());
    }
    return out;
  }

  PredicatePtr PredAnd() {
    PredicatePtr out = PredNot();
    while (in_.Accept("&&") || in_.AcceptKeyword("and")) {
      out = PrefixPredicate::And(out, PredNot());
    }
    return out;
  }

  PredicatePtr PredNot() {
    if (in_.AcceptKeyword("not") || (!in_.Peek("!=") && in_.Accept("!"))) {
      return PrefixPredicate::Not(PredNot());
    }
    return PredAtom();
  }

  PredicatePtr PredAtom() {
    if (in_.Accept("(")) {
      PredicatePtr out = Predicate();
      in_.Expect(")");
      return out;
    }
    if (in_.AcceptKeyword("true")) return PrefixPredicate::True();
    PrefixPredicate::Field field;
    if (in_.AcceptKeyword("dstPrefix")) {
      field = PrefixPredicate::Field::kDst;
    } else if (in_.AcceptKeyword("srcPrefix")) {
      field = PrefixPredicate::Field::kSrc;
    } else {
      in_.Fail("expected dstPrefix, srcPrefix, true, not or '('");
    }
    if (in_.Accept("==")) {
      return PrefixPredicate::Atom(field, PrefixPredicate::Op::kEq, {Cidr()});
    }
    if (in_.Accept("!=")) {
      return PrefixPredicate::Atom(field, PrefixPredicate::Op::kNe, {Cidr()});
    }
    if (in_.AcceptKeyword("in")) {
      in_.Expect("{");
      std::vector<IpPrefix> set = {Cidr()};
      while (in_.Accept(",")) set.push_back(Cidr());
      in_.Expect("}");
      return PrefixPredicate::Atom(field, PrefixPredicate::Op::kIn,
                                   std::move(set));
    }
    in_.Fail("expected '==', '!=' or 'in'");
  }

  IpPrefix Cidr() {
    in_.Skip();
    size_t start = in_.pos();
    size_t end = start;
    std::string_view src = in_.src();
    while (end < src.size() &&
           (std::isxdigit(static_cast<unsigned char>(src[end])) ||
            src[end] == '.' || src[end] == ':' || src[end] == '/')) {
      ++end;
    }
    if (end == start) in_.Fail("expected a prefix");
    absl::StatusOr<IpPrefix> p = IpPrefix::Parse(src.substr(start, end - start));
    if (!p.ok()) in_.Fatal(start, std::string(p.status().message()));
    in_.set_pos(end);
    return *p;
  }

  Cursor in_;
  const LocationDb& db_;
  Granularity g_;
  const SymbolTable& symbols_;
  std::map<std::string, std::vector<Label>> loc_index_;
  std::map<std::string, RegexPtr> regex_defs_;
  std::map<std::string, SpecPtr> spec_defs_;
  std::set<std::string> def_names_;
  std::set<std::string> referenced_;
  std::map<std::string, std::optional<RegexPtr>> split_cache_;
};

}  // namespace

absl::StatusOr<surface::Program> ParseProgram(std::string_view source,
                                              const LocationDb& db,
                                              Granularity granularity,
                                              const SymbolTable& symbols) {
  Parser parser(source, db, granularity, symbols);
  try {
    return parser.Program();
  } catch (const ParseError& e) {
    return absl::InvalidArgumentError(Located(source, e));
  }
}

absl::StatusOr<std::vector<std::string>> ResolveWhere(std::string_view filter,
                                                      const LocationDb& db,
                                                      Granularity granularity) {
  Cursor in(filter);
  try {
    std::vector<bool> hits = FilterParser(in, db).Parse();
    if (!in.AtEnd()) in.Fail("unexpected text after filter");
    std::set<std::string> names;
    for (size_t i = 0; i < hits.size(); ++i) {
      if (hits[i]) names.insert(db.records()[i].At(granularity));
    }
    if (names.empty()) {
      return absl::InvalidArgumentError("where() matches no location");
    }
    return std::vector<std::string>(names.begin(), names.end());
  } catch (const ParseError& e) {
    return absl::InvalidArgumentError(Located(filter, e));
  }
}

}  // namespace rela
