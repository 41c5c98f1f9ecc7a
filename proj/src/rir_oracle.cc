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

#include "rela/rir_oracle.h"

#include <algorithm>
#include <cassert>
#include <map>
#include <utility>
#include <vector>

namespace rela::rir {

namespace {

class Oracle {
 public:
  Oracle(const OracleEnv& env, std::span<const Label> universe)
      : env_(env), universe_(universe.begin(), universe.end()) {
    std::sort(universe_.begin(), universe_.end());
  }

  void AddMarkers(const PathSetPtr& p) { Collect(*p); }
  void AddMarkers(const SpecPtr& s) {
    if (s->a) Collect(*s->a);
    if (s->b) Collect(*s->b);
    if (s->x) AddMarkers(s->x);
    if (s->y) AddMarkers(s->y);
  }

  const PathSetValue& Eval(const PathSet& p) {
    auto it = memo_.find(&p);
    if (it != memo_.end()) return it->second;
    PathSetValue value = Compute(p);
    return memo_.emplace(&p, std::move(value)).first->second;
  }

  bool Check(const Spec& s) {
    switch (s.kind) {
      case Spec::Kind::kEqual:
        return Eval(*s.a) == Eval(*s.b);
      case Spec::Kind::kSubset: {
        const PathSetValue& a = Eval(*s.a);
        const PathSetValue& b = Eval(*s.b);
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
      }
      case Spec::Kind::kAnd:
        return Check(*s.x) && Check(*s.y);
      case Spec::Kind::kOr:
        return Check(*s.x) || Check(*s.y);
      case Spec::Kind::kNot:
        return !Check(*s.x);
    }
    return false;
  }

 private:
  static constexpr int kCap = kOracleWorkLength;

  void Collect(const PathSet& p) {
    if (p.kind == PathSet::Kind::kSym &&
        !std::binary_search(universe_.begin(), universe_.end(), p.symbol)) {
      extra_.insert(p.symbol);
    }
    if (p.a) Collect(*p.a);
    if (p.b) Collect(*p.b);
    if (p.rel) Collect(*p.rel);
  }
  void Collect(const Rel& r) {
    if (r.a) Collect(*r.a);
    if (r.b) Collect(*r.b);
    if (r.x) Collect(*r.x);
    if (r.y) Collect(*r.y);
  }

  // Strings over `symbols` up to kCap, shortest first.
  static std::vector<Path> Strings(const std::vector<Label>& symbols) {
    std::vector<Path> out = {{}};
    size_t begin = 0;
    for (int len = 1; len <= kCap; ++len) {
      size_t end = out.size();
      for (size_t i = begin; i < end; ++i) {
        for (Label a : symbols) {
          Path p = out[i];
          p.push_back(a);
          out.push_back(std::move(p));
        }
      }
      begin = end;
    }
    return out;
  }

  const std::vector<Path>& UniverseStrings() {
    if (universe_strings_.empty()) universe_strings_ = Strings(universe_);
    return universe_strings_;
  }

  const std::vector<Path>& AllStrings() {
    if (all_strings_.empty()) {
      std::vector<Label> symbols = universe_;
      symbols.insert(symbols.end(), extra_.begin(), extra_.end());
      all_strings_ = Strings(symbols);
    }
    return all_strings_;
  }

  static PathSetValue Bounded(const PathSetValue& x) {
    PathSetValue out;
    for (const Path& p : x) {
      if (static_cast<int>(p.size()) <= kCap) out.insert(p);
    }
    return out;
  }

  PathSetValue ConcatSets(const PathSetValue& a, const PathSetValue& b) {
    PathSetValue out;
    if (a.empty() || b.empty()) return out;
    if (a.size() * b.size() <= AllStrings().size() * (kCap + 1)) {
      for (const Path& x : a) {
        for (const Path& y : b) {
          if (x.size() + y.size() > kCap) continue;
          Path s = x;
          s.insert(s.end(), y.begin(), y.end());
          out.insert(std::move(s));
        }
      }
      return out;
    }
    for (const Path& s : AllStrings()) {
      for (size_t i = 0; i <= s.size(); ++i) {
        if (a.count(Path(s.begin(), s.begin() + i)) &&
            b.count(Path(s.begin() + i, s.end()))) {
          out.insert(s);
          break;
        }
      }
    }
    return out;
  }

  PathSetValue StarSet(const PathSetValue& a) {
    PathSetValue out = {Path{}};
    std::vector<Path> frontier = {Path{}};
    while (!frontier.empty()) {
      std::vector<Path> next;
      for (const Path& s : frontier) {
        for (const Path& x : a) {
          if (x.empty() || s.size() + x.size() > kCap) continue;
          Path t = s;
          t.insert(t.end(), x.begin(), x.end());
          if (out.insert(t).second) next.push_back(std::move(t));
        }
      }
      frontier = std::move(next);
    }
    return out;
  }

  PathSetValue Compute(const PathSet& p) {
    using Kind = PathSet::Kind;
    switch (p.kind) {
      case Kind::kSym:
        return {Path{p.symbol}};
      case Kind::kZero:
        return {};
      case Kind::kOne:
        return {Path{}};
      case Kind::kPreState:
        return Bounded(env_.pre);
      case Kind::kPostState:
        return Bounded(env_.post);
      case Kind::kUnion: {
        PathSetValue out = Eval(*p.a);
        const PathSetValue& b = Eval(*p.b);
        out.insert(b.begin(), b.end());
        return out;
      }
      case Kind::kIntersect: {
        const PathSetValue& a = Eval(*p.a);
        const PathSetValue& b = Eval(*p.b);
        PathSetValue out;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                              std::inserter(out, out.end()));
        return out;
      }
      case Kind::kComplement: {
        const PathSetValue& a = Eval(*p.a);
        PathSetValue out;
        for (const Path& s : UniverseStrings()) {
          if (!a.count(s)) out.insert(s);
        }
        return out;
      }
      case Kind::kConcat:
        return ConcatSets(Eval(*p.a), Eval(*p.b));
      case Kind::kStar:
        return StarSet(Eval(*p.a));
      case Kind::kImage:
        return Image(Eval(*p.a), *p.rel);
    }
    return {};
  }

  // { q | exists x in xs, (x, q) in r }.
  PathSetValue Image(const PathSetValue& xs, const Rel& r) {
    using Kind = Rel::Kind;
    switch (r.kind) {
      case Kind::kCross: {
        const PathSetValue& a = Eval(*r.a);
        for (const Path& x : xs) {
          if (a.count(x)) return Eval(*r.b);
        }
        return {};
      }
      case Kind::kIdentity: {
        const PathSetValue& a = Eval(*r.a);
        PathSetValue out;
        for (const Path& x : xs) {
          if (a.count(x)) out.insert(x);
        }
        return out;
      }
      case Kind::kZero:
        return {};
      case Kind::kOne:
        return xs.count(Path{}) ? PathSetValue{Path{}} : PathSetValue{};
      case Kind::kUnion: {
        PathSetValue out = Image(xs, *r.x);
        PathSetValue y = Image(xs, *r.y);
        out.insert(y.begin(), y.end());
        return out;
      }
      case Kind::kCompose:
        return Image(Image(xs, *r.x), *r.y);
      case Kind::kConcat:
      case Kind::kStar: {
        PathSetValue out;
        for (const Path& x : xs) {
          const PathSetValue& y = ImageOf(x, r);
          out.insert(y.begin(), y.end());
        }
        return out;
      }
    }
    return {};
  }

  // Image of a single string, memoized.
  const PathSetValue& ImageOf(const Path& x, const Rel& r) {
    auto key = std::make_pair(&r, x);
    auto it = singles_.find(key);
    if (it != singles_.end()) return it->second;
    PathSetValue value;
    if (r.kind == Rel::Kind::kConcat) {
      for (size_t i = 0; i <= x.size(); ++i) {
        PathSetValue head = ImageOf(Path(x.begin(), x.begin() + i), *r.x);
        const PathSetValue& tail = ImageOf(Path(x.begin() + i, x.end()), *r.y);
        PathSetValue part = ConcatSets(head, tail);
        value.insert(part.begin(), part.end());
      }
    } else if (r.kind == Rel::Kind::kStar) {
      // suffix[i]: outputs for x[i..] as a sequence of related pieces, where
      // pieces with empty input may appear anywhere.
      PathSetValue empty_star = StarSet(ImageOf(Path{}, *r.x));
      std::vector<PathSetValue> suffix(x.size() + 1);
      suffix[x.size()] = empty_star;
      for (size_t i = x.size(); i-- > 0;) {
        PathSetValue steps;
        for (size_t j = i + 1; j <= x.size(); ++j) {
          PathSetValue piece =
              ConcatSets(ImageOf(Path(x.begin() + i, x.begin() + j), *r.x),
                         suffix[j]);
          steps.insert(piece.begin(), piece.end());
        }
        suffix[i] = ConcatSets(empty_star, steps);
      }
      value = std::move(suffix[0]);
    } else {
      value = Image(PathSetValue{x}, r);
    }
    return singles_.emplace(std::move(key), std::move(value)).first->second;
  }

  const OracleEnv& env_;
  std::vector<Label> universe_;
  std::set<Label> extra_;
  std::vector<Path> universe_strings_;
  std::vector<Path> all_strings_;
  std::map<const PathSet*, PathSetValue> memo_;
  std::map<std::pair<const Rel*, Path>, PathSetValue> singles_;
};

}  // namespace

PathSetValue OracleEvalPathSet(const PathSetPtr& p, const OracleEnv& env,
                               std::span<const Label> universe, int max_len) {
  assert(max_len <= kOracleWorkLength);
  Oracle oracle(env, universe);
  oracle.AddMarkers(p);
  PathSetValue out;
  for (const Path& s : oracle.Eval(*p)) {
    if (static_cast<int>(s.size()) <= max_len) out.insert(s);
  }
  return out;
}

bool OracleCheckSpec(const SpecPtr& s, const OracleEnv& env,
                     std::span<const Label> universe) {
  Oracle oracle(env, universe);
  oracle.AddMarkers(s);
  return oracle.Check(*s);
}

}  // namespace rela::rir
