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

#include <random>
#include <set>
#include <sstream>

#include "gtest/gtest.h"
#include "rela/rir_eval.h"
#include "rela/rir_notation.h"
#include "rela/rir_oracle.h"
#include "tests/rir_random.h"

namespace rela {
namespace {

using rir::OracleCheckSpec;
using rir::OracleEnv;
using rir::OracleEvalPathSet;
using surface::Modifier;
using ::rela::testing::OracleDomain;
using ::rela::testing::SetFsa;

class CompilerTest : public ::testing::Test {
 protected:
  CompilerTest()
      : a_(symbols_.InternLocation("a")), b_(symbols_.InternLocation("b")) {}

  Modifier Mod(Modifier::Kind kind, surface::RegexPtr r1 = nullptr,
               surface::RegexPtr r2 = nullptr) {
    Modifier m;
    m.kind = kind;
    m.r1 = std::move(r1);
    m.r2 = std::move(r2);
    return m;
  }

  surface::RegexPtr A() { return surface::Loc({a_}); }
  surface::RegexPtr B() { return surface::Loc({b_}); }
  rir::PathSetPtr Da() { return rir::Sym(a_); }
  rir::PathSetPtr Db() { return rir::Sym(b_); }

  std::vector<Label> Universe() const { return symbols_.Universe(); }

  bool Holds(const CompiledSpec& c, const OracleEnv& env) {
    return OracleCheckSpec(c.top, env, Universe());
  }

  int Pick(int n) {
    return std::uniform_int_distribution<int>(0, n - 1)(rng_);
  }

  surface::RegexPtr RandomRegex(int depth) {
    switch (depth <= 1 ? Pick(2) : Pick(5)) {
      case 0: {
        const Label choices[] = {kDrop, a_, b_};
        std::vector<Label> set = {choices[Pick(3)]};
        if (Pick(3) == 0) set.push_back(choices[Pick(3)]);
        return surface::Loc(set);
      }
      case 1:
        return Pick(3) ? surface::Loc({Pick(2) ? a_ : b_}) : surface::Dot();
      case 2:
        return surface::Union(RandomRegex(depth - 1), RandomRegex(depth - 1));
      case 3:
        return surface::Concat(RandomRegex(depth - 1), RandomRegex(depth - 1));
      default:
        return surface::Star(RandomRegex(depth - 1));
    }
  }

  surface::SpecPtr RandomSpec(int depth) {
    switch (depth <= 1 ? 0 : Pick(3)) {
      case 0: {
        auto kind = static_cast<Modifier::Kind>(Pick(6));
        Modifier m = Mod(kind);
        if (kind != Modifier::Kind::kPreserve &&
            kind != Modifier::Kind::kDrop) {
          m.r1 = RandomRegex(2);
        }
        if (kind == Modifier::Kind::kReplace) m.r2 = RandomRegex(2);
        return surface::Atomic(RandomRegex(2), m);
      }
      case 1:
        return surface::ConcatSpec(RandomSpec(depth - 1), RandomSpec(depth - 1));
      default:
        return surface::Else(RandomSpec(depth - 1), RandomSpec(depth - 1));
    }
  }

  std::set<Path> RandomPaths(int max_len) {
    std::vector<Label> u = Universe();
    std::set<Path> out;
    for (int i = Pick(4); i > 0; --i) {
      Path p;
      for (int j = 1 + Pick(max_len); j > 0; --j) p.push_back(u[Pick(u.size())]);
      out.insert(p);
    }
    return out;
  }

  SymbolTable symbols_;
  Label a_, b_;
  std::mt19937 rng_{1234};
};

TEST_F(CompilerTest, PreserveIsIdentityOnZone) {
  Compiler compiler(symbols_);
  CompiledSpec c = compiler.Compile(
      *surface::Atomic(A(), Mod(Modifier::Kind::kPreserve)));
  EXPECT_TRUE(rir::Same(*c.rpre, *rir::Identity(Da())));
  EXPECT_TRUE(rir::Same(*c.rpost, *rir::Identity(Da())));
  EXPECT_TRUE(rir::Same(
      *c.top, *rir::Equal(rir::Image(rir::PreState(), rir::Identity(Da())),
                          rir::Image(rir::PostState(), rir::Identity(Da())))));
  EXPECT_TRUE(rir::Same(*c.zone, *Da()));
}

TEST_F(CompilerTest, RemoveAnyDropAddReplace) {
  Compiler compiler(symbols_);
  CompiledSpec remove = compiler.Compile(
      *surface::Atomic(A(), Mod(Modifier::Kind::kRemove, B())));
  EXPECT_TRUE(rir::Same(*remove.rpre, *rir::Identity(rir::Minus(Da(), Db()))));
  EXPECT_TRUE(rir::Same(*remove.rpost, *rir::Identity(Da())));

  CompiledSpec any =
      compiler.Compile(*surface::Atomic(A(), Mod(Modifier::Kind::kAny, B())));
  ASSERT_EQ(any.markers.size(), 1u);
  rir::PathSetPtr mark = rir::Sym(any.markers[0].marker);
  EXPECT_EQ(symbols_.Name(any.markers[0].marker), "#1");
  EXPECT_TRUE(
      rir::Same(*any.rpre, *rir::Cross(rir::Union(Da(), Db()), mark)));
  EXPECT_TRUE(rir::Same(
      *any.rpost, *rir::Union(rir::Cross(Db(), mark),
                              rir::Identity(rir::Minus(Da(), Db())))));
  EXPECT_EQ(any.markers[0].text, "\"b\"");

  CompiledSpec drop =
      compiler.Compile(*surface::Atomic(A(), Mod(Modifier::Kind::kDrop)));
  rir::PathSetPtr dd = rir::Union(Da(), rir::Sym(kDrop));
  EXPECT_TRUE(rir::Same(*drop.rpre, *rir::Cross(dd, rir::Sym(kDrop))));
  EXPECT_TRUE(rir::Same(*drop.rpost, *rir::Identity(dd)));

  CompiledSpec add =
      compiler.Compile(*surface::Atomic(A(), Mod(Modifier::Kind::kAdd, B())));
  rir::PathSetPtr ab = rir::Union(Da(), Db());
  EXPECT_TRUE(rir::Same(
      *add.rpre, *rir::Union(rir::Identity(ab), rir::Cross(Da(), Db()))));
  EXPECT_TRUE(rir::Same(*add.zone, *ab));

  CompiledSpec replace = compiler.Compile(
      *surface::Atomic(A(), Mod(Modifier::Kind::kReplace, A(), B())));
  EXPECT_TRUE(rir::Same(*replace.zone, *ab));
  EXPECT_TRUE(rir::Same(
      *replace.rpre,
      *rir::Union(rir::Identity(rir::Minus(ab, Da())),
                  rir::Cross(rir::Intersect(Da(), Da()), Db()))));
  EXPECT_TRUE(rir::Same(*replace.rpost, *rir::Identity(ab)));
}

TEST_F(CompilerTest, DotIsEveryLocationButDrop) {
  Compiler compiler(symbols_);
  rir::PathSetPtr dot = compiler.Lower(*surface::Dot());
  OracleEnv env;
  EXPECT_EQ(OracleEvalPathSet(dot, env, Universe(), 2),
            (std::set<Path>{{a_}, {b_}}));
}

// The zone of (A:preserve)(B:drop) is A (B|drop): checked by membership of
// every path of length <= 2 against a hand-written predicate.
TEST_F(CompilerTest, ConcatenationZone) {
  Compiler compiler(symbols_);
  CompiledSpec c = compiler.Compile(*surface::ConcatSpec(
      surface::Atomic(A(), Mod(Modifier::Kind::kPreserve)),
      surface::Atomic(B(), Mod(Modifier::Kind::kDrop))));
  std::set<Path> zone = OracleEvalPathSet(c.zone, {}, Universe(), 2);
  std::set<Path> want;
  for (Label x : Universe()) {
    for (Label y : Universe()) {
      if (x == a_ && (y == b_ || y == kDrop)) want.insert({x, y});
    }
  }
  EXPECT_EQ(zone, want);
}

TEST_F(CompilerTest, MarkersAreFreshAndNeverInZones) {
  Compiler compiler(symbols_);
  auto any = [&] {
    return surface::Atomic(A(), Mod(Modifier::Kind::kAny, B()));
  };
  CompiledSpec c =
      compiler.Compile(*surface::Else(surface::ConcatSpec(any(), any()), any()));
  ASSERT_EQ(c.markers.size(), 3u);
  std::set<Label> distinct;
  for (const AnyMarker& m : c.markers) {
    distinct.insert(m.marker);
    EXPECT_TRUE(symbols_.IsMarker(m.marker));
  }
  EXPECT_EQ(distinct.size(), 3u);
  std::function<bool(const rir::PathSet&)> has_marker =
      [&](const rir::PathSet& p) {
        if (p.kind == rir::PathSet::Kind::kSym && symbols_.IsMarker(p.symbol)) {
          return true;
        }
        return (p.a && has_marker(*p.a)) || (p.b && has_marker(*p.b));
      };
  EXPECT_FALSE(has_marker(*c.zone));
  for (const SubspecEntry& e : c.subspecs) EXPECT_FALSE(has_marker(*e.zone));
}

TEST_F(CompilerTest, SubspecIndexFollowsElsePriority) {
  Compiler compiler(symbols_);
  auto s1 = surface::Named(
      surface::Atomic(A(), Mod(Modifier::Kind::kPreserve)), "first");
  auto s2 = surface::Atomic(B(), Mod(Modifier::Kind::kDrop));
  auto s3 = surface::Named(
      surface::Atomic(surface::Star(surface::Dot()),
                      Mod(Modifier::Kind::kPreserve)),
      "rest");
  CompiledSpec c = compiler.Compile(*surface::Else(surface::Else(s1, s2), s3));
  ASSERT_EQ(c.subspecs.size(), 3u);
  EXPECT_EQ(c.subspecs[0].label, "first");
  EXPECT_EQ(c.subspecs[1].label, "arm 2");
  EXPECT_EQ(c.subspecs[2].label, "rest");
  // The last arm's zone excludes what earlier arms claim.
  std::set<Path> rest = OracleEvalPathSet(c.subspecs[2].zone, {}, Universe(), 1);
  EXPECT_EQ(rest, (std::set<Path>{{}}));

  CompiledSpec single = compiler.Compile(*s3);
  ASSERT_EQ(single.subspecs.size(), 1u);
  EXPECT_EQ(single.subspecs[0].label, "rest");
}

// Compiled `D: preserve` holds iff pre ∩ D = post ∩ D, with D evaluated by
// the oracle and both checkers consulted.
TEST_F(CompilerTest, PreserveEquivalence) {
  Compiler compiler(symbols_);
  for (int trial = 0; trial < 300; ++trial) {
    surface::RegexPtr d = RandomRegex(3);
    CompiledSpec c =
        compiler.Compile(*surface::Atomic(d, Mod(Modifier::Kind::kPreserve)));
    OracleEnv env{RandomPaths(3), RandomPaths(3)};
    if (Pick(2)) env.post = env.pre;
    std::set<Path> dl = OracleEvalPathSet(compiler.Lower(*d), {}, Universe(), 3);
    std::set<Path> pre_in, post_in;
    for (const Path& p : env.pre) {
      if (dl.contains(p)) pre_in.insert(p);
    }
    for (const Path& p : env.post) {
      if (dl.contains(p)) post_in.insert(p);
    }
    bool want = pre_in == post_in;
    EXPECT_EQ(Holds(c, env), want);
    rir::SnapshotPair senv{SetFsa(env.pre), SetFsa(env.post)};
    EXPECT_EQ(rir::CheckSpec(c.top, senv, Universe()).holds, want);
  }
}

// On snapshots whose paths all lie in 𝒵[s1], `s1 else s2` behaves as s1.
TEST_F(CompilerTest, ElsePriority) {
  int checked = 0;
  for (int trial = 0; trial < 250; ++trial) {
    Compiler compiler(symbols_);
    surface::SpecPtr s1 = RandomSpec(2);
    surface::SpecPtr s2 = RandomSpec(2);
    CompiledSpec c1 = compiler.Compile(*s1);
    CompiledSpec both = compiler.Compile(*surface::Else(s1, s2));
    OracleDomain domain(3);
    if (!domain.Exact(*c1.top) || !domain.Exact(*both.top)) continue;
    std::set<Path> z1 = OracleEvalPathSet(c1.zone, {}, Universe(), 3);
    OracleEnv env;
    for (const Path& p : RandomPaths(3)) {
      if (z1.contains(p)) env.pre.insert(p);
    }
    for (const Path& p : RandomPaths(3)) {
      if (z1.contains(p)) env.post.insert(p);
    }
    if (Pick(3) == 0) env.post = env.pre;
    std::vector<Label> u = symbols_.Universe();
    EXPECT_EQ(OracleCheckSpec(both.top, env, u), OracleCheckSpec(c1.top, env, u))
        << surface::Print(*s1, symbols_) << " else "
        << surface::Print(*s2, symbols_);
    ++checked;
  }
  EXPECT_GT(checked, 60);
}

TEST_F(CompilerTest, EmitRirParsesBack) {
  for (int trial = 0; trial < 100; ++trial) {
    Compiler compiler(symbols_);
    CompiledSpec c = compiler.Compile(*RandomSpec(3));
    std::istringstream lines(EmitRir(c, symbols_));
    std::string line;
    int parsed = 0;
    while (std::getline(lines, line)) {
      if (line.empty() || line[0] == '#') continue;
      size_t sep = line.find(" := ");
      ASSERT_NE(sep, std::string::npos) << line;
      std::string lhs = line.substr(0, sep);
      std::string rhs = line.substr(sep + 4);
      if (lhs.starts_with("R_")) {
        auto r = rir::ParseRel(rhs, symbols_);
        ASSERT_TRUE(r.ok()) << r.status() << "\n" << line;
      } else if (lhs.starts_with("Z")) {
        auto p = rir::ParsePathSet(rhs, symbols_);
        ASSERT_TRUE(p.ok()) << p.status() << "\n" << line;
      } else {
        auto s = rir::ParseSpec(rhs, symbols_);
        ASSERT_TRUE(s.ok()) << s.status() << "\n" << line;
        EXPECT_TRUE(rir::Same(**s, *c.top));
      }
      ++parsed;
    }
    EXPECT_EQ(parsed, 4 + 3 * static_cast<int>(c.subspecs.size()));
    auto rpre = rir::ParseRel(rir::Print(*c.rpre, symbols_), symbols_);
    ASSERT_TRUE(rpre.ok());
    EXPECT_TRUE(rir::Same(**rpre, *c.rpre));
  }
}

}  // namespace
}  // namespace rela
