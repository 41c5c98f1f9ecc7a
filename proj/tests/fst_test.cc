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

#include <random>
#include <set>
#include <utility>
#include <vector>

#include "gtest/gtest.h"
#include "rela/regular_expr.h"
#include "tests/test_util.h"

namespace rela {
namespace {

using ::rela::testing::AllStrings;
using ::rela::testing::BoundedLanguage;
using Pair = std::pair<Path, Path>;
using Relation = std::set<Pair>;

constexpr Label kA = 2;
constexpr Label kB = 3;
constexpr Label kC = 4;
const std::vector<Label> kAbc = {kA, kB, kC};

// Pairs of `r` with both sides at most `max_len` long, by direct search.
Relation BoundedRelation(const Fst& r, int max_len) {
  Relation out;
  std::vector<Path> strings = AllStrings(kAbc, max_len);
  for (const Path& in : strings) {
    for (const Path& o : strings) {
      if (Relates(r, in, o)) out.insert({in, o});
    }
  }
  return out;
}

Path Cat(const Path& x, const Path& y) {
  Path out = x;
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

// Explicit-set model of the relation constructors, truncated at `bound`.
struct Model {
  int bound;

  std::set<Path> Set(const Fsa& p) const {
    return BoundedLanguage(p, kAbc, bound);
  }

  Relation Eval(const RelationExpr& e) const {
    using Kind = RelationExpr::Kind;
    Relation out;
    switch (e.kind) {
      case Kind::kCross:
        for (const Path& x : Set(e.first)) {
          for (const Path& y : Set(e.second)) out.insert({x, y});
        }
        return out;
      case Kind::kIdentity:
        for (const Path& x : Set(e.first)) out.insert({x, x});
        return out;
      case Kind::kEmpty:
        return out;
      case Kind::kUnit:
        return {{Path{}, Path{}}};
      case Kind::kUnion:
        out = Eval(*e.lhs);
        for (const Pair& p : Eval(*e.rhs)) out.insert(p);
        return out;
      case Kind::kConcat:
        return Product(Eval(*e.lhs), Eval(*e.rhs));
      case Kind::kStar: {
        Relation base = Eval(*e.lhs);
        out = {{Path{}, Path{}}};
        for (;;) {
          Relation next = out;
          for (const Pair& p : Product(out, base)) next.insert(p);
          if (next.size() == out.size()) return out;
          out = std::move(next);
        }
      }
      case Kind::kCompose: {
        Relation x = Eval(*e.lhs), y = Eval(*e.rhs);
        for (const Pair& p : x) {
          for (const Pair& q : y) {
            if (p.second == q.first) out.insert({p.first, q.second});
          }
        }
        return out;
      }
    }
    return out;
  }

  Relation Product(const Relation& x, const Relation& y) const {
    Relation out;
    for (const Pair& p : x) {
      for (const Pair& q : y) {
        Pair r = {Cat(p.first, q.first), Cat(p.second, q.second)};
        if (static_cast<int>(r.first.size()) <= bound &&
            static_cast<int>(r.second.size()) <= bound) {
          out.insert(std::move(r));
        }
      }
    }
    return out;
  }
};

Relation Truncate(const Relation& r, int max_len) {
  Relation out;
  for (const Pair& p : r) {
    if (static_cast<int>(p.first.size()) <= max_len &&
        static_cast<int>(p.second.size()) <= max_len) {
      out.insert(p);
    }
  }
  return out;
}

Fsa RandomFiniteSet(std::mt19937& rng) {
  Fsa out;
  std::uniform_int_distribution<int> count(0, 3), len(0, 2), sym(0, 2);
  for (int i = count(rng); i > 0; --i) {
    Path p;
    for (int j = len(rng); j > 0; --j) p.push_back(kAbc[sym(rng)]);
    out = Union(out, PathFsa(p));
  }
  return out;
}

// Star only wraps relations that strictly lengthen both sides or only the
// output, so truncating the model at a small bound stays exact.
RelationExprPtr RandomRelation(std::mt19937& rng, int depth,
                               bool allow_compose) {
  using E = RelationExpr;
  std::uniform_int_distribution<int> pick(0, depth <= 1 ? 3 : 8);
  switch (pick(rng)) {
    case 0:
    case 1:
      return E::Cross(RandomFiniteSet(rng), RandomFiniteSet(rng));
    case 2:
      return E::Identity(RandomFiniteSet(rng));
    case 3:
      return std::bernoulli_distribution(0.5)(rng) ? E::Empty() : E::Unit();
    case 4:
    case 5:
      return E::Union(RandomRelation(rng, depth - 1, allow_compose),
                      RandomRelation(rng, depth - 1, allow_compose));
    case 6:
      return E::Concat(RandomRelation(rng, depth - 1, allow_compose),
                       RandomRelation(rng, depth - 1, allow_compose));
    case 7:
      return E::Star(RandomRelation(rng, depth - 1, false));
    default:
      if (!allow_compose) return RandomRelation(rng, depth - 1, false);
      return E::Compose(RandomRelation(rng, depth - 1, false),
                        RandomRelation(rng, depth - 1, false));
  }
}

TEST(CrossTest, RelatesEveryPair) {
  Fst r = Cross(SymbolFsa(kA), Union(SymbolFsa(kB), SymbolFsa(kC)));
  EXPECT_EQ(BoundedRelation(r, 2),
            Relation({{{kA}, {kB}}, {{kA}, {kC}}}));
}

TEST(CrossTest, EmptyOperandGivesEmptyRelation) {
  EXPECT_TRUE(BoundedRelation(Cross(EmptyFsa(), SymbolFsa(kA)), 2).empty());
  EXPECT_TRUE(BoundedRelation(Cross(SymbolFsa(kA), EmptyFsa()), 2).empty());
}

TEST(IdentityTest, RelatesEachPathToItself) {
  Fst r = Identity(Union(PathFsa(Path{kA, kB}), EpsilonFsa()));
  EXPECT_EQ(BoundedRelation(r, 3),
            Relation({{{}, {}}, {{kA, kB}, {kA, kB}}}));
}

TEST(ComposeTest, ChainsThroughTheMiddleString) {
  Fst r = Compose(Cross(SymbolFsa(kA), SymbolFsa(kB)),
                  Cross(SymbolFsa(kB), SymbolFsa(kC)));
  EXPECT_EQ(BoundedRelation(r, 2), Relation({{{kA}, {kC}}}));
}

TEST(ComposeTest, MismatchedMiddleIsEmpty) {
  Fst r = Compose(Cross(SymbolFsa(kA), SymbolFsa(kB)),
                  Cross(SymbolFsa(kC), SymbolFsa(kA)));
  EXPECT_TRUE(BoundedRelation(r, 2).empty());
}

TEST(ComposeTest, AgreesWithPairwiseJoin) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    auto x = RelationExpr::Cross(RandomFiniteSet(rng), RandomFiniteSet(rng));
    auto y = RelationExpr::Union(
        RelationExpr::Identity(RandomFiniteSet(rng)),
        RelationExpr::Cross(RandomFiniteSet(rng), RandomFiniteSet(rng)));
    Fst r = Compose(BuildFst(*x), BuildFst(*y));
    Relation rx = BoundedRelation(BuildFst(*x), 2);
    Relation ry = BoundedRelation(BuildFst(*y), 2);
    Relation expected;
    for (const Pair& p : rx) {
      for (const Pair& q : ry) {
        if (p.second == q.first) expected.insert({p.first, q.second});
      }
    }
    ASSERT_EQ(BoundedRelation(r, 2), expected) << "trial " << trial;
  }
}

TEST(BuildFstTest, AgreesWithExplicitModelOnRandomTrees) {
  std::mt19937 rng(31337);
  Model model{6};
  for (int trial = 0; trial < 250; ++trial) {
    RelationExprPtr e = RandomRelation(rng, 4, true);
    Fst r = BuildFst(*e);
    ASSERT_EQ(BoundedRelation(r, 3), Truncate(model.Eval(*e), 3))
        << "trial " << trial;
  }
}

TEST(OptimizeTest, PreservesRelation) {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 150; ++trial) {
    Fst r = BuildFst(*RandomRelation(rng, 4, true));
    Fst o = Optimize(r);
    EXPECT_TRUE(o.sorted());
    ASSERT_EQ(BoundedRelation(o, 3), BoundedRelation(r, 3))
        << "trial " << trial;
    ASSERT_LE(o.NumStates(), std::max(1, r.NumStates()));
  }
}

TEST(ImageTest, CrossYieldsSecondOperandWhenDomainsMeet) {
  Fsa p2 = Union(PathFsa(Path{kB, kC}), SymbolFsa(kA));
  Fst r = Cross(SymbolFsa(kA), p2);
  EXPECT_TRUE(Equivalent(Image(Union(SymbolFsa(kA), SymbolFsa(kB)), r), p2));
  EXPECT_TRUE(IsEmpty(Image(SymbolFsa(kB), r)));
}

TEST(ImageTest, IdentityImageIsIntersection) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Fsa p = Star(RandomFiniteSet(rng));
    Fsa q = RandomFiniteSet(rng);
    ASSERT_TRUE(Equivalent(Image(p, Identity(q)), Intersect(p, q)));
  }
}

TEST(ImageTest, MatchesProjectionOfComposition) {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    Fsa p = RandomFiniteSet(rng);
    if (trial % 3 == 0) p = Star(p);
    Fst r = BuildFst(*RandomRelation(rng, 3, true));
    Fsa image = Image(p, r);
    ASSERT_TRUE(
        Equivalent(image, OutputProjection(Compose(Identity(p), r))));
    // Brute force over short strings.
    std::set<Path> expected;
    for (const Pair& pair : BoundedRelation(r, 3)) {
      if (Accepts(p, pair.first)) expected.insert(pair.second);
    }
    std::set<Path> got = BoundedLanguage(image, kAbc, 3);
    for (const Path& q : expected) ASSERT_TRUE(got.count(q)) << trial;
  }
}

TEST(ProjectionTest, InputAndOutputSides) {
  Fst r = Cross(SymbolFsa(kA), PathFsa(Path{kB, kC}));
  EXPECT_TRUE(Equivalent(InputProjection(r), SymbolFsa(kA)));
  EXPECT_TRUE(Equivalent(OutputProjection(r), PathFsa(Path{kB, kC})));
}

TEST(StarTest, ConcatenatesPairsComponentWise) {
  Fst r = Star(Cross(SymbolFsa(kA), SymbolFsa(kB)));
  EXPECT_TRUE(Relates(r, Path{}, Path{}));
  EXPECT_TRUE(Relates(r, Path{kA, kA}, Path{kB, kB}));
  EXPECT_FALSE(Relates(r, Path{kA, kA}, Path{kB}));
}

}  // namespace
}  // namespace rela
