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

#include "rela/checker.h"

#include <random>
#include <set>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "rela/cli.h"
#include "rela/rir.h"
#include "tests/fec_gen.h"

namespace rela {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;
using ::testing::IsEmpty;
using testing::GraphPaths;
using testing::InterfacePools;
using testing::MakeFec;
using testing::MutateOneEdge;
using testing::RandomGraph;

std::string Data(const std::string& name) {
  return *ReadFile(std::string(RELA_TEST_DATA) + "/" + name);
}

std::unique_ptr<LoadedInputs> Load(const std::string& spec,
                                   const std::string& locations,
                                   const std::string& fecs, Granularity g) {
  InputTexts texts{spec, locations, fecs};
  absl::StatusOr<std::unique_ptr<LoadedInputs>> in =
      LoadInputs(texts, g, /*strict=*/true);
  EXPECT_TRUE(in.ok()) << in.status();
  return in.ok() ? *std::move(in) : nullptr;
}

CheckSummary CheckInputs(const LoadedInputs& in, Granularity g, int workers = 1,
                 int max_counterexamples = 100) {
  CheckOptions options;
  options.workers = workers;
  options.max_counterexamples = max_counterexamples;
  return CheckAll(in.program, in.fecs, in.db, g, in.symbols, options);
}

std::unique_ptr<LoadedInputs> Walkthrough(const std::string& fecs) {
  return Load(Data("walkthrough/change.rela"), Data("walkthrough/locations.json"),
              Data("walkthrough/" + fecs), Granularity::kGroup);
}

TEST(CheckerTest, WalkthroughScenarioReportsBothSubspecs) {
  auto in = Walkthrough("fecs_v2.jsonl");
  ASSERT_NE(in, nullptr);
  CheckSummary s = CheckInputs(*in, Granularity::kGroup);
  EXPECT_EQ(s.fail, 2);
  ASSERT_EQ(s.counterexamples.size(), 2u);
  const Counterexample& t1 = s.counterexamples[0];
  EXPECT_EQ(t1.fec_id, "t1");
  EXPECT_EQ(t1.subspec, "e2e");
  EXPECT_FALSE(t1.no_zone_match);
  EXPECT_THAT(t1.pre_paths.text, ElementsAre("x1 A1 B1 B2 B3 D1 y1"));
  EXPECT_THAT(t1.expected.text, ElementsAre("x1 A1 A2 A3 D1 y1"));
  EXPECT_THAT(t1.observed.text, ElementsAre("x1 A1 A2 A3 B3 D1 y1"));
  const Counterexample& t2 = s.counterexamples[1];
  EXPECT_EQ(t2.fec_id, "t2");
  EXPECT_EQ(t2.subspec, "nochange");
  EXPECT_THAT(t2.expected.text, ElementsAre("x2 C1 B1 B2 B3 D1 y2"));
  EXPECT_THAT(t2.observed.text, ElementsAre("x2 C1 C2 D1 y2"));
  ASSERT_EQ(s.subspec_violations.size(), 2u);
  EXPECT_EQ(s.subspec_violations[0].subspec, "e2e");
  EXPECT_EQ(s.subspec_violations[1].subspec, "nochange");
}

TEST(CheckerTest, WalkthroughScenarioFinalSnapshotsPass) {
  auto in = Walkthrough("fecs_final.jsonl");
  ASSERT_NE(in, nullptr);
  CheckSummary s = CheckInputs(*in, Granularity::kGroup);
  EXPECT_EQ(s.pass, 2);
  EXPECT_EQ(s.fail, 0);
  EXPECT_THAT(s.counterexamples, IsEmpty());
}

TEST(CheckerTest, MarkerWithManyTargetsRendersSourceText) {
  auto in = Load(R"(
spec shift := {
  x1 : preserve;
  A1 .* D1 : any(A1 (A2 | B1) D1);
  y1 : preserve;
}
)",
                 Data("walkthrough/locations.json"), Data("walkthrough/fecs_v2.jsonl"),
                 Granularity::kGroup);
  ASSERT_NE(in, nullptr);
  CheckSummary s = CheckInputs(*in, Granularity::kGroup);
  ASSERT_EQ(s.results.size(), 2u);
  EXPECT_EQ(s.results[0].status, FecResult::Status::kFail);
  ASSERT_TRUE(s.results[0].counterexample.has_value());
  const Counterexample& c = *s.results[0].counterexample;
  EXPECT_THAT(c.expected.text, ElementsAre("x1 (A1 (A2 | B1) D1) y1"));
  EXPECT_THAT(c.observed.text, ElementsAre("x1 A1 A2 A3 B3 D1 y1"));
  // t2 is outside the zone, and both images are empty.
  EXPECT_EQ(s.results[1].status, FecResult::Status::kPass);
}

TEST(CheckerTest, GuardsDispatchAndUnmatched) {
  std::string spec = R"(
spec keep := { .* : preserve; }
pspec moved := dstPrefix in {10.1.0.0/16} -> keep
)";
  auto in = Load(spec, Data("walkthrough/locations.json"),
                 Data("walkthrough/fecs_v2.jsonl"), Granularity::kGroup);
  ASSERT_NE(in, nullptr);
  // The only spec is referenced by the guard, so there is no fallback.
  EXPECT_FALSE(in->program.fallback.has_value());
  CheckSummary s = CheckInputs(*in, Granularity::kGroup);
  ASSERT_EQ(s.results.size(), 2u);
  EXPECT_EQ(s.results[0].guard, "moved");
  EXPECT_EQ(s.results[0].status, FecResult::Status::kFail);
  EXPECT_EQ(s.results[1].status, FecResult::Status::kUnmatched);
  EXPECT_EQ(s.unmatched, 1);

  auto with_default =
      Load(spec + "spec rest := { .* : preserve; }\n",
           Data("walkthrough/locations.json"), Data("walkthrough/fecs_v2.jsonl"),
           Granularity::kGroup);
  ASSERT_NE(with_default, nullptr);
  CheckSummary d = CheckInputs(*with_default, Granularity::kGroup);
  EXPECT_EQ(d.results[1].guard, kFallbackGuard);
  EXPECT_EQ(d.results[1].status, FecResult::Status::kFail);
}

TEST(CheckerTest, CoarseningCycleIsAPerFecError) {
  auto in = Walkthrough("fecs_v2.jsonl");
  ASSERT_NE(in, nullptr);
  Fec fec = in->fecs[0];
  fec.id = "loop";
  fec.post.nodes = {{"a", "a1r1e0"}, {"b", "b1r1e0"}, {"c", "a1r2e0"}};
  fec.post.edges = {{"a", "b"}, {"b", "c"}};
  fec.post.sources = {"a"};
  fec.post.sinks = {"c"};
  Checker checker(in->program, in->db, Granularity::kGroup, in->symbols);
  FecResult r = checker.Check(fec);
  EXPECT_EQ(r.status, FecResult::Status::kError);
  EXPECT_THAT(r.error, HasSubstr("post"));
  EXPECT_THAT(r.error, HasSubstr("cycle"));
}

constexpr char kSmallDb[] = R"([
  {"name": "d0i0", "device": "d0", "group": "g0"},
  {"name": "d0i1", "device": "d0", "group": "g0"},
  {"name": "d1i0", "device": "d1", "group": "g0"},
  {"name": "d2i0", "device": "d2", "group": "g1"},
  {"name": "d3i0", "device": "d3", "group": "g1"},
  {"name": "d4i0", "device": "d4", "group": "g2"},
  {"name": "d5i0", "device": "d5", "group": "g2"}
])";

struct Random {
  std::unique_ptr<LoadedInputs> in;
  std::vector<std::vector<std::string>> pools;
};

Random RandomInputs(const std::string& spec) {
  Random r;
  r.in = Load(spec, kSmallDb, "", Granularity::kDevice);
  r.pools = InterfacePools(r.in->db, Granularity::kDevice);
  return r;
}

// Paths a `.*` zone can match: `.` never matches drop.
std::set<Path> Undropped(std::set<Path> paths) {
  std::erase_if(paths, [](const Path& p) {
    return std::find(p.begin(), p.end(), kDrop) != p.end();
  });
  return paths;
}

ForwardingGraph SmallGraph(std::mt19937& rng, const Random& r) {
  return RandomGraph(rng, r.pools, 2 + rng() % 4, rng() % 4, 0.2);
}

TEST(CheckerTest, PreserveAndRemoveAgreeWithPathEnumeration) {
  std::mt19937 rng(7);
  Random keep = RandomInputs("spec s := { .* : preserve; }");
  Random drop_d2 = RandomInputs("spec s := { .* : remove(.* d2 .*); }");
  Label d2 = *keep.in->symbols.Find("d2");
  int fails = 0;
  for (int trial = 0; trial < 200; ++trial) {
    ForwardingGraph pre = SmallGraph(rng, keep);
    ForwardingGraph post = rng() % 3 == 0 ? pre : SmallGraph(rng, keep);
    if (rng() % 3 == 0) MutateOneEdge(rng, post);
    Fec fec = MakeFec("f", "10.0.0.0/8", pre, post);
    const LoadedInputs& k = *keep.in;
    std::set<Path> pre_paths =
        Undropped(GraphPaths(pre, k.db, Granularity::kDevice, k.symbols));
    std::set<Path> post_paths =
        Undropped(GraphPaths(post, k.db, Granularity::kDevice, k.symbols));

    Checker a(k.program, k.db, Granularity::kDevice, k.symbols);
    bool same = pre_paths == post_paths;
    EXPECT_EQ(a.Check(fec).status == FecResult::Status::kPass, same);
    fails += !same;

    const LoadedInputs& d = *drop_d2.in;
    std::set<Path> kept;
    for (const Path& p : pre_paths) {
      if (std::find(p.begin(), p.end(), d2) == p.end()) kept.insert(p);
    }
    Checker b(d.program, d.db, Granularity::kDevice, d.symbols);
    EXPECT_EQ(b.Check(fec).status == FecResult::Status::kPass,
              kept == post_paths);
  }
  EXPECT_GT(fails, 50);
}

// Every reported witness is re-verified by membership in the images.
void ExpectValidWitnesses(const LoadedInputs& in, const Fec& fec,
                          const Counterexample& c, const CompiledSpec& spec) {
  absl::StatusOr<rir::SnapshotPair> env =
      FecEnv(fec, in.db, Granularity::kDevice, in.symbols);
  ASSERT_TRUE(env.ok());
  rir::Evaluator eval(*env, in.symbols.Universe(), nullptr);
  Fsa expected = eval.Eval(rir::Image(rir::PreState(), spec.rpre));
  Fsa observed = eval.Eval(rir::Image(rir::PostState(), spec.rpost));
  for (const Path& p : c.missing.raw.paths) {
    EXPECT_TRUE(Accepts(expected, p));
    EXPECT_FALSE(Accepts(observed, p));
  }
  for (const Path& p : c.unexpected.raw.paths) {
    EXPECT_FALSE(Accepts(expected, p));
    EXPECT_TRUE(Accepts(observed, p));
  }
  EXPECT_FALSE(c.missing.raw.paths.empty() && c.unexpected.raw.paths.empty());
}

TEST(CheckerTest, CounterexamplesAreValid) {
  std::mt19937 rng(11);
  const char* specs[] = {
      "spec s := { .* : preserve; }",
      "spec s := { .* : remove(.* d1 .*); }",
      "spec s := { .* d3 : drop; }",
      "spec s := { d0 .* : add(d0 d4 d5); }",
      "spec s := { .* : replace(d0 d1, d0 d2 d1); }",
      "spec a := { d0 .* : preserve; }\nspec b := { .* : remove(.* d5); }\n"
      "spec s := a else b",
      "spec s := { d0 .* : any(d0 (d1 | d2) .*); }",
  };
  int checked = 0;
  for (const char* spec : specs) {
    Random r = RandomInputs(spec);
    ASSERT_NE(r.in, nullptr) << spec;
    const LoadedInputs& in = *r.in;
    Checker checker(in.program, in.db, Granularity::kDevice, in.symbols);
    for (int trial = 0; trial < 40; ++trial) {
      ForwardingGraph pre = SmallGraph(rng, r);
      ForwardingGraph post = SmallGraph(rng, r);
      Fec fec = MakeFec("f", "10.0.0.0/8", pre, post);
      FecResult res = checker.Check(fec);
      if (res.status != FecResult::Status::kFail) continue;
      ++checked;
      ExpectValidWitnesses(in, fec, *res.counterexample, *in.program.fallback);
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(CheckerTest, FiniteDifferenceIsReportedExhaustively) {
  std::mt19937 rng(5);
  Random r = RandomInputs("spec s := { .* : preserve; }");
  const LoadedInputs& in = *r.in;
  Checker checker(in.program, in.db, Granularity::kDevice, in.symbols);
  for (int trial = 0; trial < 100; ++trial) {
    ForwardingGraph pre = SmallGraph(rng, r);
    ForwardingGraph post = SmallGraph(rng, r);
    Fec fec = MakeFec("f", "10.0.0.0/8", pre, post);
    std::set<Path> a =
        Undropped(GraphPaths(pre, in.db, Granularity::kDevice, in.symbols));
    std::set<Path> b =
        Undropped(GraphPaths(post, in.db, Granularity::kDevice, in.symbols));
    std::set<Path> missing, unexpected;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(missing, missing.end()));
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(),
                        std::inserter(unexpected, unexpected.end()));
    FecResult res = checker.Check(fec);
    if (a == b) {
      EXPECT_EQ(res.status, FecResult::Status::kPass);
      continue;
    }
    ASSERT_EQ(res.status, FecResult::Status::kFail);
    const Counterexample& c = *res.counterexample;
    EXPECT_FALSE(c.missing.raw.truncated);
    EXPECT_FALSE(c.unexpected.raw.truncated);
    EXPECT_EQ(std::set<Path>(c.missing.raw.paths.begin(),
                             c.missing.raw.paths.end()),
              missing);
    EXPECT_EQ(std::set<Path>(c.unexpected.raw.paths.begin(),
                             c.unexpected.raw.paths.end()),
              unexpected);
  }
}

TEST(CheckerTest, InfiniteDifferenceIsTruncated) {
  Random r = RandomInputs("spec s := { d0 .* : add(d0 d1 d1*); }");
  const LoadedInputs& in = *r.in;
  ForwardingGraph g;
  g.nodes = {{"a", "d0i0"}, {"b", "d2i0"}};
  g.edges = {{"a", "b"}};
  g.sources = {"a"};
  g.sinks = {"b"};
  Fec fec = MakeFec("f", "10.0.0.0/8", g, g);
  Checker checker(in.program, in.db, Granularity::kDevice, in.symbols, 10);
  FecResult res = checker.Check(fec);
  ASSERT_EQ(res.status, FecResult::Status::kFail);
  const Counterexample& c = *res.counterexample;
  EXPECT_TRUE(c.missing.raw.truncated);
  EXPECT_EQ(c.missing.raw.paths.size(), 10u);
  EXPECT_EQ(c.missing.text[0], "d0 d1");
  ExpectValidWitnesses(in, fec, c, *in.program.fallback);
}

TEST(CheckerTest, CapsAndDeterminismAcrossWorkers) {
  std::mt19937 rng(3);
  Random r = RandomInputs(
      "spec a := { d0 .* : preserve; }\nspec b := { .* : preserve; }\n"
      "spec s := a else b");
  LoadedInputs& in = *r.in;
  for (int i = 0; i < 60; ++i) {
    ForwardingGraph pre = SmallGraph(rng, r);
    ForwardingGraph post = rng() % 2 ? pre : SmallGraph(rng, r);
    in.fecs.push_back(MakeFec(absl::StrCat("f", 100 - i), "10.0.0.0/8", pre, post));
  }
  CheckSummary one = CheckInputs(in, Granularity::kDevice, 1, 3);
  CheckSummary four = CheckInputs(in, Granularity::kDevice, 4, 3);
  ReportMetadata meta;
  EXPECT_EQ(RenderJson(one, {}, meta), RenderJson(four, {}, meta));
  EXPECT_TRUE(std::is_sorted(
      one.results.begin(), one.results.end(),
      [](const FecResult& x, const FecResult& y) { return x.fec_id < y.fec_id; }));
  int total = 0;
  for (const SubspecCount& c : one.subspec_violations) total += c.count;
  EXPECT_EQ(total, one.fail);
  EXPECT_GT(one.fail, 3);
  EXPECT_EQ(one.counterexamples.size(), 3u);
  EXPECT_TRUE(one.counterexamples_truncated);
}

TEST(CheckerTest, CancelledRunIsIncomplete) {
  auto in = Walkthrough("fecs_v2.jsonl");
  std::atomic<bool> cancel{true};
  CheckOptions options;
  options.cancel = &cancel;
  CheckSummary s = CheckAll(in->program, in->fecs, in->db, Granularity::kGroup,
                            in->symbols, options);
  EXPECT_FALSE(s.complete);
  EXPECT_THAT(s.results, IsEmpty());
}

}  // namespace
}  // namespace rela
