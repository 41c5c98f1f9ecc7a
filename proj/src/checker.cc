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

#include <algorithm>
#include <map>
#include <numeric>
#include <thread>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace rela {

const char* StatusName(FecResult::Status s) {
  switch (s) {
    case FecResult::Status::kPass:
      return "pass";
    case FecResult::Status::kFail:
      return "fail";
    case FecResult::Status::kUnmatched:
      return "unmatched";
    case FecResult::Status::kError:
      return "error";
  }
  return "";
}

absl::StatusOr<rir::SnapshotPair> FecEnv(const Fec& fec, const LocationDb& db,
                                         Granularity g,
                                         const SymbolTable& symbols) {
  rir::SnapshotPair env;
  for (auto [graph, fsa] :
       {std::pair(&fec.pre, &env.pre), std::pair(&fec.post, &env.post)}) {
    absl::StatusOr<ForwardingGraph> coarse = Coarsen(*graph, g, db);
    if (!coarse.ok()) {
      return absl::Status(
          coarse.status().code(),
          absl::StrCat(graph == &fec.pre ? "pre: " : "post: ",
                       coarse.status().message()));
    }
    *fsa = GraphToFsa(*coarse, symbols);
  }
  return env;
}

LanguageDiff DiffLanguages(const CompiledSpec& spec, rir::Evaluator& eval,
                           int limit) {
  const Fsa& expected = eval.Eval(rir::Image(rir::PreState(), spec.rpre));
  const Fsa& observed = eval.Eval(rir::Image(rir::PostState(), spec.rpost));
  return {EnumerateShortest(Difference(expected, observed), limit),
          EnumerateShortest(Difference(observed, expected), limit)};
}

Checker::Checker(const CompiledProgram& program, const LocationDb& db,
                 Granularity g, const SymbolTable& symbols, int witness_limit)
    : program_(program),
      db_(db),
      g_(g),
      symbols_(symbols),
      universe_(symbols.Universe()),
      witness_limit_(witness_limit) {}

const CompiledSpec* Checker::Dispatch(const Traffic& traffic,
                                      std::string* guard) const {
  for (const CompiledGuard& g : program_.guarded) {
    if (MatchPredicate(*g.pred, traffic)) {
      *guard = g.name;
      return &g.spec;
    }
  }
  if (program_.fallback.has_value()) {
    *guard = kFallbackGuard;
    return &*program_.fallback;
  }
  return nullptr;
}

RenderedPaths Checker::Render(PathList paths, const CompiledSpec& spec) {
  std::map<Label, std::string> expansion;
  for (const AnyMarker& m : spec.markers) {
    rir::SnapshotPair empty;
    PathList target = EnumerateShortest(
        rir::EvalPathSet(m.target, empty, universe_), 2);
    if (target.paths.size() == 1 && !target.truncated &&
        !target.paths[0].empty()) {
      std::vector<std::string> names;
      for (Label l : target.paths[0]) names.emplace_back(symbols_.Name(l));
      expansion[m.marker] = absl::StrJoin(names, " ");
    } else {
      expansion[m.marker] = absl::StrCat("(", m.text, ")");
    }
  }
  RenderedPaths out;
  for (const Path& p : paths.paths) {
    std::vector<std::string> tokens;
    for (Label l : p) {
      auto it = expansion.find(l);
      tokens.push_back(it != expansion.end() ? it->second
                                             : std::string(symbols_.Name(l)));
    }
    out.text.push_back(absl::StrJoin(tokens, " "));
  }
  out.raw = std::move(paths);
  return out;
}

Counterexample Checker::Explain(const CompiledSpec& spec, const Fec& fec,
                                rir::Evaluator& eval) {
  Counterexample c;
  c.fec_id = fec.id;
  c.traffic = fec.traffic;
  c.dst_text = fec.dst_text;
  c.src_text = fec.src_text;
  const SubspecEntry* arm = nullptr;
  for (rir::PathSetPtr state : {rir::PreState(), rir::PostState()}) {
    for (const SubspecEntry& e : spec.subspecs) {
      if (!IsEmpty(eval.Eval(rir::Intersect(state, e.zone)))) {
        arm = &e;
        break;
      }
    }
    if (arm != nullptr) break;
  }
  rir::RelPtr rpre = spec.rpre, rpost = spec.rpost;
  if (arm != nullptr) {
    c.subspec = arm->label;
    rpre = arm->rpre;
    rpost = arm->rpost;
  } else {
    c.subspec = spec.name.empty() ? "spec" : spec.name;
    c.no_zone_match = true;
  }
  c.pre_paths =
      Render(EnumerateShortest(eval.Eval(rir::PreState()), witness_limit_),
             spec);
  c.post_paths =
      Render(EnumerateShortest(eval.Eval(rir::PostState()), witness_limit_),
             spec);
  c.expected = Render(
      EnumerateShortest(eval.Eval(rir::Image(rir::PreState(), rpre)),
                        witness_limit_),
      spec);
  c.observed = Render(
      EnumerateShortest(eval.Eval(rir::Image(rir::PostState(), rpost)),
                        witness_limit_),
      spec);
  LanguageDiff diff = DiffLanguages(spec, eval, witness_limit_);
  c.missing = Render(std::move(diff.missing), spec);
  c.unexpected = Render(std::move(diff.unexpected), spec);
  return c;
}

FecResult Checker::Check(const Fec& fec) {
  FecResult r;
  r.fec_id = fec.id;
  const CompiledSpec* spec = Dispatch(fec.traffic, &r.guard);
  if (spec == nullptr) {
    r.status = FecResult::Status::kUnmatched;
    return r;
  }
  absl::StatusOr<rir::SnapshotPair> env = FecEnv(fec, db_, g_, symbols_);
  if (!env.ok()) {
    r.status = FecResult::Status::kError;
    r.error = std::string(env.status().message());
    return r;
  }
  rir::Evaluator eval(*env, universe_, &cache_);
  if (rir::CheckSpec(spec->top, eval).holds) {
    r.status = FecResult::Status::kPass;
    return r;
  }
  r.status = FecResult::Status::kFail;
  r.counterexample = Explain(*spec, fec, eval);
  r.counterexample->guard = r.guard;
  return r;
}

CheckSummary CheckAll(const CompiledProgram& program,
                      const std::vector<Fec>& fecs, const LocationDb& db,
                      Granularity g, const SymbolTable& symbols,
                      const CheckOptions& options) {
  std::vector<size_t> order(fecs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return fecs[a].id < fecs[b].id;
  });
  Checker checker(program, db, g, symbols, options.witness_limit);
  std::vector<std::optional<FecResult>> results(fecs.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    while (true) {
      if (options.cancel != nullptr && options.cancel->load()) return;
      size_t k = next.fetch_add(1);
      if (k >= order.size()) return;
      results[k] = checker.Check(fecs[order[k]]);
    }
  };
  int workers = std::max(1, options.workers);
  std::vector<std::thread> threads;
  for (int i = 1; i < workers; ++i) threads.emplace_back(work);
  work();
  for (std::thread& t : threads) t.join();

  CheckSummary out;
  std::map<std::pair<std::string, std::string>, int> per_subspec;
  std::map<std::pair<std::string, std::string>, int> kept;
  for (std::optional<FecResult>& r : results) {
    if (!r.has_value()) {
      out.complete = false;
      continue;
    }
    switch (r->status) {
      case FecResult::Status::kPass:
        ++out.pass;
        break;
      case FecResult::Status::kUnmatched:
        ++out.unmatched;
        break;
      case FecResult::Status::kError:
        ++out.error;
        break;
      case FecResult::Status::kFail: {
        ++out.fail;
        auto key = std::pair(r->guard, r->counterexample->subspec);
        ++per_subspec[key];
        if (static_cast<int>(out.counterexamples.size()) <
                options.max_counterexamples &&
            kept[key] < options.max_counterexamples) {
          ++kept[key];
          out.counterexamples.push_back(*r->counterexample);
        } else {
          out.counterexamples_truncated = true;
        }
        break;
      }
    }
    out.results.push_back(*std::move(r));
  }
  for (const auto& [key, count] : per_subspec) {
    out.subspec_violations.push_back({key.first, key.second, count});
  }
  return out;
}

}  // namespace rela
