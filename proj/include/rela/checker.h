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

// Per-FEC checking, counterexample extraction and the parallel batch driver.

#ifndef RELA_CHECKER_H_
#define RELA_CHECKER_H_

#include <atomic>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "rela/compiler.h"
#include "rela/fsa.h"
#include "rela/location_db.h"
#include "rela/rir_eval.h"
#include "rela/snapshot.h"
#include "rela/symbol_table.h"

namespace rela {

inline constexpr int kDefaultWitnessLimit = 100;
inline constexpr char kFallbackGuard[] = "(default)";

// Shortest-first paths with their rendering. Markers render as the path
// their any() argument denotes when that argument is a single path, and as
// "(<argument text>)" otherwise.
struct RenderedPaths {
  PathList raw;
  std::vector<std::string> text;
};

struct Counterexample {
  std::string fec_id;
  Traffic traffic;
  std::string dst_text;
  std::optional<std::string> src_text;
  std::string guard;
  RenderedPaths pre_paths;
  RenderedPaths post_paths;
  std::string subspec;
  // Set when no sub-spec zone matched and the whole equation is reported.
  bool no_zone_match = false;
  // The violated sub-spec's images of the pre and post paths.
  RenderedPaths expected;
  RenderedPaths observed;
  // Whole-spec differences: expected but absent, present but unexpected.
  RenderedPaths missing;
  RenderedPaths unexpected;
};

struct FecResult {
  enum class Status { kPass, kFail, kUnmatched, kError };
  std::string fec_id;
  Status status = Status::kPass;
  std::string guard;
  std::string error;
  std::optional<Counterexample> counterexample;
};

const char* StatusName(FecResult::Status s);

struct LanguageDiff {
  PathList missing;
  PathList unexpected;
};

// The pre and post automata of `fec` at `g`.
absl::StatusOr<rir::SnapshotPair> FecEnv(const Fec& fec, const LocationDb& db,
                                         Granularity g,
                                         const SymbolTable& symbols);

// Image(PreState, rpre) \ Image(PostState, rpost) and the reverse, shortest
// first, at most `limit` each.
LanguageDiff DiffLanguages(const CompiledSpec& spec, rir::Evaluator& eval,
                           int limit);

class Checker {
 public:
  Checker(const CompiledProgram& program, const LocationDb& db,
          Granularity g, const SymbolTable& symbols,
          int witness_limit = kDefaultWitnessLimit);

  // The spec that applies to `traffic` and its guard name, or null.
  const CompiledSpec* Dispatch(const Traffic& traffic,
                               std::string* guard) const;

  // Checks one FEC; explains failures. A pure function of the FEC.
  FecResult Check(const Fec& fec);

  Counterexample Explain(const CompiledSpec& spec, const Fec& fec,
                         rir::Evaluator& eval);

  RenderedPaths Render(PathList paths, const CompiledSpec& spec);

 private:
  const CompiledProgram& program_;
  const LocationDb& db_;
  Granularity g_;
  const SymbolTable& symbols_;
  std::vector<Label> universe_;
  int witness_limit_;
  rir::SharedCache cache_;
};

struct CheckOptions {
  int workers = 1;
  int witness_limit = kDefaultWitnessLimit;
  // Counterexamples kept in the report overall and per sub-spec.
  int max_counterexamples = 100;
  // Polled between FECs; when set, unchecked FECs are left out.
  const std::atomic<bool>* cancel = nullptr;
};

struct SubspecCount {
  std::string guard;
  std::string subspec;
  int count = 0;
};

struct CheckSummary {
  bool complete = true;
  // Sorted by FEC id.
  std::vector<FecResult> results;
  int pass = 0, fail = 0, unmatched = 0, error = 0;
  std::vector<SubspecCount> subspec_violations;
  std::vector<Counterexample> counterexamples;
  bool counterexamples_truncated = false;
};

// Input problems found while loading, reported alongside results.
struct InputError {
  std::string fec_id;  // may be empty
  std::string message;
};

CheckSummary CheckAll(const CompiledProgram& program,
                      const std::vector<Fec>& fecs, const LocationDb& db,
                      Granularity g, const SymbolTable& symbols,
                      const CheckOptions& options);

}  // namespace rela

#endif  // RELA_CHECKER_H_
