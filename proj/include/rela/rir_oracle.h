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

// A brute-force evaluator for RIR over explicit finite sets of paths. It
// shares no code with the automata kernel and exists to test it.
//
// All sets are truncated at a length bound. Results are exact up to
// `max_len` as long as no witness needs an intermediate string longer than
// `kOracleWorkLength` (an image source, or the middle string of a
// composition).

#ifndef RELA_RIR_ORACLE_H_
#define RELA_RIR_ORACLE_H_

#include <set>
#include <span>

#include "rela/fsa.h"
#include "rela/rir.h"

namespace rela::rir {

inline constexpr int kOracleWorkLength = 8;

using PathSetValue = std::set<Path>;

struct OracleEnv {
  PathSetValue pre;
  PathSetValue post;
};

// 𝒫[p](M, N) restricted to paths of length <= max_len. Requires
// max_len <= kOracleWorkLength.
PathSetValue OracleEvalPathSet(const PathSetPtr& p, const OracleEnv& env,
                               std::span<const Label> universe, int max_len);

// Satisfaction, comparing path sets up to kOracleWorkLength.
bool OracleCheckSpec(const SpecPtr& s, const OracleEnv& env,
                     std::span<const Label> universe);

}  // namespace rela::rir

#endif  // RELA_RIR_ORACLE_H_
