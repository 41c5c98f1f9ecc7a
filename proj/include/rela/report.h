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

// Check reports: a canonical JSON document and a plain-text table with one
// row per counterexample (flow, paths before, paths after, reason).

#ifndef RELA_REPORT_H_
#define RELA_REPORT_H_

#include <string>
#include <string_view>
#include <vector>

#include "rela/checker.h"
#include "rela/location_db.h"

namespace rela {

struct ReportMetadata {
  Granularity granularity = Granularity::kDevice;
  std::string spec_sha256;
  std::string locations_sha256;
  std::string fecs_sha256;
  int witness_limit = kDefaultWitnessLimit;
  int max_counterexamples = 100;
};

std::string Sha256Hex(std::string_view data);

// "pass" with no failures, otherwise "fail".
const char* Verdict(const CheckSummary& summary);

// Byte-for-byte deterministic for equal inputs; holds no timing data.
std::string RenderJson(const CheckSummary& summary,
                       const std::vector<InputError>& errors,
                       const ReportMetadata& meta);
std::string RenderText(const CheckSummary& summary,
                       const std::vector<InputError>& errors,
                       const ReportMetadata& meta);

}  // namespace rela

#endif  // RELA_REPORT_H_
