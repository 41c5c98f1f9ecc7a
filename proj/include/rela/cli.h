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

// The `rela` command-line driver.

#ifndef RELA_CLI_H_
#define RELA_CLI_H_

#include <atomic>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "rela/checker.h"
#include "rela/compiler.h"
#include "rela/location_db.h"
#include "rela/report.h"
#include "rela/snapshot.h"

namespace rela {

inline constexpr int kExitPass = 0;
inline constexpr int kExitViolations = 1;
inline constexpr int kExitInputError = 2;

struct RunConfig {
  std::string spec_path;
  std::string locations_path;
  std::string fecs_path;
  Granularity granularity = Granularity::kDevice;
  int workers = 1;
  int max_counterexamples = 100;
  std::string output_path;  // empty: standard output
  enum class Format { kJson, kText } format = Format::kJson;
  bool strict = false;
  bool emit_rir = false;
};

struct InputTexts {
  std::string spec;
  std::string locations;
  std::string fecs;
  std::string spec_path = "spec";
  std::string locations_path = "locations";
  std::string fecs_path = "fecs";
};

struct LoadedInputs {
  LocationDb db;
  SymbolTable symbols;
  CompiledProgram program;
  std::vector<Fec> fecs;
  // Rejected FEC records; empty in strict mode, which fails instead.
  std::vector<InputError> errors;
  ReportMetadata meta;
};

// Parses, compiles and ingests. Errors name the offending file.
absl::StatusOr<std::unique_ptr<LoadedInputs>> LoadInputs(
    const InputTexts& texts, Granularity g, bool strict);

// 0 when every FEC passes, 1 on violations, 2 on usage or input errors
// and for interrupted runs. The report goes to config.output_path or `out`;
// diagnostics and timing go to `err`.
int Run(const RunConfig& config, std::ostream& out, std::ostream& err,
        const std::atomic<bool>* cancel = nullptr);

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err, const std::atomic<bool>* cancel = nullptr);

}  // namespace rela

#endif  // RELA_CLI_H_
