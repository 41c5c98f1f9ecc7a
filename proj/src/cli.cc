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

#include "rela/cli.h"

#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "rela/surface_parser.h"

namespace rela {
namespace {

absl::Status WithPath(const absl::Status& s, const std::string& path) {
  return absl::Status(s.code(), absl::StrCat(path, ": ", s.message()));
}

// ParseFec errors start with `fec "<id>"`.
std::string ErrorFecId(const std::string& message) {
  size_t start = message.find("fec \"");
  if (start == std::string::npos) return "";
  start += 5;
  size_t end = message.find('"', start);
  return end == std::string::npos ? "" : message.substr(start, end - start);
}

class Phase {
 public:
  Phase(std::ostream& err, const char* name)
      : err_(err), name_(name), start_(std::chrono::steady_clock::now()) {}
  ~Phase() {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start_)
                  .count();
    err_ << "rela: " << name_ << ": " << ms << " ms\n";
  }

 private:
  std::ostream& err_;
  const char* name_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

absl::StatusOr<std::unique_ptr<LoadedInputs>> LoadInputs(
    const InputTexts& texts, Granularity g, bool strict) {
  absl::StatusOr<LocationDb> db = LocationDb::FromJson(texts.locations);
  if (!db.ok()) return WithPath(db.status(), texts.locations_path);
  auto in = std::make_unique<LoadedInputs>(LoadedInputs{
      .db = *std::move(db), .symbols = {}, .program = {}, .fecs = {},
      .errors = {}, .meta = {}});
  in->symbols = MakeSymbolTable(in->db, g);
  absl::StatusOr<surface::Program> program =
      ParseProgram(texts.spec, in->db, g, in->symbols);
  if (!program.ok()) {
    return absl::Status(program.status().code(),
                        absl::StrCat(texts.spec_path, ":",
                                     program.status().message()));
  }
  if (program->guarded.empty() && program->fallback == nullptr) {
    return absl::InvalidArgumentError(
        absl::StrCat(texts.spec_path, ": no spec defined"));
  }
  in->program = Compiler(in->symbols).Compile(*program);

  std::istringstream stream(texts.fecs);
  FecReader reader(stream, in->db);
  while (true) {
    absl::StatusOr<std::optional<Fec>> next = reader.Next();
    if (!next.ok()) {
      if (strict) return WithPath(next.status(), texts.fecs_path);
      std::string message = std::string(next.status().message());
      in->errors.push_back(
          {ErrorFecId(message), absl::StrCat(texts.fecs_path, ": ", message)});
      continue;
    }
    if (!next->has_value()) break;
    in->fecs.push_back(**std::move(next));
  }

  in->meta.granularity = g;
  in->meta.spec_sha256 = Sha256Hex(texts.spec);
  in->meta.locations_sha256 = Sha256Hex(texts.locations);
  in->meta.fecs_sha256 = Sha256Hex(texts.fecs);
  return in;
}

int Run(const RunConfig& config, std::ostream& out, std::ostream& err,
        const std::atomic<bool>* cancel) {
  std::unique_ptr<LoadedInputs> in;
  {
    Phase phase(err, "load and compile");
    InputTexts texts;
    texts.spec_path = config.spec_path;
    texts.locations_path = config.locations_path;
    texts.fecs_path = config.fecs_path;
    for (auto [path, text] : {std::pair(&config.spec_path, &texts.spec),
                              std::pair(&config.locations_path,
                                        &texts.locations),
                              std::pair(&config.fecs_path, &texts.fecs)}) {
      if (path->empty()) continue;
      absl::StatusOr<std::string> data = ReadFile(*path);
      if (!data.ok()) {
        err << "rela: " << data.status().message() << "\n";
        return kExitInputError;
      }
      *text = *std::move(data);
    }
    absl::StatusOr<std::unique_ptr<LoadedInputs>> loaded =
        LoadInputs(texts, config.granularity, config.strict);
    if (!loaded.ok()) {
      err << "rela: " << loaded.status().message() << "\n";
      return kExitInputError;
    }
    in = *std::move(loaded);
  }

  if (config.emit_rir) {
    for (const CompiledGuard& g : in->program.guarded) {
      out << "# guard " << g.name << "\n" << EmitRir(g.spec, in->symbols);
    }
    if (in->program.fallback.has_value()) {
      out << "# default\n" << EmitRir(*in->program.fallback, in->symbols);
    }
    return kExitPass;
  }

  CheckOptions options;
  options.workers = config.workers;
  options.max_counterexamples = config.max_counterexamples;
  options.cancel = cancel;
  in->meta.witness_limit = options.witness_limit;
  in->meta.max_counterexamples = options.max_counterexamples;
  CheckSummary summary;
  {
    Phase phase(err, "check");
    summary = CheckAll(in->program, in->fecs, in->db, config.granularity,
                       in->symbols, options);
  }
  err << "rela: " << summary.results.size() << " of " << in->fecs.size()
      << " fecs checked, " << summary.fail << " failed\n";

  std::string report = config.format == RunConfig::Format::kJson
                           ? RenderJson(summary, in->errors, in->meta)
                           : RenderText(summary, in->errors, in->meta);
  if (config.output_path.empty()) {
    out << report;
  } else {
    std::ofstream file(config.output_path, std::ios::binary);
    file << report;
    if (!file.flush()) {
      err << "rela: cannot write " << config.output_path << "\n";
      return kExitInputError;
    }
  }
  if (!summary.complete) {
    err << "rela: interrupted; report is incomplete\n";
    return kExitInputError;
  }
  if (!in->errors.empty() || summary.error > 0) return kExitInputError;
  return summary.fail > 0 ? kExitViolations : kExitPass;
}

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err, const std::atomic<bool>* cancel) {
  CLI::App app("Checks network changes against relational specs.", "rela");
  app.require_subcommand(1);
  CLI::App* check = app.add_subcommand(
      "check", "Check pre/post forwarding snapshots against a spec.");
  RunConfig config;
  config.workers =
      std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  std::string granularity = "device";
  std::string format = "json";
  check->add_option("--spec", config.spec_path, "Spec program")->required();
  check->add_option("--locations", config.locations_path,
                    "Location database (JSON)")
      ->required();
  check->add_option("--fecs", config.fecs_path,
                    "FEC snapshots, one JSON object per line");
  check->add_option("--granularity", granularity, "interface, device or group")
      ->check(CLI::IsMember({"interface", "device", "group"}))
      ->capture_default_str();
  check->add_option("--workers", config.workers, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  check->add_option("--max-counterexamples", config.max_counterexamples,
                    "Counterexamples kept overall and per sub-spec")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  check->add_option("--output", config.output_path,
                    "Report file (default: standard output)");
  check->add_option("--format", format, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  check->add_flag("--strict", config.strict,
                  "Abort on the first malformed FEC");
  check->add_flag("--emit-rir", config.emit_rir,
                  "Print the compiled relational form and exit");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitPass;
    }
    err << "rela: " << e.what() << "\n" << app.help();
    return kExitInputError;
  }
  if (!config.emit_rir && config.fecs_path.empty()) {
    err << "rela: --fecs is required\n";
    return kExitInputError;
  }
  config.granularity = *ParseGranularity(granularity);
  config.format =
      format == "text" ? RunConfig::Format::kText : RunConfig::Format::kJson;
  return Run(config, out, err, cancel);
}

}  // namespace rela
