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

#include "rela/report.h"

#include <openssl/evp.h>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "json.hpp"

namespace rela {
namespace {

using Json = nlohmann::ordered_json;

Json PathsJson(const RenderedPaths& p) {
  Json out;
  out["paths"] = p.text;
  out["truncated"] = p.raw.truncated;
  return out;
}

Json TrafficJson(const Counterexample& c) {
  Json out;
  out["dstPrefix"] = c.dst_text;
  if (c.src_text.has_value()) out["srcPrefix"] = *c.src_text;
  out["ingress"] = c.traffic.ingress;
  return out;
}

std::string SetText(const RenderedPaths& p) {
  std::string body = absl::StrJoin(p.text, ", ");
  if (p.raw.truncated) absl::StrAppend(&body, ", ...");
  return absl::StrCat("{", body, "}");
}

}  // namespace

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int size = 0;
  EVP_Digest(data.data(), data.size(), digest, &size, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < size; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 15]);
  }
  return out;
}

const char* Verdict(const CheckSummary& summary) {
  return summary.fail > 0 ? "fail" : "pass";
}

std::string RenderJson(const CheckSummary& summary,
                       const std::vector<InputError>& errors,
                       const ReportMetadata& meta) {
  Json doc;
  doc["verdict"] = Verdict(summary);
  doc["complete"] = summary.complete;
  Json& m = doc["metadata"];
  m["granularity"] = GranularityName(meta.granularity);
  m["inputs"]["spec_sha256"] = meta.spec_sha256;
  m["inputs"]["locations_sha256"] = meta.locations_sha256;
  m["inputs"]["fecs_sha256"] = meta.fecs_sha256;
  m["witness_limit"] = meta.witness_limit;
  m["max_counterexamples"] = meta.max_counterexamples;
  Json& t = doc["totals"];
  t["fecs"] = summary.results.size();
  t["pass"] = summary.pass;
  t["fail"] = summary.fail;
  t["unmatched"] = summary.unmatched;
  t["error"] = summary.error;
  t["input_errors"] = errors.size();
  doc["subspec_violations"] = Json::array();
  for (const SubspecCount& s : summary.subspec_violations) {
    doc["subspec_violations"].push_back(
        Json{{"guard", s.guard}, {"subspec", s.subspec}, {"count", s.count}});
  }
  doc["counterexamples"] = Json::array();
  for (const Counterexample& c : summary.counterexamples) {
    Json j;
    j["fec"] = c.fec_id;
    j["traffic"] = TrafficJson(c);
    j["guard"] = c.guard;
    j["subspec"] = c.subspec;
    j["no_zone_match"] = c.no_zone_match;
    j["pre_paths"] = PathsJson(c.pre_paths);
    j["post_paths"] = PathsJson(c.post_paths);
    j["expected"] = PathsJson(c.expected);
    j["observed"] = PathsJson(c.observed);
    j["missing"] = PathsJson(c.missing);
    j["unexpected"] = PathsJson(c.unexpected);
    doc["counterexamples"].push_back(std::move(j));
  }
  doc["counterexamples_truncated"] = summary.counterexamples_truncated;
  doc["results"] = Json::array();
  for (const FecResult& r : summary.results) {
    Json j;
    j["fec"] = r.fec_id;
    j["status"] = StatusName(r.status);
    if (!r.guard.empty()) j["guard"] = r.guard;
    if (r.counterexample.has_value()) j["subspec"] = r.counterexample->subspec;
    if (!r.error.empty()) j["error"] = r.error;
    doc["results"].push_back(std::move(j));
  }
  doc["errors"] = Json::array();
  for (const InputError& e : errors) {
    Json j;
    if (!e.fec_id.empty()) j["fec"] = e.fec_id;
    j["message"] = e.message;
    doc["errors"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

std::string RenderText(const CheckSummary& summary,
                       const std::vector<InputError>& errors,
                       const ReportMetadata& meta) {
  std::string out = absl::StrCat(
      "verdict: ", Verdict(summary), summary.complete ? "" : " (incomplete)",
      "\ngranularity: ", GranularityName(meta.granularity), "\nfecs: ",
      summary.results.size(), "  pass: ", summary.pass, "  fail: ",
      summary.fail, "  unmatched: ", summary.unmatched, "  error: ",
      summary.error, "\n");
  if (!summary.subspec_violations.empty()) {
    absl::StrAppend(&out, "\nviolations by sub-spec:\n");
    for (const SubspecCount& s : summary.subspec_violations) {
      absl::StrAppend(&out, "  ", s.guard, " / ", s.subspec, ": ", s.count,
                      "\n");
    }
  }
  for (const Counterexample& c : summary.counterexamples) {
    std::string flow = absl::StrCat("dst ", c.dst_text);
    if (c.src_text.has_value()) absl::StrAppend(&flow, ", src ", *c.src_text);
    absl::StrAppend(&flow, ", ingress ", c.traffic.ingress);
    absl::StrAppend(&out, "\nfec ", c.fec_id, " (", flow, ")\n",
                    "  before: ", SetText(c.pre_paths), "\n",
                    "  after:  ", SetText(c.post_paths), "\n",
                    "  reason: ", c.subspec,
                    c.no_zone_match ? " (no sub-spec zone matched)" : "",
                    ": ", SetText(c.expected), " != ", SetText(c.observed),
                    "\n");
    if (!c.missing.text.empty()) {
      absl::StrAppend(&out, "  missing:    ", SetText(c.missing), "\n");
    }
    if (!c.unexpected.text.empty()) {
      absl::StrAppend(&out, "  unexpected: ", SetText(c.unexpected), "\n");
    }
  }
  if (summary.counterexamples_truncated) {
    absl::StrAppend(&out, "\n(further counterexamples omitted)\n");
  }
  for (const FecResult& r : summary.results) {
    if (r.status == FecResult::Status::kError) {
      absl::StrAppend(&out, "\nerror: fec ", r.fec_id, ": ", r.error);
    }
  }
  for (const InputError& e : errors) {
    absl::StrAppend(&out, "\nerror: ", e.message);
  }
  if (summary.error > 0 || !errors.empty()) out.push_back('\n');
  return out;
}

}  // namespace rela
