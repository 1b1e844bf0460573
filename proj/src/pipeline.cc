// Copyright 2026 The Ganon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "ganon/pipeline.h"

#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "ganon/signal_io.h"
#include "ganon/status_macros.h"

namespace ganon {

namespace {

using nlohmann::json;

constexpr size_t kExtremumCount = 5;

absl::Status WriteFile(const std::filesystem::path& path,
                       const std::string& contents) {
  std::ofstream output(path, std::ios::binary | std::ios::trunc);
  if (!output) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot write '", path.string(), "'"));
  }
  output.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!output) {
    return absl::DataLossError(
        absl::StrCat("write to '", path.string(), "' failed"));
  }
  return absl::OkStatus();
}

class BundleWriter {
 public:
  explicit BundleWriter(std::filesystem::path dir) : dir_(std::move(dir)) {}

  absl::Status Open() {
    std::error_code error;
    std::filesystem::create_directories(dir_, error);
    if (error) {
      return absl::PermissionDeniedError(absl::StrCat(
          "cannot create '", dir_.string(), "': ", error.message()));
    }
    return absl::OkStatus();
  }

  absl::Status Json(const std::string& name, const json& value) {
    return Add(name, value.dump(2) + "\n");
  }

  template <typename T>
  absl::Status Signal(const std::string& name, const std::vector<T>& values) {
    std::ostringstream out;
    GANON_RETURN_IF_ERROR(WriteSignalCsv(std::span<const T>(values), out));
    return Add(name, out.str());
  }

  absl::Status Microdata(const std::string& name, const Microfile& file) {
    std::ostringstream out;
    GANON_RETURN_IF_ERROR(WriteMicrofile(file, out));
    return Add(name, out.str());
  }

  std::vector<std::filesystem::path> paths() && { return std::move(paths_); }

 private:
  absl::Status Add(const std::string& name, const std::string& contents) {
    std::filesystem::path path = dir_ / name;
    GANON_RETURN_IF_ERROR(WriteFile(path, contents));
    paths_.push_back(std::move(path));
    return absl::OkStatus();
  }

  std::filesystem::path dir_;
  std::vector<std::filesystem::path> paths_;
};

json SelectionToJson(const LabeledSelection& s) {
  return {{"label", s.label},
          {"attributes", s.selection.attributes},
          {"combinations", s.selection.combinations}};
}

absl::Status CheckDisjoint(const Microfile& file, const Config& config) {
  GANON_ASSIGN_OR_RETURN(
      SelectionMatcher main,
      SelectionMatcher::Create(file.schema(), config.main.selection));
  GANON_ASSIGN_OR_RETURN(
      SelectionMatcher sub,
      SelectionMatcher::Create(file.schema(), config.subordinate.selection));
  for (size_t r = 0; r < file.record_count(); ++r) {
    if (main.Matches(file, r) && sub.Matches(file, r)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "record ", r + 1,
          " matches both the main and the subordinate selection"));
    }
  }
  return absl::OkStatus();
}

std::optional<VitalSelection> SupersetSelection(const Config& config) {
  if (!config.superset.has_value()) return std::nullopt;
  return config.superset->selection;
}

// Largest detail deviation between the concentration signals of one selection
// before and after rewriting.
absl::StatusOr<double> ConcentrationDrift(const QuantitySignal& before,
                                          const QuantitySignal& before_whole,
                                          const QuantitySignal& after,
                                          const QuantitySignal& after_whole,
                                          const MaskingPlan& plan) {
  GANON_ASSIGN_OR_RETURN(ConcentrationSignal c_before,
                         ComputeConcentrationSignal(before, before_whole));
  GANON_ASSIGN_OR_RETURN(ConcentrationSignal c_after,
                         ComputeConcentrationSignal(after, after_whole));
  GANON_ASSIGN_OR_RETURN(WaveletBasis basis, WaveletBasis::FromName(plan.basis));
  return DetailDrift(c_before.values, c_after.values, basis, plan.level);
}

}  // namespace

DifferenceContext Extraction::Context(const std::string& basis,
                                      size_t level) const {
  DifferenceContext ctx;
  ctx.c1 = c1.values;
  ctx.c2 = c2.values;
  ctx.superset = superset.counts;
  ctx.q1 = q1.counts;
  ctx.q2 = q2.counts;
  ctx.basis = basis;
  ctx.level = level;
  return ctx;
}

absl::StatusOr<Extraction> Extract(const Config& config) {
  std::ifstream input(config.microfile, std::ios::binary);
  if (!input) {
    return absl::NotFoundError(
        absl::StrCat("cannot open microfile '", config.microfile.string(),
                     "'"));
  }
  absl::StatusOr<Microfile> raw = LoadMicrofile(input, config.schema);
  if (!raw.ok()) {
    return absl::Status(raw.status().code(),
                        absl::StrCat(config.microfile.string(), ": ",
                                     raw.status().message()));
  }
  return ExtractFrom(config, *std::move(raw));
}

absl::StatusOr<Extraction> ExtractFrom(const Config& config, Microfile raw) {
  Extraction out;
  out.config = config;
  GANON_ASSIGN_OR_RETURN(
      out.file, ApplySplitRules(raw, config.parameter, config.split_seed));
  GANON_RETURN_IF_ERROR(CheckDisjoint(out.file, config));
  GANON_ASSIGN_OR_RETURN(out.q1,
                         ComputeQuantitySignal(out.file, config.main.selection,
                                               config.parameter));
  GANON_ASSIGN_OR_RETURN(
      out.q2, ComputeQuantitySignal(out.file, config.subordinate.selection,
                                    config.parameter));
  GANON_ASSIGN_OR_RETURN(
      out.superset, ComputeQuantitySignal(out.file, SupersetSelection(config),
                                          config.parameter));
  out.q1.label = config.main.label;
  out.q2.label = config.subordinate.label;
  out.superset.label =
      config.superset.has_value() ? config.superset->label : "all records";
  GANON_ASSIGN_OR_RETURN(out.c1,
                         ComputeConcentrationSignal(out.q1, out.superset));
  GANON_ASSIGN_OR_RETURN(out.c2,
                         ComputeConcentrationSignal(out.q2, out.superset));
  GANON_ASSIGN_OR_RETURN(out.delta,
                         DifferenceSignal(out.c1.values, out.c2.values));
  return out;
}

absl::StatusOr<MaskOutcome> RunMask(const Extraction& extraction,
                                    const MaskingPlan& plan) {
  const Config& config = extraction.config;
  MaskOutcome out;
  GANON_ASSIGN_OR_RETURN(
      out.result, RunMasking(extraction.Context(plan.basis, plan.level),
                             plan.a_tilde, plan.alpha));

  GANON_ASSIGN_OR_RETURN(
      out.main_moves,
      PlanMoves(extraction.file, config.main.selection, config.parameter,
                extraction.q1, out.result.q1_tilde, plan.seed));
  GANON_ASSIGN_OR_RETURN(
      auto main_step,
      ApplyMoves(extraction.file, out.main_moves, config.parameter));
  out.main_report = std::move(main_step.second);

  // Selections are disjoint, so moving main records leaves q2 untouched.
  GANON_ASSIGN_OR_RETURN(
      out.subordinate_moves,
      PlanMoves(main_step.first, config.subordinate.selection,
                config.parameter, extraction.q2, out.result.q2_tilde,
                plan.seed));
  GANON_ASSIGN_OR_RETURN(
      auto sub_step,
      ApplyMoves(main_step.first, out.subordinate_moves, config.parameter));
  out.subordinate_report = std::move(sub_step.second);
  out.rewritten = std::move(sub_step.first);

  GANON_ASSIGN_OR_RETURN(
      QuantitySignal whole_after,
      ComputeQuantitySignal(out.rewritten, SupersetSelection(config),
                            config.parameter));
  GANON_ASSIGN_OR_RETURN(
      QuantitySignal main_after,
      ComputeQuantitySignal(out.rewritten, config.main.selection,
                            config.parameter));
  GANON_ASSIGN_OR_RETURN(
      out.main_report.detail_drift,
      ConcentrationDrift(extraction.q1, extraction.superset, main_after,
                         whole_after, plan));
  QuantitySignal sub_after{"", out.subordinate_report.after};
  GANON_ASSIGN_OR_RETURN(
      out.subordinate_report.detail_drift,
      ConcentrationDrift(extraction.q2, extraction.superset, sub_after,
                         whole_after, plan));
  return out;
}

json ExtremumsToJson(const std::vector<Extremum>& extremums,
                     const std::vector<std::string>& order) {
  json out = json::array();
  for (const Extremum& e : extremums) {
    out.push_back({{"index", e.index + 1},
                   {"parameter", order[e.index]},
                   {"value", e.value}});
  }
  return out;
}

absl::StatusOr<std::vector<std::filesystem::path>> WriteExtractBundle(
    const Extraction& extraction, const std::filesystem::path& dir) {
  const Config& config = extraction.config;
  BundleWriter writer(dir);
  GANON_RETURN_IF_ERROR(writer.Open());
  GANON_RETURN_IF_ERROR(writer.Signal("q1.csv", extraction.q1.counts));
  GANON_RETURN_IF_ERROR(writer.Signal("q2.csv", extraction.q2.counts));
  GANON_RETURN_IF_ERROR(
      writer.Signal("superset.csv", extraction.superset.counts));
  GANON_RETURN_IF_ERROR(writer.Signal("c1.csv", extraction.c1.values));
  GANON_RETURN_IF_ERROR(writer.Signal("c2.csv", extraction.c2.values));
  GANON_RETURN_IF_ERROR(writer.Signal("delta.csv", extraction.delta));
  json summary = {
      {"parameter", config.parameter.attribute},
      {"order", config.parameter.order},
      {"main", SelectionToJson(config.main)},
      {"subordinate", SelectionToJson(config.subordinate)},
      {"superset", extraction.superset.label},
      {"records", extraction.file.record_count()},
      {"totals",
       {{"q1", extraction.q1.total()},
        {"q2", extraction.q2.total()},
        {"superset", extraction.superset.total()}}},
      {"extremums",
       ExtremumsToJson(ExtremumReport(extraction.delta, kExtremumCount),
                       config.parameter.order)}};
  GANON_RETURN_IF_ERROR(writer.Json("extract.json", summary));
  return std::move(writer).paths();
}

absl::StatusOr<std::vector<std::filesystem::path>> WriteMaskBundle(
    const Extraction& extraction, const MaskingPlan& plan,
    const MaskOutcome& outcome, const std::filesystem::path& dir) {
  const Config& config = extraction.config;
  const MaskingResult& r = outcome.result;
  BundleWriter writer(dir);
  GANON_RETURN_IF_ERROR(writer.Open());
  GANON_RETURN_IF_ERROR(writer.Json("plan.json", PlanToJson(plan)));

  json alpha = r.weights.is_uniform() ? json(r.weights[0])
                                      : json(r.weights.weights());
  json result = {
      {"parameter", config.parameter.attribute},
      {"order", config.parameter.order},
      {"basis", r.basis},
      {"level", r.level},
      {"alpha", std::move(alpha)},
      {"superset", extraction.superset.counts},
      {"q1", extraction.q1.counts},
      {"q2", extraction.q2.counts},
      {"c1", extraction.c1.values},
      {"c2", extraction.c2.values},
      {"delta", r.delta},
      {"a", r.coefficients},
      {"a_tilde", r.replacement},
      {"delta_tilde", r.delta_tilde},
      {"c1_tilde", r.c1_tilde},
      {"c2_tilde", r.c2_tilde},
      {"q1_hat", r.q1_hat},
      {"q2_hat", r.q2_hat},
      {"gamma1", r.gamma1},
      {"gamma2", r.gamma2},
      {"q1_tilde", r.q1_tilde},
      {"q2_tilde", r.q2_tilde},
      {"realized_delta", r.realized_delta},
      {"detail_drift", r.detail_drift},
      {"extremums_before",
       ExtremumsToJson(ExtremumReport(r.delta, kExtremumCount),
                       config.parameter.order)},
      {"extremums_after",
       ExtremumsToJson(ExtremumReport(r.delta_tilde, kExtremumCount),
                       config.parameter.order)}};
  GANON_RETURN_IF_ERROR(writer.Json("result.json", result));
  GANON_RETURN_IF_ERROR(writer.Signal("delta_tilde.csv", r.delta_tilde));
  GANON_RETURN_IF_ERROR(writer.Signal("c1_tilde.csv", r.c1_tilde));
  GANON_RETURN_IF_ERROR(writer.Signal("c2_tilde.csv", r.c2_tilde));
  GANON_RETURN_IF_ERROR(writer.Signal("q1_tilde.csv", r.q1_tilde));
  GANON_RETURN_IF_ERROR(writer.Signal("q2_tilde.csv", r.q2_tilde));
  GANON_RETURN_IF_ERROR(
      writer.Json("moves_main.json", MovePlanToJson(outcome.main_moves)));
  GANON_RETURN_IF_ERROR(writer.Json("moves_subordinate.json",
                                    MovePlanToJson(outcome.subordinate_moves)));
  GANON_RETURN_IF_ERROR(writer.Json(
      "rewrite_report.json",
      {{"main", RewriteReportToJson(outcome.main_report)},
       {"subordinate", RewriteReportToJson(outcome.subordinate_report)}}));
  GANON_RETURN_IF_ERROR(writer.Microdata("microfile.csv", outcome.rewritten));
  return std::move(writer).paths();
}

}  // namespace ganon
