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


#include "ganon/session.h"

#include <cmath>
#include <mutex>

#include "absl/strings/str_cat.h"
#include "ganon/status_macros.h"

namespace ganon {

namespace {

using nlohmann::json;

constexpr size_t kExtremumCount = 5;

json ViolationsToJson(const std::vector<ConcentrationViolation>& violations) {
  json out = json::array();
  for (const ConcentrationViolation& v : violations) {
    out.push_back({{"index", v.index + 1},
                   {"signal", v.signal == 1 ? "c1" : "c2"},
                   {"value", v.value}});
  }
  return out;
}

absl::StatusOr<std::vector<double>> FiniteVector(const json& value,
                                                 absl::string_view field) {
  if (!value.is_array()) {
    return absl::InvalidArgumentError(
        absl::StrCat(field, " must be an array of numbers"));
  }
  std::vector<double> out;
  for (const json& v : value) {
    if (!v.is_number() || !std::isfinite(v.get<double>())) {
      return absl::InvalidArgumentError(
          absl::StrCat(field, " must contain finite numbers only"));
    }
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

absl::StatusOr<std::unique_ptr<Session>> Session::Create(
    Extraction extraction, SessionOptions options) {
  GANON_ASSIGN_OR_RETURN(WaveletBasis basis,
                         WaveletBasis::FromName(options.basis));
  GANON_ASSIGN_OR_RETURN(
      ApproximationSplit split,
      ApproximationAndDetails(extraction.delta, basis, options.level));
  return std::unique_ptr<Session>(new Session(
      std::move(extraction), std::move(options), std::move(basis),
      std::move(split)));
}

Session::Session(Extraction extraction, SessionOptions options,
                 WaveletBasis basis, ApproximationSplit split)
    : extraction_(std::move(extraction)),
      options_(std::move(options)),
      basis_(std::move(basis)),
      split_(std::move(split)),
      a_tilde_(split_.coefficients),
      delta_tilde_(extraction_.delta) {
  resolved_.c1 = extraction_.c1.values;
  resolved_.c2 = extraction_.c2.values;
}

uint64_t Session::revision() const {
  std::shared_lock lock(mu_);
  return revision_;
}

json Session::EditJsonLocked() const {
  const std::vector<std::string>& order = extraction_.config.parameter.order;
  return {{"revision", revision_},
          {"a_tilde", a_tilde_},
          {"alpha", alpha_.is_uniform() ? json(alpha_[0])
                                        : json(alpha_.weights())},
          {"delta_tilde", delta_tilde_},
          {"c1_tilde", resolved_.c1},
          {"c2_tilde", resolved_.c2},
          {"feasible", resolved_.feasible()},
          {"violations", ViolationsToJson(resolved_.violations)},
          {"extremums_tilde",
           ExtremumsToJson(ExtremumReport(delta_tilde_, kExtremumCount),
                           order)}};
}

json Session::State() const {
  std::shared_lock lock(mu_);
  const std::vector<std::string>& order = extraction_.config.parameter.order;
  json state = EditJsonLocked();
  state["basis"] = basis_.name();
  state["level"] = options_.level;
  state["parameter"] = extraction_.config.parameter.attribute;
  state["order"] = order;
  state["a_k"] = split_.coefficients;
  state["delta"] = extraction_.delta;
  state["approx"] = split_.approximation;
  state["details_sum"] = split_.details_sum;
  state["c1"] = extraction_.c1.values;
  state["c2"] = extraction_.c2.values;
  state["extremums"] =
      ExtremumsToJson(ExtremumReport(extraction_.delta, kExtremumCount), order);
  return state;
}

absl::Status Session::CheckRevision(const json& body) const {
  if (!body.is_object() || !body.contains("revision") ||
      !body["revision"].is_number_integer() ||
      body["revision"].get<int64_t>() < 0) {
    return absl::InvalidArgumentError(
        "request must carry a non-negative integer revision");
  }
  const uint64_t claimed = body["revision"].get<uint64_t>();
  if (claimed != revision_) {
    return absl::AbortedError(absl::StrCat("stale revision ", claimed,
                                           ", current is ", revision_));
  }
  return absl::OkStatus();
}

absl::StatusOr<json> Session::UpdateCoefficients(const json& body) {
  std::unique_lock lock(mu_);
  GANON_RETURN_IF_ERROR(CheckRevision(body));
  if (!body.contains("a_tilde")) {
    return absl::InvalidArgumentError("missing a_tilde");
  }
  GANON_ASSIGN_OR_RETURN(std::vector<double> a_tilde,
                         FiniteVector(body["a_tilde"], "a_tilde"));
  if (a_tilde.size() != split_.coefficients.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("a_tilde needs ", split_.coefficients.size(),
                     " values, got ", a_tilde.size()));
  }
  SplitWeights alpha = alpha_;
  if (body.contains("alpha")) {
    const json& value = body["alpha"];
    if (value.is_number()) {
      alpha = SplitWeights::Uniform(value.get<double>());
    } else {
      GANON_ASSIGN_OR_RETURN(std::vector<double> weights,
                             FiniteVector(value, "alpha"));
      alpha = SplitWeights::PerIndex(std::move(weights));
    }
  }
  GANON_RETURN_IF_ERROR(alpha.Validate(extraction_.delta.size()));

  GANON_ASSIGN_OR_RETURN(
      std::vector<double> delta_tilde,
      Remask(extraction_.delta, basis_, options_.level, a_tilde));
  GANON_ASSIGN_OR_RETURN(
      ResolvedConcentrations resolved,
      ResolveConcentrations(
          extraction_.Context(basis_.name(), options_.level), delta_tilde,
          alpha));

  ++revision_;
  a_tilde_ = std::move(a_tilde);
  alpha_ = std::move(alpha);
  delta_tilde_ = std::move(delta_tilde);
  resolved_ = std::move(resolved);
  return EditJsonLocked();
}

MaskingPlan Session::PendingPlanLocked() const {
  MaskingPlan plan;
  plan.basis = basis_.name();
  plan.level = options_.level;
  plan.a_tilde = a_tilde_;
  plan.alpha = alpha_;
  plan.seed = options_.seed;
  return plan;
}

MaskingPlan Session::PendingPlan() const {
  std::shared_lock lock(mu_);
  return PendingPlanLocked();
}

absl::StatusOr<json> Session::Commit(const json& body) {
  // Exclusive so that no edit lands between the check and the write.
  std::unique_lock lock(mu_);
  GANON_RETURN_IF_ERROR(CheckRevision(body));
  if (!resolved_.feasible()) {
    return absl::FailedPreconditionError(
        "pending coefficients give concentrations outside [0, 1]");
  }
  const MaskingPlan plan = PendingPlanLocked();
  GANON_ASSIGN_OR_RETURN(MaskOutcome outcome, RunMask(extraction_, plan));
  GANON_ASSIGN_OR_RETURN(
      std::vector<std::filesystem::path> paths,
      WriteMaskBundle(extraction_, plan, outcome, options_.out_dir));
  json files = json::array();
  for (const std::filesystem::path& p : paths) files.push_back(p.string());
  return json{{"revision", revision_},
              {"paths", std::move(files)},
              {"gamma1", outcome.result.gamma1},
              {"gamma2", outcome.result.gamma2},
              {"identity", a_tilde_ == split_.coefficients}};
}

}  // namespace ganon
