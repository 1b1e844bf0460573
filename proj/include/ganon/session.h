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


// Interactive tuning session: one analyst edits the replacement coefficients
// of a loaded extraction and commits the result.
//
// Every accepted edit increments the revision. Edits and commits carry the
// revision they were based on and are rejected when it is stale.

#ifndef GANON_SESSION_H_
#define GANON_SESSION_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ganon/config.h"
#include "ganon/masking.h"
#include "ganon/pipeline.h"
#include "ganon/wavelet.h"
#include "json.hpp"

namespace ganon {

struct SessionOptions {
  std::string basis = "db1";
  size_t level = 2;
  uint64_t seed = 0;
  std::filesystem::path out_dir = "ganon-out";
};

class Session {
 public:
  static absl::StatusOr<std::unique_ptr<Session>> Create(
      Extraction extraction, SessionOptions options);

  uint64_t revision() const;

  // {revision, basis, level, order, a_k, delta, approx, details_sum,
  //  extremums, a_tilde, alpha, delta_tilde, c1_tilde, c2_tilde, feasible,
  //  violations}
  nlohmann::json State() const;

  // Body {revision, a_tilde, alpha?}. Fails with kAborted on a stale
  // revision and kInvalidArgument on a malformed body. Infeasible
  // concentrations are accepted and reported.
  absl::StatusOr<nlohmann::json> UpdateCoefficients(
      const nlohmann::json& body);

  // Body {revision}. Writes the same bundle as the mask command. Fails with
  // kAborted on a stale revision and kFailedPrecondition when the pending
  // coefficients cannot be realized.
  absl::StatusOr<nlohmann::json> Commit(const nlohmann::json& body);

  // The plan a commit at the current revision would run.
  MaskingPlan PendingPlan() const;

 private:
  Session(Extraction extraction, SessionOptions options, WaveletBasis basis,
          ApproximationSplit split);

  absl::Status CheckRevision(const nlohmann::json& body) const;
  nlohmann::json EditJsonLocked() const;
  MaskingPlan PendingPlanLocked() const;

  const Extraction extraction_;
  const SessionOptions options_;
  const WaveletBasis basis_;
  const ApproximationSplit split_;

  mutable std::shared_mutex mu_;
  uint64_t revision_ = 0;
  std::vector<double> a_tilde_;
  SplitWeights alpha_;
  std::vector<double> delta_tilde_;
  ResolvedConcentrations resolved_;
};

}  // namespace ganon

#endif  // GANON_SESSION_H_
