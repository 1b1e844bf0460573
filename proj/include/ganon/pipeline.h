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


// End-to-end drivers shared by the command-line tool and the session service.

#ifndef GANON_PIPELINE_H_
#define GANON_PIPELINE_H_

#include <filesystem>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ganon/config.h"
#include "ganon/masking.h"
#include "ganon/microdata.h"
#include "ganon/rewriter.h"
#include "json.hpp"

namespace ganon {

struct Extraction {
  Config config;
  Microfile file{AttributeSchema()};  // split rules applied
  QuantitySignal q1;
  QuantitySignal q2;
  QuantitySignal superset;
  ConcentrationSignal c1;
  ConcentrationSignal c2;
  std::vector<double> delta;

  DifferenceContext Context(const std::string& basis, size_t level) const;
};

// Loads the configured microfile and extracts every signal.
absl::StatusOr<Extraction> Extract(const Config& config);
// Same, from an already loaded microfile over `config.schema`.
absl::StatusOr<Extraction> ExtractFrom(const Config& config, Microfile raw);

struct MaskOutcome {
  MaskingResult result;
  MovePlan main_moves;
  MovePlan subordinate_moves;
  RewriteReport main_report;
  RewriteReport subordinate_report;
  Microfile rewritten{AttributeSchema()};
};

// Masks the difference signal and rewrites the microfile so that the main and
// subordinate quantity signals equal the rounded targets.
absl::StatusOr<MaskOutcome> RunMask(const Extraction& extraction,
                                    const MaskingPlan& plan);

// Bundles are written deterministically; repeated runs produce identical
// bytes. Both return the written paths in a fixed order.
absl::StatusOr<std::vector<std::filesystem::path>> WriteExtractBundle(
    const Extraction& extraction, const std::filesystem::path& dir);
absl::StatusOr<std::vector<std::filesystem::path>> WriteMaskBundle(
    const Extraction& extraction, const MaskingPlan& plan,
    const MaskOutcome& outcome, const std::filesystem::path& dir);

nlohmann::json ExtremumsToJson(const std::vector<Extremum>& extremums,
                               const std::vector<std::string>& order);

}  // namespace ganon

#endif  // GANON_PIPELINE_H_
