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

// Realizes a target quantity signal by moving matching records between
// parameter values. Only the parameter attribute of moved records changes.

#ifndef GANON_REWRITER_H_
#define GANON_REWRITER_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ganon/microdata.h"
#include "json.hpp"

namespace ganon {

struct RecordMove {
  size_t record = 0;  // zero-based record index
  std::string from;
  std::string to;

  bool operator==(const RecordMove&) const = default;
};

struct MovePlan {
  VitalSelection selection;
  std::string parameter;
  uint64_t seed = 0;
  std::vector<RecordMove> moves;  // ascending by record
};

struct RewriteReport {
  std::string parameter;
  // (from, to) -> number of records moved.
  std::map<std::pair<std::string, std::string>, int64_t> transfers;
  std::vector<int64_t> before;
  std::vector<int64_t> after;
  // Filled by callers that know the superset and basis.
  std::optional<double> detail_drift;
};

// Surplus positions (current > target) donate current - target records chosen
// uniformly at random (seeded) among their matching records; deficit
// positions are filled in ascending position order from the donor queue.
absl::StatusOr<MovePlan> PlanMoves(const Microfile& file,
                                   const VitalSelection& selection,
                                   const ParameterSpec& spec,
                                   const QuantitySignal& current,
                                   std::span<const int64_t> target,
                                   uint64_t seed);

// All-or-nothing: a plan whose old values no longer match the file is
// rejected before anything is changed.
absl::StatusOr<std::pair<Microfile, RewriteReport>> ApplyMoves(
    const Microfile& file, const MovePlan& plan, const ParameterSpec& spec);

nlohmann::json MovePlanToJson(const MovePlan& plan);
absl::StatusOr<MovePlan> MovePlanFromJson(const nlohmann::json& json);
nlohmann::json RewriteReportToJson(const RewriteReport& report);

}  // namespace ganon

#endif  // GANON_REWRITER_H_
