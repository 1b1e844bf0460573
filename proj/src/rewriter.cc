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


#include "ganon/rewriter.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "absl/strings/str_cat.h"
#include "ganon/random.h"
#include "ganon/status_macros.h"

namespace ganon {

namespace {

using nlohmann::json;

struct ResolvedParameter {
  size_t attribute = 0;
  std::vector<CodeId> order;
};

absl::StatusOr<ResolvedParameter> ResolveParameter(const AttributeSchema& schema,
                                                   const ParameterSpec& spec) {
  ResolvedParameter out;
  std::optional<size_t> index = schema.IndexOf(spec.attribute);
  if (!index.has_value()) {
    return absl::NotFoundError(
        absl::StrCat("unknown parameter attribute '", spec.attribute, "'"));
  }
  out.attribute = *index;
  for (const std::string& code : spec.order) {
    std::optional<CodeId> id = schema.CodeIndex(out.attribute, code);
    if (!id.has_value()) {
      return absl::NotFoundError(absl::StrCat(
          "parameter value '", code, "' is not in the domain of '",
          spec.attribute, "'"));
    }
    out.order.push_back(*id);
  }
  return out;
}

}  // namespace

absl::StatusOr<MovePlan> PlanMoves(const Microfile& file,
                                   const VitalSelection& selection,
                                   const ParameterSpec& spec,
                                   const QuantitySignal& current,
                                   std::span<const int64_t> target,
                                   uint64_t seed) {
  const size_t m = spec.order.size();
  if (current.counts.size() != m || target.size() != m) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected signals of length ", m, ", got current ",
                     current.counts.size(), " and target ", target.size()));
  }
  for (size_t i = 0; i < m; ++i) {
    if (target[i] < 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("target count at position ", i + 1, " is negative"));
    }
  }
  const int64_t target_total =
      std::accumulate(target.begin(), target.end(), int64_t{0});
  if (target_total != current.total()) {
    return absl::InvalidArgumentError(
        absl::StrCat("target sums to ", target_total, " but current sums to ",
                     current.total()));
  }
  GANON_ASSIGN_OR_RETURN(QuantitySignal recount,
                         ComputeQuantitySignal(file, selection, spec));
  if (recount.counts != current.counts) {
    return absl::FailedPreconditionError(
        "current quantity signal does not match the microfile");
  }

  GANON_ASSIGN_OR_RETURN(ResolvedParameter parameter,
                         ResolveParameter(file.schema(), spec));
  GANON_ASSIGN_OR_RETURN(SelectionMatcher matcher,
                         SelectionMatcher::Create(file.schema(), selection));

  // Matching records of every surplus position, in file order.
  constexpr size_t kSkip = static_cast<size_t>(-1);
  std::vector<size_t> slot(
      file.schema().attribute(parameter.attribute).codes.size(), kSkip);
  for (size_t i = 0; i < m; ++i) {
    if (current.counts[i] > target[i]) slot[parameter.order[i]] = i;
  }
  std::vector<std::vector<size_t>> members(m);
  for (size_t r = 0; r < file.record_count(); ++r) {
    const size_t i = slot[file.code_id(r, parameter.attribute)];
    if (i != kSkip && matcher.Matches(file, r)) members[i].push_back(r);
  }

  std::mt19937_64 gen(seed);
  struct Donor {
    size_t record;
    size_t from;
  };
  std::vector<Donor> donors;
  for (size_t i = 0; i < m; ++i) {
    const int64_t surplus = current.counts[i] - target[i];
    if (surplus <= 0) continue;
    std::span<size_t> pool(members[i]);
    PartialShuffle(pool, static_cast<size_t>(surplus), gen);
    for (int64_t j = 0; j < surplus; ++j) {
      donors.push_back({pool[static_cast<size_t>(j)], i});
    }
  }
  std::sort(donors.begin(), donors.end(),
            [](const Donor& a, const Donor& b) { return a.record < b.record; });

  MovePlan plan;
  plan.selection = selection;
  plan.parameter = spec.attribute;
  plan.seed = seed;
  size_t next = 0;
  for (size_t i = 0; i < m; ++i) {
    for (int64_t deficit = target[i] - current.counts[i]; deficit > 0;
         --deficit) {
      if (next == donors.size()) {
        return absl::InternalError("ran out of donor records");
      }
      const Donor& donor = donors[next++];
      plan.moves.push_back(
          {donor.record, spec.order[donor.from], spec.order[i]});
    }
  }
  std::sort(plan.moves.begin(), plan.moves.end(),
            [](const RecordMove& a, const RecordMove& b) {
              return a.record < b.record;
            });
  return plan;
}

absl::StatusOr<std::pair<Microfile, RewriteReport>> ApplyMoves(
    const Microfile& file, const MovePlan& plan, const ParameterSpec& spec) {
  if (plan.parameter != spec.attribute) {
    return absl::InvalidArgumentError(
        absl::StrCat("plan rewrites '", plan.parameter,
                     "' but the parameter attribute is '", spec.attribute,
                     "'"));
  }
  const AttributeSchema& schema = file.schema();
  GANON_ASSIGN_OR_RETURN(ResolvedParameter parameter,
                         ResolveParameter(schema, spec));
  GANON_ASSIGN_OR_RETURN(SelectionMatcher matcher,
                         SelectionMatcher::Create(schema, plan.selection));

  RewriteReport report;
  report.parameter = spec.attribute;
  std::vector<std::pair<size_t, CodeId>> changes;
  changes.reserve(plan.moves.size());
  std::vector<bool> seen(file.record_count(), false);
  for (const RecordMove& move : plan.moves) {
    if (move.record >= file.record_count()) {
      return absl::OutOfRangeError(
          absl::StrCat("plan moves record ", move.record,
                       " but the microfile has ", file.record_count()));
    }
    if (seen[move.record]) {
      return absl::InvalidArgumentError(
          absl::StrCat("record ", move.record, " is moved twice"));
    }
    seen[move.record] = true;
    if (file.code(move.record, parameter.attribute) != move.from) {
      return absl::FailedPreconditionError(absl::StrCat(
          "stale plan: record ", move.record, " has '",
          file.code(move.record, parameter.attribute), "', plan expects '",
          move.from, "'"));
    }
    if (!matcher.Matches(file, move.record)) {
      return absl::FailedPreconditionError(absl::StrCat(
          "record ", move.record, " does not match the plan's selection"));
    }
    std::optional<CodeId> to = schema.CodeIndex(parameter.attribute, move.to);
    if (!to.has_value()) {
      return absl::NotFoundError(absl::StrCat(
          "destination '", move.to, "' is not in the domain of '",
          spec.attribute, "'"));
    }
    changes.emplace_back(move.record, *to);
    ++report.transfers[{move.from, move.to}];
  }

  GANON_ASSIGN_OR_RETURN(QuantitySignal before,
                         ComputeQuantitySignal(file, plan.selection, spec));
  GANON_ASSIGN_OR_RETURN(
      Microfile rewritten,
      file.WithReassigned(schema, parameter.attribute, changes));
  GANON_ASSIGN_OR_RETURN(QuantitySignal after,
                         ComputeQuantitySignal(rewritten, plan.selection, spec));
  report.before = std::move(before.counts);
  report.after = std::move(after.counts);
  return std::make_pair(std::move(rewritten), std::move(report));
}

json MovePlanToJson(const MovePlan& plan) {
  json moves = json::array();
  for (const RecordMove& move : plan.moves) {
    moves.push_back({{"record", move.record}, {"from", move.from},
                     {"to", move.to}});
  }
  return {{"selection",
           {{"attributes", plan.selection.attributes},
            {"combinations", plan.selection.combinations}}},
          {"parameter", plan.parameter},
          {"seed", plan.seed},
          {"moves", std::move(moves)}};
}

absl::StatusOr<MovePlan> MovePlanFromJson(const json& input) {
  MovePlan plan;
  try {
    const json& selection = input.at("selection");
    selection.at("attributes").get_to(plan.selection.attributes);
    selection.at("combinations").get_to(plan.selection.combinations);
    input.at("parameter").get_to(plan.parameter);
    input.at("seed").get_to(plan.seed);
    for (const json& move : input.at("moves")) {
      plan.moves.push_back({move.at("record").get<size_t>(),
                            move.at("from").get<std::string>(),
                            move.at("to").get<std::string>()});
    }
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed move plan: ", e.what()));
  }
  return plan;
}

json RewriteReportToJson(const RewriteReport& report) {
  json transfers = json::array();
  for (const auto& [pair, count] : report.transfers) {
    transfers.push_back(
        {{"from", pair.first}, {"to", pair.second}, {"records", count}});
  }
  json out = {{"parameter", report.parameter},
              {"transfers", std::move(transfers)},
              {"before", report.before},
              {"after", report.after}};
  out["detail_drift"] = report.detail_drift.has_value()
                            ? json(*report.detail_drift)
                            : json(nullptr);
  return out;
}

}  // namespace ganon
