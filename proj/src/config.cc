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


#include "ganon/config.h"

#include <fstream>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ganon/status_macros.h"

namespace ganon {

namespace {

using nlohmann::json;

LabeledSelection SelectionFromJson(const json& input, absl::string_view role) {
  LabeledSelection out;
  out.label = input.value("label", std::string(role));
  input.at("attributes").get_to(out.selection.attributes);
  input.at("combinations").get_to(out.selection.combinations);
  return out;
}

absl::Status CheckSelection(const LabeledSelection& s, absl::string_view role) {
  const VitalSelection& v = s.selection;
  if (v.attributes.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat(role, ": no vital attributes"));
  }
  for (size_t i = 0; i < v.attributes.size(); ++i) {
    for (size_t j = i + 1; j < v.attributes.size(); ++j) {
      if (v.attributes[i] == v.attributes[j]) {
        return absl::InvalidArgumentError(absl::StrCat(
            role, ": vital attribute '", v.attributes[i], "' repeated"));
      }
    }
  }
  if (v.combinations.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat(role, ": no vital combinations"));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<json> ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream input(path);
  if (!input) {
    return absl::NotFoundError(
        absl::StrCat("cannot open '", path.string(), "'"));
  }
  try {
    return json::parse(input);
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat(path.string(), ": ", e.what()));
  }
}

absl::StatusOr<Config> ConfigFromJson(const json& input,
                                      const std::filesystem::path& base_dir) {
  Config config;
  try {
    std::filesystem::path microfile =
        input.at("microfile").get<std::string>();
    config.microfile =
        microfile.is_absolute() ? microfile : base_dir / microfile;

    std::vector<Attribute> attributes;
    for (const json& a : input.at("schema")) {
      attributes.push_back({a.at("name").get<std::string>(),
                            a.at("codes").get<std::vector<std::string>>()});
    }
    GANON_ASSIGN_OR_RETURN(config.schema,
                           AttributeSchema::Create(std::move(attributes)));

    const json& parameter = input.at("parameter");
    parameter.at("attribute").get_to(config.parameter.attribute);
    parameter.at("order").get_to(config.parameter.order);
    config.parameter.strict = parameter.value("strict", true);
    if (parameter.contains("split_rules")) {
      for (const json& rule : parameter.at("split_rules")) {
        SplitRule r;
        rule.at("source").get_to(r.source);
        for (const json& share : rule.at("shares")) {
          r.shares.push_back({share.at("code").get<std::string>(),
                              share.at("weight").get<double>()});
        }
        config.parameter.split_rules.push_back(std::move(r));
      }
    }
    config.split_seed = input.value("split_seed", uint64_t{0});

    config.main = SelectionFromJson(input.at("main"), "main");
    config.subordinate =
        SelectionFromJson(input.at("subordinate"), "subordinate");
    const json& superset = input.value("superset", json("all"));
    if (superset.is_string()) {
      if (superset.get<std::string>() != "all") {
        return absl::InvalidArgumentError(
            "superset must be \"all\" or a selection object");
      }
    } else {
      config.superset = SelectionFromJson(superset, "superset");
    }
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed configuration: ", e.what()));
  }

  GANON_RETURN_IF_ERROR(CheckSelection(config.main, "main"));
  GANON_RETURN_IF_ERROR(CheckSelection(config.subordinate, "subordinate"));
  if (config.superset.has_value()) {
    GANON_RETURN_IF_ERROR(CheckSelection(*config.superset, "superset"));
  }
  const std::vector<std::string>& order = config.parameter.order;
  if (order.size() < 2) {
    return absl::InvalidArgumentError(
        "parameter order needs at least two values");
  }
  for (size_t i = 0; i < order.size(); ++i) {
    for (size_t j = i + 1; j < order.size(); ++j) {
      if (order[i] == order[j]) {
        return absl::InvalidArgumentError(
            absl::StrCat("parameter value '", order[i], "' repeated"));
      }
    }
  }
  return config;
}

absl::StatusOr<Config> LoadConfig(const std::filesystem::path& path) {
  GANON_ASSIGN_OR_RETURN(json input, ReadJsonFile(path));
  return ConfigFromJson(input,
                        std::filesystem::absolute(path).parent_path());
}

absl::StatusOr<MaskingPlan> PlanFromJson(const json& input) {
  MaskingPlan plan;
  try {
    plan.basis = input.value("basis", std::string("db1"));
    const json& level = input.value("level", json(2));
    if (!level.is_number_integer() || level.get<int64_t>() < 1) {
      return absl::InvalidArgumentError("level must be a positive integer");
    }
    plan.level = level.get<size_t>();
    input.at("a_tilde").get_to(plan.a_tilde);
    const json& alpha = input.value("alpha", json(1.0));
    if (alpha.is_array()) {
      plan.alpha = SplitWeights::PerIndex(alpha.get<std::vector<double>>());
    } else {
      plan.alpha = SplitWeights::Uniform(alpha.get<double>());
    }
    plan.seed = input.value("seed", uint64_t{0});
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed masking plan: ", e.what()));
  }
  if (plan.a_tilde.empty()) {
    return absl::InvalidArgumentError("a_tilde is empty");
  }
  GANON_RETURN_IF_ERROR(plan.alpha.Validate(plan.alpha.weights().size()));
  GANON_RETURN_IF_ERROR(WaveletBasis::FromName(plan.basis).status());
  return plan;
}

absl::StatusOr<MaskingPlan> LoadPlan(const std::filesystem::path& path) {
  GANON_ASSIGN_OR_RETURN(json input, ReadJsonFile(path));
  return PlanFromJson(input);
}

json PlanToJson(const MaskingPlan& plan) {
  json alpha = plan.alpha.is_uniform() ? json(plan.alpha[0])
                                       : json(plan.alpha.weights());
  return {{"basis", plan.basis},     {"level", plan.level},
          {"a_tilde", plan.a_tilde}, {"alpha", std::move(alpha)},
          {"seed", plan.seed}};
}

}  // namespace ganon
