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


// JSON documents driving the command-line tools.
//
// Configuration:
//
//   {
//     "microfile": "people.csv",            // relative to the config file
//     "schema": [{"name": "SEX", "codes": ["1", "2"]}, ...],
//     "parameter": {
//       "attribute": "REGION",
//       "order": ["1P", "1V", "3", ...],
//       "strict": true,                        // optional, default true
//       "split_rules": [                       // optional
//         {"source": "1", "shares": [{"code": "1P", "weight": 0.97}, ...]}
//       ]
//     },
//     "split_seed": 0,                         // optional, default 0
//     "main": {"label": "...", "attributes": [...], "combinations": [[...]]},
//     "subordinate": {...},
//     "superset": "all"                        // or a selection object
//   }
//
// Masking plan:
//
//   {"basis": "db1", "level": 2, "a_tilde": [...], "alpha": 1.0, "seed": 7}
//
// "alpha" is either one weight or one weight per signal position.

#ifndef GANON_CONFIG_H_
#define GANON_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "ganon/masking.h"
#include "ganon/microdata.h"
#include "json.hpp"

namespace ganon {

struct LabeledSelection {
  std::string label;
  VitalSelection selection;
};

struct Config {
  std::filesystem::path microfile;  // absolute once loaded from a file
  AttributeSchema schema;
  ParameterSpec parameter;
  uint64_t split_seed = 0;
  LabeledSelection main;
  LabeledSelection subordinate;
  // Empty means every record.
  std::optional<LabeledSelection> superset;
};

// Relative microfile paths are resolved against `base_dir`.
absl::StatusOr<Config> ConfigFromJson(const nlohmann::json& json,
                                      const std::filesystem::path& base_dir);
absl::StatusOr<Config> LoadConfig(const std::filesystem::path& path);

struct MaskingPlan {
  std::string basis = "db1";
  size_t level = 2;
  std::vector<double> a_tilde;
  SplitWeights alpha;
  uint64_t seed = 0;
};

absl::StatusOr<MaskingPlan> PlanFromJson(const nlohmann::json& json);
absl::StatusOr<MaskingPlan> LoadPlan(const std::filesystem::path& path);
nlohmann::json PlanToJson(const MaskingPlan& plan);

// Shared by the loaders; reports a path-qualified parse error.
absl::StatusOr<nlohmann::json> ReadJsonFile(const std::filesystem::path& path);

}  // namespace ganon

#endif  // GANON_CONFIG_H_
