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


// Eight-region toy census shared by the session and service tests.

#ifndef GANON_TESTS_TESTING_SMALL_CENSUS_H_
#define GANON_TESTS_TESTING_SMALL_CENSUS_H_

#include <array>
#include <string>
#include <vector>

#include "ganon/config.h"
#include "ganon/microdata.h"
#include "ganon/pipeline.h"

namespace ganon::testing {

inline constexpr std::array<int, 8> kSmallMain = {30, 25, 40, 10,
                                                  22, 35, 18, 27};
inline constexpr std::array<int, 8> kSmallSubordinate = {28, 27, 33, 12,
                                                         20, 30, 21, 25};
inline constexpr int kSmallOthers = 400;

inline Config SmallConfig() {
  Config config;
  std::vector<std::string> regions;
  for (int i = 1; i <= 8; ++i) regions.push_back("R" + std::to_string(i));
  config.schema = *AttributeSchema::Create(
      {{"SEX", {"1", "2"}}, {"AGE", {"Y", "O"}}, {"REG", regions}});
  config.parameter.attribute = "REG";
  config.parameter.order = regions;
  config.main = {"young men", {{"SEX", "AGE"}, {{"1", "Y"}}}};
  config.subordinate = {"young women", {{"SEX", "AGE"}, {{"2", "Y"}}}};
  return config;
}

inline Microfile SmallMicrofile() {
  const Config config = SmallConfig();
  MicrofileBuilder builder(config.schema);
  for (size_t r = 0; r < 8; ++r) {
    const std::string reg = config.parameter.order[r];
    for (int i = 0; i < kSmallMain[r]; ++i) {
      (void)builder.AddRecord({"1", "Y", reg});
    }
    for (int i = 0; i < kSmallSubordinate[r]; ++i) {
      (void)builder.AddRecord({"2", "Y", reg});
    }
    for (int i = 0; i < kSmallOthers; ++i) {
      (void)builder.AddRecord({i % 2 ? "2" : "1", "O", reg});
    }
  }
  return std::move(builder).Build();
}

inline Extraction SmallExtraction() {
  return *ExtractFrom(SmallConfig(), SmallMicrofile());
}

}  // namespace ganon::testing

#endif  // GANON_TESTS_TESTING_SMALL_CENSUS_H_
