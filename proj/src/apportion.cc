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

#include "ganon/apportion.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace ganon {

absl::StatusOr<std::vector<int64_t>> LargestRemainder(
    std::span<const double> quotas, int64_t total) {
  if (total < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("apportionment total must be non-negative, got ", total));
  }
  std::vector<int64_t> seats(quotas.size(), 0);
  std::vector<double> remainder(quotas.size(), 0.0);
  int64_t assigned = 0;
  for (size_t i = 0; i < quotas.size(); ++i) {
    if (!std::isfinite(quotas[i]) || quotas[i] < 0.0) {
      return absl::InvalidArgumentError(
          absl::StrCat("quota ", i, " is negative or not finite: ", quotas[i]));
    }
    const double floor_value = std::floor(quotas[i]);
    seats[i] = static_cast<int64_t>(floor_value);
    remainder[i] = quotas[i] - floor_value;
    assigned += seats[i];
  }
  const int64_t missing = total - assigned;
  if (missing < 0 || missing > static_cast<int64_t>(quotas.size())) {
    return absl::InvalidArgumentError(
        absl::StrCat("quotas do not sum to ", total, " (floors sum to ",
                     assigned, ")"));
  }
  std::vector<size_t> order(quotas.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return remainder[a] > remainder[b];
  });
  for (int64_t k = 0; k < missing; ++k) ++seats[order[k]];
  return seats;
}

}  // namespace ganon
