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

#ifndef GANON_APPORTION_H_
#define GANON_APPORTION_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace ganon {

// Largest-remainder (Hamilton) apportionment. Each entry receives the floor
// of its quota; the units still missing from `total` go to the entries with
// the largest fractional parts, lowest index first on ties. The quotas must be
// non-negative and sum to `total` up to floating-point error.
absl::StatusOr<std::vector<int64_t>> LargestRemainder(
    std::span<const double> quotas, int64_t total);

}  // namespace ganon

#endif  // GANON_APPORTION_H_
