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

#ifndef GANON_RANDOM_H_
#define GANON_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>

namespace ganon {

// std::uniform_int_distribution and std::shuffle are implementation-defined,
// so seeded draws go through these helpers to stay identical across standard
// libraries.

// Uniform integer in [0, bound). `bound` must be positive.
uint64_t UniformBelow(std::mt19937_64& gen, uint64_t bound);

// Fisher-Yates over the first `count` positions: afterwards items[0, count)
// is a uniform sample without replacement of the whole range.
template <typename T>
void PartialShuffle(std::span<T> items, size_t count, std::mt19937_64& gen) {
  const size_t n = items.size();
  for (size_t i = 0; i < count && i + 1 < n; ++i) {
    const size_t j = i + static_cast<size_t>(UniformBelow(gen, n - i));
    std::swap(items[i], items[j]);
  }
}

}  // namespace ganon

#endif  // GANON_RANDOM_H_
