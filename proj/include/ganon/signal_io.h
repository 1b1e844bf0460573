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


// Plain-text exchange formats for signals and matrices.

#ifndef GANON_SIGNAL_IO_H_
#define GANON_SIGNAL_IO_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ganon/wavelet.h"

namespace ganon {

// One value per line, 12 significant digits, LF endings.
absl::Status WriteSignalCsv(std::span<const double> values,
                            std::ostream& output);
absl::Status WriteSignalCsv(std::span<const int64_t> values,
                            std::ostream& output);

// Accepts blank trailing lines and CRLF endings.
absl::StatusOr<std::vector<double>> ReadSignalCsv(std::istream& input);

// Row-major grid, comma separated, 12 significant digits.
absl::Status WriteMatrixCsv(const Matrix& matrix, std::ostream& output);

}  // namespace ganon

#endif  // GANON_SIGNAL_IO_H_
