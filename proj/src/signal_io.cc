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


#include "ganon/signal_io.h"

#include <cmath>
#include <string>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace ganon {

absl::Status WriteSignalCsv(std::span<const double> values,
                            std::ostream& output) {
  for (double v : values) output << absl::StrFormat("%.12g\n", v);
  if (!output) return absl::DataLossError("write error");
  return absl::OkStatus();
}

absl::Status WriteSignalCsv(std::span<const int64_t> values,
                            std::ostream& output) {
  for (int64_t v : values) output << v << '\n';
  if (!output) return absl::DataLossError("write error");
  return absl::OkStatus();
}

absl::StatusOr<std::vector<double>> ReadSignalCsv(std::istream& input) {
  std::vector<double> values;
  std::string line;
  size_t line_number = 0;
  size_t blank_since = 0;
  while (std::getline(input, line)) {
    ++line_number;
    absl::string_view text = absl::StripAsciiWhitespace(line);
    if (text.empty()) {
      if (blank_since == 0) blank_since = line_number;
      continue;
    }
    if (blank_since != 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", blank_since, ": blank line inside signal"));
    }
    double v = 0.0;
    if (!absl::SimpleAtod(text, &v) || !std::isfinite(v)) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_number, ": '", text, "' is not a number"));
    }
    values.push_back(v);
  }
  return values;
}

absl::Status WriteMatrixCsv(const Matrix& matrix, std::ostream& output) {
  for (size_t r = 0; r < matrix.rows(); ++r) {
    for (size_t c = 0; c < matrix.cols(); ++c) {
      if (c > 0) output << ',';
      output << absl::StrFormat("%.12g", matrix(r, c));
    }
    output << '\n';
  }
  if (!output) return absl::DataLossError("write error");
  return absl::OkStatus();
}

}  // namespace ganon
