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

#include "ganon/wavelet.h"

#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ganon/status_macros.h"

namespace ganon {

namespace {

constexpr double kFilterTolerance = 1e-12;

absl::Status CheckLevel(size_t length, size_t level) {
  if (level == 0) {
    return absl::InvalidArgumentError("decomposition level must be >= 1");
  }
  if (level >= 8 * sizeof(size_t) || length == 0 ||
      length % (size_t{1} << level) != 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("signal length ", length, " is not divisible by 2^",
                     level));
  }
  return absl::OkStatus();
}

// Offset of the first tap relative to sample 2i.
long FilterOffset(size_t filter_length) {
  return -(static_cast<long>(filter_length) / 2 - 1);
}

size_t Wrap(long index, size_t length) {
  const long m = static_cast<long>(length);
  return static_cast<size_t>(((index % m) + m) % m);
}

// One analysis level: filter, then keep one sample in two.
std::vector<double> AnalyzeLevel(std::span<const double> signal,
                                 std::span<const double> filter) {
  const size_t half = signal.size() / 2;
  const long offset = FilterOffset(filter.size());
  std::vector<double> out(half, 0.0);
  for (size_t i = 0; i < half; ++i) {
    double acc = 0.0;
    for (size_t j = 0; j < filter.size(); ++j) {
      acc += filter[j] *
             signal[Wrap(static_cast<long>(2 * i + j) + offset, signal.size())];
    }
    out[i] = acc;
  }
  return out;
}

// One synthesis level: upsample by two, then filter. Adds into `out`, whose
// length is twice the coefficient count.
void SynthesizeLevel(std::span<const double> coefficients,
                     std::span<const double> filter, std::span<double> out) {
  const long offset = FilterOffset(filter.size());
  for (size_t i = 0; i < coefficients.size(); ++i) {
    for (size_t j = 0; j < filter.size(); ++j) {
      out[Wrap(static_cast<long>(2 * i + j) + offset, out.size())] +=
          filter[j] * coefficients[i];
    }
  }
}

std::vector<double> UpsampleConvolve(std::span<const double> coefficients,
                                     std::span<const double> filter) {
  std::vector<double> out(coefficients.size() * 2, 0.0);
  SynthesizeLevel(coefficients, filter, out);
  return out;
}

// Per-level synthesis matrix of shape (2 * cols) x cols.
Matrix SynthesisMatrix(std::span<const double> filter, size_t cols) {
  Matrix matrix(2 * cols, cols);
  const long offset = FilterOffset(filter.size());
  for (size_t c = 0; c < cols; ++c) {
    for (size_t j = 0; j < filter.size(); ++j) {
      matrix(Wrap(static_cast<long>(2 * c + j) + offset, 2 * cols), c) +=
          filter[j];
    }
  }
  return matrix;
}

}  // namespace

absl::StatusOr<WaveletBasis> WaveletBasis::FromName(absl::string_view name) {
  if (name == "db1" || name == "haar") {
    const double v = 1.0 / std::sqrt(2.0);
    return FromLowPass("db1", {v, v});
  }
  if (name == "db2") {
    const double r3 = std::sqrt(3.0);
    const double d = 4.0 * std::sqrt(2.0);
    return FromLowPass("db2",
                       {(1 + r3) / d, (3 + r3) / d, (3 - r3) / d, (1 - r3) / d});
  }
  return absl::NotFoundError(absl::StrCat("unknown wavelet basis '", name,
                                          "' (expected db1 or db2)"));
}

absl::StatusOr<WaveletBasis> WaveletBasis::FromLowPass(
    std::string name, std::vector<double> low_pass) {
  const size_t n = low_pass.size();
  if (n < 2 || n % 2 != 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("low-pass filter length must be even and >= 2, got ", n));
  }
  const double sum = std::accumulate(low_pass.begin(), low_pass.end(), 0.0);
  if (std::abs(sum - std::sqrt(2.0)) > kFilterTolerance) {
    return absl::InvalidArgumentError(absl::StrCat(
        "low-pass filter must sum to sqrt(2), sums to ", sum));
  }
  // Orthonormal to its own even shifts; shift 0 is the unit norm.
  for (size_t shift = 0; shift < n; shift += 2) {
    double dot = 0.0;
    for (size_t j = 0; j + shift < n; ++j) dot += low_pass[j] * low_pass[j + shift];
    const double expected = shift == 0 ? 1.0 : 0.0;
    if (std::abs(dot - expected) > kFilterTolerance) {
      return absl::InvalidArgumentError(absl::StrCat(
          "low-pass filter is not orthonormal: shift ", shift,
          " inner product is ", dot));
    }
  }
  std::vector<double> high_pass(n);
  for (size_t j = 0; j < n; ++j) {
    high_pass[j] = (j % 2 == 0 ? 1.0 : -1.0) * low_pass[n - 1 - j];
  }
  return WaveletBasis(std::move(name), std::move(low_pass),
                      std::move(high_pass));
}

absl::StatusOr<Decomposition> Decompose(std::span<const double> signal,
                                        const WaveletBasis& basis,
                                        size_t level) {
  GANON_RETURN_IF_ERROR(CheckLevel(signal.size(), level));
  Decomposition dec;
  dec.level = level;
  dec.signal_length = signal.size();
  std::vector<double> current(signal.begin(), signal.end());
  for (size_t k = 0; k < level; ++k) {
    dec.details.push_back(AnalyzeLevel(current, basis.high_pass()));
    current = AnalyzeLevel(current, basis.low_pass());
  }
  dec.approximation = std::move(current);
  return dec;
}

absl::StatusOr<std::vector<double>> Reconstruct(const Decomposition& dec,
                                                const WaveletBasis& basis) {
  GANON_RETURN_IF_ERROR(CheckLevel(dec.signal_length, dec.level));
  if (dec.details.size() != dec.level) {
    return absl::InvalidArgumentError(absl::StrCat(
        "decomposition has ", dec.details.size(), " detail levels, expected ",
        dec.level));
  }
  const size_t coarse = dec.signal_length >> dec.level;
  if (dec.approximation.size() != coarse) {
    return absl::InvalidArgumentError(
        absl::StrCat("approximation has ", dec.approximation.size(),
                     " coefficients, expected ", coarse));
  }
  std::vector<double> current = dec.approximation;
  for (size_t k = dec.level; k-- > 0;) {
    const std::vector<double>& detail = dec.details[k];
    if (detail.size() != current.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("level ", k + 1, " detail has ", detail.size(),
                       " coefficients, expected ", current.size()));
    }
    std::vector<double> finer(current.size() * 2, 0.0);
    SynthesizeLevel(current, basis.low_pass(), finer);
    SynthesizeLevel(detail, basis.high_pass(), finer);
    current = std::move(finer);
  }
  return current;
}

std::vector<double> Matrix::Apply(std::span<const double> x) const {
  std::vector<double> y(rows_, 0.0);
  for (size_t r = 0; r < rows_; ++r) {
    double acc = 0.0;
    for (size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * x[c];
    y[r] = acc;
  }
  return y;
}

std::vector<double> Matrix::ApplyTransposed(std::span<const double> y) const {
  std::vector<double> x(cols_, 0.0);
  for (size_t r = 0; r < rows_; ++r) {
    for (size_t c = 0; c < cols_; ++c) x[c] += (*this)(r, c) * y[r];
  }
  return x;
}

Matrix Matrix::operator*(const Matrix& other) const {
  Matrix product(rows_, other.cols_);
  for (size_t r = 0; r < rows_; ++r) {
    for (size_t k = 0; k < cols_; ++k) {
      const double v = (*this)(r, k);
      if (v == 0.0) continue;
      for (size_t c = 0; c < other.cols_; ++c) product(r, c) += v * other(k, c);
    }
  }
  return product;
}

absl::StatusOr<Matrix> ReconstructionMatrix(const WaveletBasis& basis,
                                            size_t length, size_t level) {
  GANON_RETURN_IF_ERROR(CheckLevel(length, level));
  // Finest level first: M = S_1 * S_2 * ... * S_k.
  Matrix result = SynthesisMatrix(basis.low_pass(), length / 2);
  for (size_t k = 2; k <= level; ++k) {
    result = result * SynthesisMatrix(basis.low_pass(), length >> k);
  }
  return result;
}

absl::StatusOr<std::vector<double>> ApproximationFromCoefficients(
    std::span<const double> approximation, const WaveletBasis& basis,
    size_t length, size_t level) {
  GANON_RETURN_IF_ERROR(CheckLevel(length, level));
  if (approximation.size() != (length >> level)) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected ", length >> level,
                     " approximation coefficients, got ",
                     approximation.size()));
  }
  std::vector<double> current(approximation.begin(), approximation.end());
  for (size_t k = 0; k < level; ++k) {
    current = UpsampleConvolve(current, basis.low_pass());
  }
  return current;
}

absl::StatusOr<std::vector<double>> DetailFromCoefficients(
    std::span<const double> detail, const WaveletBasis& basis, size_t length,
    size_t level) {
  GANON_RETURN_IF_ERROR(CheckLevel(length, level));
  if (detail.size() != (length >> level)) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected ", length >> level, " detail coefficients, got ",
                     detail.size()));
  }
  std::vector<double> current = UpsampleConvolve(detail, basis.high_pass());
  for (size_t k = 1; k < level; ++k) {
    current = UpsampleConvolve(current, basis.low_pass());
  }
  return current;
}

absl::StatusOr<ApproximationSplit> ApproximationAndDetails(
    std::span<const double> signal, const WaveletBasis& basis, size_t level) {
  GANON_ASSIGN_OR_RETURN(Decomposition dec, Decompose(signal, basis, level));
  GANON_ASSIGN_OR_RETURN(Matrix wrm,
                         ReconstructionMatrix(basis, signal.size(), level));
  ApproximationSplit split;
  split.coefficients = std::move(dec.approximation);
  split.approximation = wrm.Apply(split.coefficients);
  split.details_sum.resize(signal.size());
  for (size_t i = 0; i < signal.size(); ++i) {
    split.details_sum[i] = signal[i] - split.approximation[i];
  }
  return split;
}

}  // namespace ganon
