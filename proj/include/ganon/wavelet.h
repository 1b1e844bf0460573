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

// Orthogonal two-channel filter banks with periodic boundary handling.
//
// One analysis level maps a signal s of even length m to
//
//   a[i] = sum_j low[j]  * s[(2i + j - c) mod m]
//   d[i] = sum_j high[j] * s[(2i + j - c) mod m],   i = 0 .. m/2 - 1,
//
// where c = n/2 - 1 centres a filter of length n on the sample pair
// (2i, 2i + 1). For the Haar filter c = 0. Synthesis is the transpose, which
// is also the inverse because the periodised bank is orthogonal. Reconstruction
// matrices built from this convention carry their wrap-around entries in the
// bottom-left and top-right corners.

#ifndef GANON_WAVELET_H_
#define GANON_WAVELET_H_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace ganon {

class WaveletBasis {
 public:
  // "db1" (Haar) or "db2".
  static absl::StatusOr<WaveletBasis> FromName(absl::string_view name);

  // Custom orthonormal low-pass filter. The high-pass filter is the
  // alternating flip high[j] = (-1)^j low[n-1-j].
  static absl::StatusOr<WaveletBasis> FromLowPass(std::string name,
                                                  std::vector<double> low_pass);

  const std::string& name() const { return name_; }
  std::span<const double> low_pass() const { return low_; }
  std::span<const double> high_pass() const { return high_; }
  size_t length() const { return low_.size(); }

 private:
  WaveletBasis(std::string name, std::vector<double> low,
               std::vector<double> high)
      : name_(std::move(name)), low_(std::move(low)), high_(std::move(high)) {}

  std::string name_;
  std::vector<double> low_;
  std::vector<double> high_;
};

struct Decomposition {
  size_t level = 0;
  size_t signal_length = 0;
  // Length signal_length / 2^level.
  std::vector<double> approximation;
  // details[i] holds level i + 1 coefficients, length signal_length / 2^(i+1).
  std::vector<std::vector<double>> details;
};

// Requires level >= 1 and a signal length divisible by 2^level.
absl::StatusOr<Decomposition> Decompose(std::span<const double> signal,
                                        const WaveletBasis& basis,
                                        size_t level);

absl::StatusOr<std::vector<double>> Reconstruct(const Decomposition& dec,
                                                const WaveletBasis& basis);

// Dense row-major matrix; just enough for reconstruction matrices.
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  double& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  double operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  std::vector<double> Apply(std::span<const double> x) const;
  std::vector<double> ApplyTransposed(std::span<const double> y) const;
  Matrix operator*(const Matrix& other) const;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<double> data_;
};

// Level-`level` approximation coefficients to the length-`length` approximation
// signal: the product of `level` per-level synthesis (upsample, then periodic
// low-pass convolution) matrices. Column j is the approximation generated by
// the j-th unit coefficient.
absl::StatusOr<Matrix> ReconstructionMatrix(const WaveletBasis& basis,
                                            size_t length, size_t level);

// The filter route to the same maps: upsample and convolve level by level.
absl::StatusOr<std::vector<double>> ApproximationFromCoefficients(
    std::span<const double> approximation, const WaveletBasis& basis,
    size_t length, size_t level);
absl::StatusOr<std::vector<double>> DetailFromCoefficients(
    std::span<const double> detail, const WaveletBasis& basis, size_t length,
    size_t level);

struct ApproximationSplit {
  std::vector<double> coefficients;  // a_k
  std::vector<double> approximation;  // A_k
  std::vector<double> details_sum;    // D_1 + ... + D_k = s - A_k
};

absl::StatusOr<ApproximationSplit> ApproximationAndDetails(
    std::span<const double> signal, const WaveletBasis& basis, size_t level);

}  // namespace ganon

#endif  // GANON_WAVELET_H_
