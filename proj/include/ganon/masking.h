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

// Concentration-difference masking.
//
// Given a main concentration signal c1 and a subordinate one c2 over the same
// parameter values, the difference delta = c1 - c2 is decomposed, its level-k
// approximation coefficients are replaced by analyst-chosen ones, and the old
// details are added back. The new difference is then split between the two
// concentration signals, turned back into record counts through the superset
// quantities, rescaled so the totals are unchanged, and rounded.

#ifndef GANON_MASKING_H_
#define GANON_MASKING_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ganon/wavelet.h"

namespace ganon {

// Share of the difference change carried by the main signal, per position:
// c1~ = c1 + w * change, c2~ = c2 - (1 - w) * change. A single weight is
// broadcast to every position.
class SplitWeights {
 public:
  SplitWeights() : weights_{1.0} {}
  static SplitWeights Uniform(double weight) { return SplitWeights({weight}); }
  static SplitWeights PerIndex(std::vector<double> weights) {
    return SplitWeights(std::move(weights));
  }

  bool is_uniform() const { return weights_.size() == 1; }
  double operator[](size_t i) const {
    return is_uniform() ? weights_[0] : weights_[i];
  }
  const std::vector<double>& weights() const { return weights_; }

  // Every weight in [0, 1]; per-index weights must match `length`.
  absl::Status Validate(size_t length) const;

 private:
  explicit SplitWeights(std::vector<double> weights)
      : weights_(std::move(weights)) {}
  std::vector<double> weights_;
};

struct DifferenceContext {
  std::vector<double> c1;
  std::vector<double> c2;
  std::vector<int64_t> superset;  // Q
  std::vector<int64_t> q1;
  std::vector<int64_t> q2;
  std::string basis;
  size_t level = 2;

  absl::Status Validate() const;
};

struct ConcentrationViolation {
  size_t index = 0;
  int signal = 1;  // 1 = main, 2 = subordinate
  double value = 0.0;
};

struct ResolvedConcentrations {
  std::vector<double> c1;
  std::vector<double> c2;
  std::vector<ConcentrationViolation> violations;

  bool feasible() const { return violations.empty(); }
};

struct Rescaled {
  double gamma = 1.0;
  std::vector<int64_t> values;
};

struct Extremum {
  size_t index = 0;  // zero-based
  double value = 0.0;
};

struct MaskingResult {
  std::string basis;
  size_t level = 0;
  std::vector<double> delta;
  std::vector<double> coefficients;        // a_k of delta
  std::vector<double> replacement;         // a~_k
  std::vector<double> delta_tilde;
  SplitWeights weights;
  std::vector<double> c1_tilde;
  std::vector<double> c2_tilde;
  std::vector<double> q1_hat;
  std::vector<double> q2_hat;
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  std::vector<int64_t> q1_tilde;
  std::vector<int64_t> q2_tilde;
  // Difference signal of the rounded counts and its largest detail-coefficient
  // deviation from delta~.
  std::vector<double> realized_delta;
  double detail_drift = 0.0;
};

absl::StatusOr<std::vector<double>> DifferenceSignal(
    std::span<const double> c1, std::span<const double> c2);

// delta~ = M a~ + (delta - M a): the approximation is replaced, the details
// are kept.
absl::StatusOr<std::vector<double>> Remask(std::span<const double> delta,
                                           const WaveletBasis& basis,
                                           size_t level,
                                           std::span<const double> replacement);

// Always returns both signals; out-of-range entries are listed as violations.
absl::StatusOr<ResolvedConcentrations> ResolveConcentrations(
    const DifferenceContext& ctx, std::span<const double> delta_tilde,
    const SplitWeights& weights);

absl::StatusOr<std::vector<double>> SynthesizeQuantities(
    std::span<const double> concentration, std::span<const int64_t> superset);

// gamma = target / sum(values); output is the largest-remainder rounding of
// gamma * values, summing to `target` exactly.
absl::StatusOr<Rescaled> RescaleAndRound(std::span<const double> values,
                                         int64_t target);

// Descending by value, ties by ascending index.
std::vector<Extremum> ExtremumReport(std::span<const double> signal,
                                     size_t top);

// Largest absolute difference between the detail coefficients of two signals.
absl::StatusOr<double> DetailDrift(std::span<const double> reference,
                                   std::span<const double> candidate,
                                   const WaveletBasis& basis, size_t level);

// The whole pipeline from context and replacement coefficients to integer
// quantities. Infeasible concentrations or negative synthesized quantities
// fail with the offending positions in the message.
absl::StatusOr<MaskingResult> RunMasking(const DifferenceContext& ctx,
                                         std::span<const double> replacement,
                                         const SplitWeights& weights);

}  // namespace ganon

#endif  // GANON_MASKING_H_
