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

#include "ganon/masking.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "ganon/apportion.h"
#include "ganon/status_macros.h"

namespace ganon {

namespace {

std::string ViolationList(std::span<const ConcentrationViolation> violations) {
  return absl::StrJoin(
      violations, ", ", [](std::string* out, const ConcentrationViolation& v) {
        absl::StrAppend(out, "c", v.signal, "[", v.index + 1, "]=", v.value);
      });
}

}  // namespace

absl::Status SplitWeights::Validate(size_t length) const {
  if (!is_uniform() && weights_.size() != length) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected 1 or ", length, " split weights, got ",
                     weights_.size()));
  }
  for (size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] >= 0.0 && weights_[i] <= 1.0)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "split weight ", i + 1, " = ", weights_[i], " outside [0, 1]"));
    }
  }
  return absl::OkStatus();
}

absl::Status DifferenceContext::Validate() const {
  const size_t m = c1.size();
  if (c2.size() != m || superset.size() != m || q1.size() != m ||
      q2.size() != m) {
    return absl::InvalidArgumentError(
        "difference context vectors have different lengths");
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<double>> DifferenceSignal(
    std::span<const double> c1, std::span<const double> c2) {
  if (c1.size() != c2.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "signal lengths differ: ", c1.size(), " vs ", c2.size()));
  }
  std::vector<double> delta(c1.size());
  for (size_t i = 0; i < c1.size(); ++i) delta[i] = c1[i] - c2[i];
  return delta;
}

absl::StatusOr<std::vector<double>> Remask(
    std::span<const double> delta, const WaveletBasis& basis, size_t level,
    std::span<const double> replacement) {
  GANON_ASSIGN_OR_RETURN(ApproximationSplit split,
                         ApproximationAndDetails(delta, basis, level));
  if (replacement.size() != split.coefficients.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected ", split.coefficients.size(),
                     " replacement coefficients, got ", replacement.size()));
  }
  GANON_ASSIGN_OR_RETURN(Matrix wrm,
                         ReconstructionMatrix(basis, delta.size(), level));
  std::vector<double> result = wrm.Apply(replacement);
  for (size_t i = 0; i < result.size(); ++i) result[i] += split.details_sum[i];
  return result;
}

absl::StatusOr<ResolvedConcentrations> ResolveConcentrations(
    const DifferenceContext& ctx, std::span<const double> delta_tilde,
    const SplitWeights& weights) {
  GANON_RETURN_IF_ERROR(ctx.Validate());
  const size_t m = ctx.c1.size();
  if (delta_tilde.size() != m) {
    return absl::InvalidArgumentError(absl::StrCat(
        "new difference has length ", delta_tilde.size(), ", expected ", m));
  }
  GANON_RETURN_IF_ERROR(weights.Validate(m));
  ResolvedConcentrations out;
  out.c1.resize(m);
  out.c2.resize(m);
  for (size_t i = 0; i < m; ++i) {
    const double change = delta_tilde[i] - (ctx.c1[i] - ctx.c2[i]);
    const double w = weights[i];
    if (w == 1.0) {
      out.c1[i] = ctx.c2[i] + delta_tilde[i];
      out.c2[i] = ctx.c2[i];
    } else if (w == 0.0) {
      out.c1[i] = ctx.c1[i];
      out.c2[i] = ctx.c1[i] - delta_tilde[i];
    } else {
      out.c1[i] = ctx.c1[i] + w * change;
      out.c2[i] = ctx.c2[i] - (1.0 - w) * change;
    }
  }
  for (int signal = 1; signal <= 2; ++signal) {
    const std::vector<double>& values = signal == 1 ? out.c1 : out.c2;
    for (size_t i = 0; i < m; ++i) {
      if (values[i] < 0.0 || values[i] > 1.0) {
        out.violations.push_back({i, signal, values[i]});
      }
    }
  }
  return out;
}

absl::StatusOr<std::vector<double>> SynthesizeQuantities(
    std::span<const double> concentration, std::span<const int64_t> superset) {
  if (concentration.size() != superset.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("concentration has length ", concentration.size(),
                     ", superset has ", superset.size()));
  }
  std::vector<size_t> negative;
  std::vector<double> out(concentration.size());
  for (size_t i = 0; i < concentration.size(); ++i) {
    if (concentration[i] < 0.0) negative.push_back(i + 1);
    out[i] = concentration[i] * static_cast<double>(superset[i]);
  }
  if (!negative.empty()) {
    return absl::FailedPreconditionError(
        absl::StrCat("negative concentration at positions ",
                     absl::StrJoin(negative, ",")));
  }
  return out;
}

absl::StatusOr<Rescaled> RescaleAndRound(std::span<const double> values,
                                         int64_t target) {
  if (target < 0) {
    return absl::InvalidArgumentError("target sum must be non-negative");
  }
  std::vector<size_t> negative;
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0.0) negative.push_back(i + 1);
  }
  if (!negative.empty()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "negative quantities at positions ", absl::StrJoin(negative, ",")));
  }
  const double sum = std::accumulate(values.begin(), values.end(), 0.0);
  Rescaled out;
  if (sum <= 0.0) {
    if (target > 0) {
      return absl::FailedPreconditionError(
          absl::StrCat("cannot rescale an all-zero signal to ", target));
    }
    out.gamma = 1.0;
    out.values.assign(values.size(), 0);
    return out;
  }
  out.gamma = static_cast<double>(target) / sum;
  std::vector<double> quotas(values.size());
  for (size_t i = 0; i < values.size(); ++i) quotas[i] = out.gamma * values[i];
  GANON_ASSIGN_OR_RETURN(out.values, LargestRemainder(quotas, target));
  return out;
}

std::vector<Extremum> ExtremumReport(std::span<const double> signal,
                                     size_t top) {
  std::vector<Extremum> all;
  all.reserve(signal.size());
  for (size_t i = 0; i < signal.size(); ++i) all.push_back({i, signal[i]});
  std::stable_sort(all.begin(), all.end(),
                   [](const Extremum& a, const Extremum& b) {
                     return a.value > b.value;
                   });
  all.resize(std::min(top, all.size()));
  return all;
}

absl::StatusOr<double> DetailDrift(std::span<const double> reference,
                                   std::span<const double> candidate,
                                   const WaveletBasis& basis, size_t level) {
  if (reference.size() != candidate.size()) {
    return absl::InvalidArgumentError("signals have different lengths");
  }
  GANON_ASSIGN_OR_RETURN(Decomposition a, Decompose(reference, basis, level));
  GANON_ASSIGN_OR_RETURN(Decomposition b, Decompose(candidate, basis, level));
  double drift = 0.0;
  for (size_t k = 0; k < a.details.size(); ++k) {
    for (size_t i = 0; i < a.details[k].size(); ++i) {
      drift = std::max(drift, std::abs(a.details[k][i] - b.details[k][i]));
    }
  }
  return drift;
}

absl::StatusOr<MaskingResult> RunMasking(const DifferenceContext& ctx,
                                         std::span<const double> replacement,
                                         const SplitWeights& weights) {
  GANON_RETURN_IF_ERROR(ctx.Validate());
  GANON_ASSIGN_OR_RETURN(WaveletBasis basis, WaveletBasis::FromName(ctx.basis));

  MaskingResult result;
  result.basis = basis.name();
  result.level = ctx.level;
  result.weights = weights;
  GANON_ASSIGN_OR_RETURN(result.delta, DifferenceSignal(ctx.c1, ctx.c2));
  GANON_ASSIGN_OR_RETURN(Decomposition dec,
                         Decompose(result.delta, basis, ctx.level));
  result.coefficients = dec.approximation;
  result.replacement.assign(replacement.begin(), replacement.end());
  GANON_ASSIGN_OR_RETURN(
      result.delta_tilde,
      Remask(result.delta, basis, ctx.level, result.replacement));

  GANON_ASSIGN_OR_RETURN(
      ResolvedConcentrations resolved,
      ResolveConcentrations(ctx, result.delta_tilde, weights));
  if (!resolved.feasible()) {
    return absl::FailedPreconditionError(
        absl::StrCat("concentrations outside [0, 1]: ",
                     ViolationList(resolved.violations)));
  }
  result.c1_tilde = std::move(resolved.c1);
  result.c2_tilde = std::move(resolved.c2);

  GANON_ASSIGN_OR_RETURN(result.q1_hat,
                         SynthesizeQuantities(result.c1_tilde, ctx.superset));
  GANON_ASSIGN_OR_RETURN(result.q2_hat,
                         SynthesizeQuantities(result.c2_tilde, ctx.superset));
  const int64_t total1 = std::accumulate(ctx.q1.begin(), ctx.q1.end(), int64_t{0});
  const int64_t total2 = std::accumulate(ctx.q2.begin(), ctx.q2.end(), int64_t{0});
  GANON_ASSIGN_OR_RETURN(Rescaled main, RescaleAndRound(result.q1_hat, total1));
  GANON_ASSIGN_OR_RETURN(Rescaled sub, RescaleAndRound(result.q2_hat, total2));
  result.gamma1 = main.gamma;
  result.gamma2 = sub.gamma;
  result.q1_tilde = std::move(main.values);
  result.q2_tilde = std::move(sub.values);

  result.realized_delta.resize(result.delta.size());
  for (size_t i = 0; i < result.delta.size(); ++i) {
    const double whole = static_cast<double>(ctx.superset[i]);
    result.realized_delta[i] =
        whole == 0.0 ? 0.0
                     : (static_cast<double>(result.q1_tilde[i]) -
                        static_cast<double>(result.q2_tilde[i])) /
                           whole;
  }
  GANON_ASSIGN_OR_RETURN(result.detail_drift,
                         DetailDrift(result.delta_tilde, result.realized_delta,
                                     basis, ctx.level));
  return result;
}

}  // namespace ganon
