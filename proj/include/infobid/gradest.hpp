// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Label-free marginal utility at bid time. Confident predictions (entropy at
// or below the gate) get a proxy gradient: the smaller-norm of the two
// hypothetical-label gradients, computed analytically or by a two-point
// zeroth-order estimator. Uncertain predictions get a fixed exploration
// utility.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "infobid/coverage.hpp"
#include "infobid/model.hpp"
#include "infobid/random.hpp"

namespace infobid {

/// Binary entropy in bits, H(0) = H(1) = 0.
template <typename Scalar>
Scalar binary_entropy(Scalar p) {
  if (p <= Scalar(0) || p >= Scalar(1)) return Scalar(0);
  return -p * std::log2(p) - (Scalar(1) - p) * std::log2(Scalar(1) - p);
}

enum class GradMode { analytical, zeroth_order };
enum class Provenance { exploration, norm_pick_g0, norm_pick_g1 };

const char* to_string(GradMode m);
const char* to_string(Provenance p);
GradMode grad_mode_from_string(const std::string& s);

struct GradEstConfig {
  double entropy_threshold = 0.3;  // bits
  double exploration_utility = 1.0;
  double zo_mu = 0.01;
  int zo_dirs = 5;
  GradMode mode = GradMode::analytical;
  std::uint64_t seed = 0;

  void validate() const;
};

struct GradEstimate {
  std::optional<Vector> gradient;  // absent on the exploration branch
  double utility = 0.0;
  Provenance provenance = Provenance::exploration;
  double entropy = 0.0;
  double pctr = 0.0;
};

struct HypotheticalGradients {
  Vector g0;  // assuming y = 0
  Vector g1;  // assuming y = 1
};

HypotheticalGradients hypothetical_gradients(const LogisticModel& model,
                                             const Eigen::Ref<const Vector>& x);

/// Smaller-norm gradient; an exact tie goes to g0.
std::pair<Vector, Provenance> norm_select(const Vector& g0, const Vector& g1);

using LossFn = std::function<double(const Vector& theta)>;

/// (1/n) sum_i (L(theta + mu u_i) - L(theta - mu u_i)) / (2 mu) u_i with
/// u_i ~ N(0, I). Throws std::domain_error on a non-finite loss value.
Vector zo_gradient(const LossFn& loss, const Vector& theta, double mu,
                   int n_dirs, Rng& rng);

/// Zeroth-order estimates of both hypothetical gradients using one shared
/// set of directions (loss access only through predict()).
HypotheticalGradients zo_hypothetical_gradients(const LogisticModel& model,
                                                const Eigen::Ref<const Vector>& x,
                                                double mu, int n_dirs, Rng& rng);

/// p g1 + (1 - p) g0
Vector pctr_weighted(const Vector& g0, const Vector& g1, double p);

/// Confidence-gated marginal utility. `stream_key` (e.g. the impression
/// index) selects the private random stream for the zeroth-order path.
GradEstimate estimate_marginal_utility(const LogisticModel& model,
                                       const Eigen::Ref<const Vector>& x,
                                       const CoverageState& state,
                                       const GradEstConfig& cfg,
                                       std::uint64_t stream_key = 0);

struct EstimatorAccuracy {
  double mean_cosine = 0.0;
  double mean_l2 = 0.0;
  std::size_t cosine_count = 0;
  std::size_t excluded_zero_truth = 0;
};

/// Estimates with (numerically) zero norm count as cosine 0; truths with zero
/// norm are left out of the cosine mean and counted.
EstimatorAccuracy estimator_accuracy(std::span<const Vector> estimates,
                                     std::span<const Vector> truths);

double cosine_or_zero(const Vector& estimate, const Vector& truth);

}  // namespace infobid
