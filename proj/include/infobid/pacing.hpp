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

// Campaign-level shadow price of the budget and the impression-level bid
// that maximizes W(b) (delta - lambda b).

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

namespace infobid {

struct PacingParams {
  double lambda0 = 0.01;
  double lambda_min = 1e-6;
  double lambda_max = 100.0;
  double eta = 0.1;
  std::size_t period_len = 100;

  void validate() const;
};

/// Dual variable lambda with the multiplicative-weights updates. lambda is
/// kept as log(lambda) so the per-win telescoping sum stays exact to
/// rounding.
class PacingController {
 public:
  PacingController(double budget, std::size_t total_periods,
                   const PacingParams& params);

  double lambda() const;
  double log_lambda() const { return log_lambda_; }
  double budget() const { return budget_; }
  double spent() const { return spent_; }
  double remaining() const { return budget_ - spent_; }
  bool exhausted() const { return spent_ >= budget_; }
  std::size_t period_index() const { return period_index_; }
  std::size_t total_periods() const { return total_periods_; }
  const PacingParams& params() const { return params_; }

  /// B k / K
  double paced_budget(std::size_t k) const;

  void record_spend(double cost);

  /// End of a pacing period: lambda *= exp(eta (spent - B k/K) / B) with k
  /// the number of completed periods, then clamp.
  void update_dual_period();

  /// lambda *= exp(eta h / B) for a realized cost h >= 0, clamped at
  /// lambda_max.
  void update_dual_perwin(double cost);

  /// True once any update hit lambda_max or lambda_min.
  bool clamp_activated() const { return clamp_activated_; }

  nlohmann::json to_json() const;
  static PacingController from_json(const nlohmann::json& j,
                                    std::size_t total_periods,
                                    const PacingParams& params);

 private:
  void clamp();

  double budget_;
  std::size_t total_periods_;
  PacingParams params_;
  double log_lambda_;
  double spent_ = 0.0;
  std::size_t period_index_ = 0;
  bool clamp_activated_ = false;
};

/// Win probability as a function of the submitted score.
class WinCurve {
 public:
  /// Highest competing score ~ Uniform[lo, hi].
  static WinCurve uniform(double lo, double hi);
  static WinCurve custom(std::function<double(double)> win_prob, double b_max);

  double operator()(double b) const { return eval_(b); }
  double b_max() const { return b_max_; }
  /// Support of the competitor when the curve is the uniform model.
  std::optional<std::pair<double, double>> uniform_support() const {
    return uniform_;
  }

 private:
  std::function<double(double)> eval_;
  double b_max_ = 0.0;
  std::optional<std::pair<double, double>> uniform_;
};

/// argmax over the grid {0, step, ..., b_max} of W(b) (delta - lambda b);
/// 0 when no bid has positive surplus. First grid point wins ties.
double optimal_bid_fpa_grid(double delta, double lambda, const WinCurve& curve,
                            double grid_step);

/// First-price optimal bid: closed form for the uniform competitor, grid
/// search (default step 1e-4 b_max) otherwise.
double optimal_bid_fpa(double delta, double lambda, const WinCurve& curve,
                       std::optional<double> grid_step = std::nullopt);

/// Second-price bid: max(delta / lambda, 0).
double optimal_bid_spa(double delta, double lambda);

/// sqrt(log(lambda_max / lambda0) / T) / C
double recommended_eta(double lambda_max, double lambda0, std::size_t T,
                       double C);

/// log(lambda_max / lambda0) / eta
double feasibility_slack(double lambda_max, double lambda0, double eta);

}  // namespace infobid
