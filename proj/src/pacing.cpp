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

#include "infobid/pacing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace infobid {

void PacingParams::validate() const {
  if (!(lambda_min > 0)) throw std::invalid_argument("lambda_min must be > 0");
  if (!(lambda0 > 0 && lambda0 <= lambda_max))
    throw std::invalid_argument("need 0 < lambda0 <= lambda_max");
  if (!(lambda_min <= lambda_max))
    throw std::invalid_argument("need lambda_min <= lambda_max");
  if (!(eta > 0)) throw std::invalid_argument("eta must be > 0");
  if (period_len < 1) throw std::invalid_argument("period_len must be >= 1");
}

PacingController::PacingController(double budget, std::size_t total_periods,
                                   const PacingParams& params)
    : budget_(budget), total_periods_(total_periods), params_(params) {
  params_.validate();
  if (!(budget_ >= 0)) throw std::invalid_argument("budget must be >= 0");
  if (total_periods_ < 1)
    throw std::invalid_argument("total_periods must be >= 1");
  log_lambda_ = std::log(params_.lambda0);
}

double PacingController::lambda() const { return std::exp(log_lambda_); }

double PacingController::paced_budget(std::size_t k) const {
  if (k > total_periods_)
    throw std::out_of_range("paced_budget: period beyond schedule");
  return budget_ * static_cast<double>(k) /
         static_cast<double>(total_periods_);
}

void PacingController::record_spend(double cost) {
  if (!(cost >= 0)) throw std::invalid_argument("spend must be >= 0");
  spent_ += cost;
}

void PacingController::clamp() {
  const double lo = std::log(params_.lambda_min);
  const double hi = std::log(params_.lambda_max);
  if (log_lambda_ > hi) {
    log_lambda_ = hi;
    clamp_activated_ = true;
  } else if (log_lambda_ < lo) {
    log_lambda_ = lo;
    clamp_activated_ = true;
  }
}

void PacingController::update_dual_period() {
  if (budget_ <= 0) return;
  period_index_ = std::min(period_index_ + 1, total_periods_);
  const double error = spent_ - paced_budget(period_index_);
  log_lambda_ += params_.eta * error / budget_;
  clamp();
}

void PacingController::update_dual_perwin(double cost) {
  if (!(cost >= 0)) throw std::invalid_argument("per-win cost must be >= 0");
  if (budget_ <= 0) return;
  log_lambda_ += params_.eta * cost / budget_;
  clamp();
}

nlohmann::json PacingController::to_json() const {
  return {{"lambda", lambda()},
          {"eta", params_.eta},
          {"budget", budget_},
          {"spent", spent_},
          {"period_index", period_index_}};
}

PacingController PacingController::from_json(const nlohmann::json& j,
                                             std::size_t total_periods,
                                             const PacingParams& params) {
  PacingParams p = params;
  p.eta = j.at("eta").get<double>();
  PacingController c(j.at("budget").get<double>(), total_periods, p);
  c.log_lambda_ = std::log(j.at("lambda").get<double>());
  c.spent_ = j.at("spent").get<double>();
  c.period_index_ = j.at("period_index").get<std::size_t>();
  return c;
}

WinCurve WinCurve::uniform(double lo, double hi) {
  if (!(hi > lo && lo >= 0))
    throw std::invalid_argument("uniform win curve needs hi > lo >= 0");
  WinCurve c;
  c.eval_ = [lo, hi](double b) { return std::clamp((b - lo) / (hi - lo), 0.0, 1.0); };
  c.b_max_ = hi;
  c.uniform_ = std::make_pair(lo, hi);
  return c;
}

WinCurve WinCurve::custom(std::function<double(double)> win_prob,
                          double b_max) {
  if (!(b_max > 0)) throw std::invalid_argument("win curve b_max must be > 0");
  WinCurve c;
  c.eval_ = std::move(win_prob);
  c.b_max_ = b_max;
  return c;
}

double optimal_bid_fpa_grid(double delta, double lambda, const WinCurve& curve,
                            double grid_step) {
  if (!(lambda > 0)) throw std::invalid_argument("fpa: lambda must be > 0");
  if (!(grid_step > 0)) throw std::invalid_argument("fpa: grid_step <= 0");
  if (delta <= 0) return 0.0;
  const auto steps =
      static_cast<long long>(std::floor(curve.b_max() / grid_step + 1e-9));
  double best_bid = 0.0;
  double best_surplus = 0.0;
  for (long long i = 0; i <= steps; ++i) {
    const double b = std::min(static_cast<double>(i) * grid_step, curve.b_max());
    const double surplus = curve(b) * (delta - lambda * b);
    if (surplus > best_surplus) {
      best_surplus = surplus;
      best_bid = b;
    }
  }
  return best_bid;
}

double optimal_bid_fpa(double delta, double lambda, const WinCurve& curve,
                       std::optional<double> grid_step) {
  if (!(lambda > 0)) throw std::invalid_argument("fpa: lambda must be > 0");
  if (delta <= 0) return 0.0;
  if (auto support = curve.uniform_support()) {
    const auto [lo, hi] = *support;
    const double threshold = delta / lambda;  // surplus sign flips here
    if (threshold <= lo) return 0.0;
    return std::min(0.5 * (lo + threshold), hi);
  }
  return optimal_bid_fpa_grid(delta, lambda, curve,
                              grid_step.value_or(1e-4 * curve.b_max()));
}

double optimal_bid_spa(double delta, double lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("spa: lambda must be > 0");
  return std::max(delta / lambda, 0.0);
}

double recommended_eta(double lambda_max, double lambda0, std::size_t T,
                       double C) {
  if (!(lambda_max > lambda0 && lambda0 > 0))
    throw std::invalid_argument("need lambda_max > lambda0 > 0");
  if (T < 1) throw std::invalid_argument("T must be >= 1");
  if (!(C > 0)) throw std::invalid_argument("C must be > 0");
  return std::sqrt(std::log(lambda_max / lambda0) / static_cast<double>(T)) / C;
}

double feasibility_slack(double lambda_max, double lambda0, double eta) {
  if (!(lambda_max >= lambda0 && lambda0 > 0))
    throw std::invalid_argument("need lambda_max >= lambda0 > 0");
  if (!(eta > 0)) throw std::invalid_argument("eta must be > 0");
  return std::log(lambda_max / lambda0) / eta;
}

}  // namespace infobid
