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

// Single bidder against a simulated market. The bidder submits b and is
// ranked by its eCPM score pctr * b against the highest competing score.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "infobid/coverage.hpp"
#include "infobid/gradest.hpp"
#include "infobid/model.hpp"
#include "infobid/pacing.hpp"

namespace infobid {

struct Impression {
  std::size_t index = 0;
  Vector features;
  int true_label = 0;
  double market_price = 0.0;
};

/// Impressions in dataset order with market prices attached.
std::vector<Impression> impression_stream(const Dataset& data,
                                          std::span<const double> market_prices);

enum class Mechanism { first_price_cpm, second_price };

const char* to_string(Mechanism m);
Mechanism mechanism_from_string(const std::string& s);

/// n i.i.d. Uniform[lo, hi] market prices.
std::vector<double> competitor_uniform(double lo, double hi, std::size_t n,
                                       std::uint64_t seed);

struct Resolution {
  bool won = false;
  double price_paid = 0.0;
};

/// score = pctr * bid wins iff score > market_price (or >= with tie_wins).
Resolution resolve(Mechanism mechanism, double bid, double pctr,
                   double market_price, bool tie_wins = false);

enum class StrategyKind {
  proposed,
  value_only,
  uncertainty_only,
  uniform,
  pctr_linear
};

struct Strategy {
  StrategyKind kind = StrategyKind::proposed;
  double beta = 0.5;        // proposed only
  double constant = 20.0;   // uniform
  double multiplier = 45.0; // pctr_linear

  static Strategy proposed(double beta);
  static Strategy value_only();
  static Strategy uncertainty_only();
  static Strategy uniform(double c);
  static Strategy pctr_linear(double m);

  bool uses_dual() const;
  /// Coverage weight used to price bids; fallback for the baselines, which
  /// only log delta.
  double effective_beta(double fallback) const;
  std::string name() const;
};

Strategy strategy_from_string(const std::string& s, double beta = 0.5,
                              double constant = 20.0, double multiplier = 45.0);

struct MarketModel {
  double lo = 0.0;
  double hi = 1.0;
};

struct BidEnv {
  Mechanism mechanism = Mechanism::first_price_cpm;
  MarketModel market;
  std::optional<double> grid_step;
  bool spa_lambda_floor_one = false;
};

struct BidDecision {
  double bid = 0.0;
  GradEstimate estimate;
};

/// Bid for one impression. The dual strategies optimize the eCPM score
/// against the market and submit score / pctr. Every bid is truncated so a
/// win cannot cost more than the remaining budget.
BidDecision strategy_bid(const Strategy& strategy, const Impression& imp,
                         const LogisticModel& model, const CoverageState& state,
                         const PacingController& controller,
                         const GradEstConfig& gradcfg, const BidEnv& env);

struct CampaignRecord {
  std::size_t t = 0;
  double bid = 0.0;
  bool won = false;
  double price_paid = 0.0;
  double delta = 0.0;
  double lambda = 0.0;  // dual value the bid was priced with
  double cum_spend = 0.0;
  std::optional<Provenance> provenance;  // absent once the budget is gone
  double market_price = 0.0;
};

struct CampaignLog {
  std::vector<CampaignRecord> records;

  double total_spend() const;
  double max_payment() const;
  double won_delta() const;
  void write_csv(const std::string& path) const;
};

enum class DualUpdate { period, per_win };

struct CampaignConfig {
  double budget = 600.0;
  std::size_t T = 600;
  Mechanism mechanism = Mechanism::first_price_cpm;
  Strategy strategy;
  PacingParams pacing;
  DualUpdate dual_update = DualUpdate::period;
  GradEstConfig gradest;
  double kernel_lambda = 0.1;
  double beta = 0.5;  // coverage weight the baselines log delta with
  MarketModel market;
  std::optional<double> grid_step;
  bool spa_lambda_floor_one = false;
  bool tie_wins = false;
  std::uint64_t seed = 0;
};

struct CampaignResult {
  CampaignLog log;
  Dataset won;
  PacingController controller;
  CoverageValue coverage;
};

CampaignResult run_campaign(std::span<const Impression> stream,
                            const CampaignConfig& cfg,
                            const LogisticModel& model, BankPtr bank);

/// Trains from the default-initialized model on initial + won.
LogisticModel retrain_with_won(const Dataset& initial, const Dataset& won,
                               const TrainConfig& cfg);

/// Fractional knapsack over items with value max(delta, 0) and cost price.
double offline_opt_fractional(std::span<const double> deltas,
                              std::span<const double> prices, double budget);

/// Constant-value first-price pacing run against a uniform market with the
/// bidder's pctr fixed at 1 (bid equals score).
struct PacingTrialConfig {
  std::size_t T = 5000;
  double value = 1.5;
  double budget = 500.0;
  MarketModel market;
  PacingParams pacing;
  DualUpdate dual_update = DualUpdate::period;
  bool budget_cap = true;  // stop at B and truncate the last bid
  std::uint64_t seed = 0;
};

struct PacingTrialResult {
  double spend = 0.0;
  double sum_cost_unclamped = 0.0;  // sum of costs before any clamp hit
  double log_ratio_unclamped = 0.0; // log(lambda / lambda0) at that point
  bool clamped = false;
  std::vector<double> lambda_trace;  // value used at each auction
  std::vector<double> spend_trace;   // cumulative spend after each auction
};

PacingTrialResult run_pacing_trial(const PacingTrialConfig& cfg);

}  // namespace infobid
