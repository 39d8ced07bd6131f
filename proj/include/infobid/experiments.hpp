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

// Experiment drivers. Each run_* is a pure function of its config; when
// `out_dir` is non-empty it also writes CSV tables and a flat JSON summary
// there. Invariant failures are collected in `violations` rather than thrown.

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "infobid/auction.hpp"
#include "infobid/coverage.hpp"
#include "infobid/gradest.hpp"
#include "infobid/model.hpp"
#include "infobid/pacing.hpp"

namespace infobid {

std::vector<std::uint64_t> default_seeds(std::size_t n);

/// Runs fn(i) for i in [0, n) on up to `threads` workers (0: hardware
/// concurrency). Results are stored by index, so the output is independent
/// of scheduling.
template <typename T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& fn,
                            unsigned threads = 0);

// ---------------------------------------------------------------------------

struct Exp1Config {
  std::vector<std::uint64_t> seeds = default_seeds(10);
  SynthConfig synth;
  std::size_t n_init = 500;
  std::size_t n_test = 500;
  std::size_t n_val = 500;  // candidates take the remainder
  std::size_t budget_count = 50;
  TrainConfig train;
  double kernel_lambda = 0.1;
  double beta = 0.0;
  double gamma = 1.0;
};

struct MethodMetrics {
  std::string method;
  double auc = 0.0;
  double logloss = 0.0;
};

struct Exp1SeedResult {
  std::uint64_t seed = 0;
  MethodMetrics base;
  std::vector<MethodMetrics> methods;  // surrogate, fim_oracle, random
  std::vector<std::vector<std::size_t>> selections;
  std::vector<RowMatrix> selected_gradients;
};

struct Exp1Result {
  std::vector<Exp1SeedResult> seeds;
  int surrogate_beats_random = 0;  // on both AUC and log loss
  double mean_gap_surrogate_fim = 0.0;
  double mean_gap_random_fim = 0.0;
  std::vector<std::string> violations;
};

Exp1Result run_exp1(const Exp1Config& cfg,
                    const std::filesystem::path& out_dir = {});

// ---------------------------------------------------------------------------

struct Exp2Config {
  std::uint64_t seed = 0;
  std::size_t trials = 30;
  std::size_t T = 5000;
  double value = 1.5;
  MarketModel market;
  double lambda0 = 10.0;
  double lambda_min = 1e-6;
  double lambda_max = 100.0;
  std::size_t period_len = 10;
  double budget = 50.0;
  bool budget_cap = false;
  std::vector<double> etas = {1e-6, 1e-4, 0.01, 0.1, 0.3, 1,   3,
                              10,   20,   30,   50,  100, 300, 1000};
  std::vector<double> budgets = {20, 50, 100, 200, 500, 1000, 2000};
  std::optional<double> eta_star;  // default: argmin MAE over the sweep
};

struct EtaPoint {
  double eta = 0.0;
  double mae = 0.0;
  double mae_std = 0.0;
  double mae_capped = 0.0;  // same trials with the hard budget stop
};

struct BudgetPoint {
  double budget = 0.0;
  double mean_spend = 0.0;
  double mean_rel_error = 0.0;
  double min_rel_error = 0.0;
  double max_rel_error = 0.0;
};

struct Exp2Result {
  std::vector<EtaPoint> eta_sweep;
  double eta_star = 0.0;
  std::vector<BudgetPoint> budget_sweep;
  bool u_shaped = false;
  bool band_ok = false;  // every trial within +-5% at eta*
  std::vector<std::string> violations;
};

Exp2Result run_exp2(const Exp2Config& cfg,
                    const std::filesystem::path& out_dir = {});

// ---------------------------------------------------------------------------

struct Exp3Config {
  std::vector<std::uint64_t> seeds = default_seeds(10);
  SynthConfig synth;
  std::size_t n_train = 500;
  std::size_t n_test = 1500;
  TrainConfig train;
  double entropy_threshold = 0.3;
  double zo_mu = 0.01;
  int zo_dirs = 10;
};

struct EstimatorRow {
  std::string subset;  // all | high_conf | correct
  std::string method;  // analytical | zo | pctr_weighted | random
  EstimatorAccuracy accuracy;
  std::size_t count = 0;
};

struct Exp3SeedResult {
  std::uint64_t seed = 0;
  std::vector<EstimatorRow> rows;
  bool correct_exact = true;  // analytical cosine == 1 on correct predictions

  const EstimatorRow& find(const std::string& subset,
                           const std::string& method) const;
};

struct Exp3Result {
  std::vector<Exp3SeedResult> seeds;
  int ordering_holds = 0;  // analytical >= zo >= pctr_weighted >= random
  bool correct_subset_exact = true;
  std::vector<std::string> violations;
};

Exp3Result run_exp3(const Exp3Config& cfg,
                    const std::filesystem::path& out_dir = {});

// ---------------------------------------------------------------------------

struct StrategySpec {
  std::string kind = "proposed";
  double beta = 0.5;
  double constant = 20.0;
  double multiplier = 45.0;

  Strategy to_strategy() const;
  std::string label() const;
};

struct Exp4Config {
  std::vector<std::uint64_t> seeds = default_seeds(10);
  SynthConfig synth;
  std::size_t n_init = 100;
  std::size_t n_val = 100;
  std::size_t n_auc = 600;
  std::size_t n_test = 1000;
  double budget = 600.0;
  TrainConfig train;
  std::vector<StrategySpec> strategies = {
      {"proposed", 0.5, 20.0, 45.0},  {"value_only", 1.0, 20.0, 45.0},
      {"uncertainty_only", 0.0, 20.0, 45.0}, {"uniform", 0.5, 20.0, 45.0},
      {"pctr_linear", 0.5, 20.0, 45.0}};
  Mechanism mechanism = Mechanism::first_price_cpm;
  PacingParams pacing;
  GradEstConfig gradest;
  double kernel_lambda = 0.1;
  double beta = 0.5;
  double market_lo = 0.0;
  std::optional<double> market_hi;  // default: calibrated to uniform(c)
  double calibration_bid = 20.0;
  bool tie_wins = false;
  bool spa_lambda_floor_one = false;
  bool write_logs = true;

  Exp4Config();
};

struct Exp4StrategyResult {
  std::string strategy;
  double auc = 0.0;
  double logloss = 0.0;
  double spend = 0.0;
  double max_payment = 0.0;
  std::size_t wins = 0;
  double won_delta = 0.0;
  double offline_opt = 0.0;
  bool budget_safe = false;
  bool lambda_direction_ok = false;
  CampaignLog log;
  Dataset won;
};

struct Exp4SeedResult {
  std::uint64_t seed = 0;
  double market_hi = 0.0;
  MethodMetrics base;
  std::vector<Exp4StrategyResult> strategies;

  const Exp4StrategyResult& find(const std::string& label) const;
};

struct Exp4Result {
  std::vector<Exp4SeedResult> seeds;
  std::string proposed_label;
  // seeds where the proposed AUC >= that strategy's AUC
  std::vector<std::pair<std::string, int>> proposed_ge;
  int proposed_best = 0;  // >= every other strategy at once
  bool all_budget_safe = true;
  bool all_lambda_ok = true;
  bool all_oracle_dominated = true;
  std::vector<std::string> violations;
};

Exp4Result run_exp4(const Exp4Config& cfg,
                    const std::filesystem::path& out_dir = {});

/// lambda moves up after a period that ends ahead of the linear pace, down
/// after one that ends behind it, and stays put on the pace (clamps aside).
bool lambda_direction_ok(const CampaignLog& log, double budget,
                         std::size_t period_len, const PacingParams& pacing);

// ---------------------------------------------------------------------------

struct ToyConfig {
  int d = 5;
  double r = 0.1;
  std::vector<double> xis = {0.0, 0.1, 0.5, 1.0, 2.0};
  std::size_t steps = 2000;
  std::size_t trajectories = 100;
  std::size_t n_bumps = 3;
  double width = 3.0;
  double center_spread = 1.5;
  std::vector<double> amplitudes = {10.0, 8.0, 6.0};
  double start_spread = 1.0;
  std::uint64_t seed = 0;
};

/// Smooth non-convex reward: sum_j a_j exp(-|x - c_j|^2 / (2 w^2)).
struct BumpLandscape {
  RowMatrix centers;
  Vector amplitudes;
  double width = 1.0;

  double reward(const Vector& x) const;
  Vector gradient(const Vector& x) const;
};

BumpLandscape make_landscape(const ToyConfig& cfg);

struct ToyArm {
  double xi = 0.0;
  double terminal_grad_sq = 0.0;  // mean over trajectories
  double terminal_grad_sq_se = 0.0;
  double acceptance_rate = 0.0;
};

struct ToyResult {
  std::vector<ToyArm> arms;
  double spearman = 0.0;
  bool monotone = false;
  std::vector<std::string> violations;
};

ToyResult run_toy(const ToyConfig& cfg,
                  const std::filesystem::path& out_dir = {});

double spearman(std::span<const double> a, std::span<const double> b);

// ---------------------------------------------------------------------------

struct BoundsConfig {
  std::uint64_t seed = 0;
  std::size_t theorem1_instances = 100;
  int theorem1_d = 5;
  std::size_t theorem1_k = 20;
  std::size_t theorem1_max_selected = 15;
  double theorem1_gamma = 1.0;
  double theorem1_kernel_lambda = 0.1;
  double theorem1_norm_lo = 0.5;
  double theorem1_norm_hi = 2.0;
  std::size_t telescope_runs = 30;
  std::size_t telescope_T = 5000;
  double telescope_budget = 100.0;
  double telescope_eta = 0.1;
  double telescope_lambda0 = 0.01;
  double telescope_lambda_max = 100.0;
  double telescope_value = 1.5;
};

struct BoundsResult {
  std::size_t theorem1_pass = 0;
  std::size_t theorem1_total = 0;
  double theorem1_worst_slack = 0.0;
  double telescope_max_err = 0.0;
  double max_spend_unclamped = 0.0;
  double proof_bound = 0.0;      // (B / eta) log(lambda_max / lambda0)
  double statement_bound = 0.0;  // B + log(lambda_max / lambda0) / eta
  bool spend_within_proof_bound = true;
  std::vector<std::string> violations;
};

BoundsResult run_bounds(const BoundsConfig& cfg,
                        const std::filesystem::path& out_dir = {});

// ---------------------------------------------------------------------------
// JSON configs. Keys mirror the field names; absent keys keep defaults and
// unknown keys are rejected.

Exp1Config exp1_config_from_json(const nlohmann::json& j);
Exp2Config exp2_config_from_json(const nlohmann::json& j);
Exp3Config exp3_config_from_json(const nlohmann::json& j);
Exp4Config exp4_config_from_json(const nlohmann::json& j);
ToyConfig toy_config_from_json(const nlohmann::json& j);
BoundsConfig bounds_config_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace infobid

#include "infobid/parallel.inl"
