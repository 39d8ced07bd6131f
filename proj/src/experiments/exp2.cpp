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


#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "common.hpp"
#include "infobid/csv.hpp"
#include "infobid/random.hpp"

namespace infobid {
namespace {

std::uint64_t trial_seed(std::uint64_t seed, std::size_t i) {
  return mix64(seed ^ mix64(static_cast<std::uint64_t>(i) + 1));
}

// Relative final-spend error of every trial at (eta, budget).
std::vector<double> rel_errors(const Exp2Config& cfg, double eta, double budget,
                               bool cap) {
  return parallel_map<double>(cfg.trials, [&](std::size_t i) {
    PacingTrialConfig tc;
    tc.T = cfg.T;
    tc.value = cfg.value;
    tc.budget = budget;
    tc.market = cfg.market;
    tc.pacing = {cfg.lambda0, cfg.lambda_min, cfg.lambda_max, eta, cfg.period_len};
    tc.dual_update = DualUpdate::period;
    tc.budget_cap = cap;
    tc.seed = trial_seed(cfg.seed, i);
    const PacingTrialResult r = run_pacing_trial(tc);
    return (r.spend - budget) / budget;
  });
}

}  // namespace

Exp2Result run_exp2(const Exp2Config& cfg, const std::filesystem::path& out_dir) {
  if (cfg.etas.empty()) throw std::invalid_argument("exp2: etas is empty");
  Exp2Result out;
  for (double eta : cfg.etas) {
    auto errs = rel_errors(cfg, eta, cfg.budget, cfg.budget_cap);
    auto capped = rel_errors(cfg, eta, cfg.budget, true);
    for (double& e : errs) e = std::abs(e);
    for (double& e : capped) e = std::abs(e);
    out.eta_sweep.push_back(
        {eta, detail::mean(errs), detail::stddev(errs), detail::mean(capped)});
  }
  const auto best = std::min_element(
      out.eta_sweep.begin(), out.eta_sweep.end(),
      [](const EtaPoint& a, const EtaPoint& b) { return a.mae < b.mae; });
  out.eta_star = cfg.eta_star.value_or(best->eta);
  double mae_star = best->mae;
  if (cfg.eta_star) {
    auto errs = rel_errors(cfg, out.eta_star, cfg.budget, cfg.budget_cap);
    for (double& e : errs) e = std::abs(e);
    mae_star = detail::mean(errs);
  }
  out.u_shaped = out.eta_sweep.front().mae > mae_star &&
                 out.eta_sweep.back().mae > mae_star;

  out.band_ok = true;
  for (double b : cfg.budgets) {
    const auto errs = rel_errors(cfg, out.eta_star, b, cfg.budget_cap);
    BudgetPoint p;
    p.budget = b;
    p.mean_rel_error = detail::mean(errs);
    p.mean_spend = b * (1.0 + p.mean_rel_error);
    p.min_rel_error = *std::min_element(errs.begin(), errs.end());
    p.max_rel_error = *std::max_element(errs.begin(), errs.end());
    if (p.min_rel_error < -0.05 || p.max_rel_error > 0.05) out.band_ok = false;
    out.budget_sweep.push_back(p);
  }

  if (!out_dir.empty()) {
    TableWriter w(out_dir / "exp2_mae_vs_eta.csv",
                  {"eta", "mae", "mae_std", "mae_capped"});
    for (const auto& p : out.eta_sweep) {
      w.cell(p.eta).cell(p.mae).cell(p.mae_std).cell(p.mae_capped);
      w.end_row();
    }
    TableWriter wb(out_dir / "exp2_spend_vs_budget.csv",
                   {"budget", "mean_spend", "mean_rel_error", "min_rel_error",
                    "max_rel_error"});
    for (const auto& p : out.budget_sweep) {
      wb.cell(p.budget).cell(p.mean_spend).cell(p.mean_rel_error)
          .cell(p.min_rel_error).cell(p.max_rel_error);
      wb.end_row();
    }
    write_json_file(out_dir / "exp2_summary.json",
                    {{"eta_star", out.eta_star},
                     {"mae_star", mae_star},
                     {"u_shaped", out.u_shaped},
                     {"band_ok", out.band_ok},
                     {"trials", cfg.trials},
                     {"budget_cap", cfg.budget_cap}});
  }
  return out;
}

}  // namespace infobid
