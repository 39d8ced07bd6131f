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
#include <limits>
#include <random>
#include <stdexcept>

#include "common.hpp"
#include "infobid/fisher.hpp"
#include "infobid/random.hpp"

namespace infobid {
namespace {

Vector random_gradient(int d, double lo, double hi, Rng& rng) {
  std::uniform_real_distribution<double> norm(lo, hi);
  return sphere_vector(d, norm(rng), rng);
}

// Bank and selection with every norm in [lo, hi]; half of the selected
// gradients sit near a bank gradient so coverage spans its range.
std::pair<RowMatrix, RowMatrix> theorem1_instance(const BoundsConfig& cfg, Rng& rng) {
  const auto k = static_cast<Eigen::Index>(cfg.theorem1_k);
  RowMatrix bank(k, cfg.theorem1_d);
  for (Eigen::Index i = 0; i < k; ++i)
    bank.row(i) = random_gradient(cfg.theorem1_d, cfg.theorem1_norm_lo,
                                  cfg.theorem1_norm_hi, rng).transpose();
  std::uniform_int_distribution<std::size_t> size(1, cfg.theorem1_max_selected);
  std::uniform_int_distribution<Eigen::Index> pick(0, k - 1);
  std::bernoulli_distribution near(0.5);
  std::uniform_real_distribution<double> jitter(0.0, 0.3);
  const auto s = static_cast<Eigen::Index>(size(rng));
  RowMatrix sel(s, cfg.theorem1_d);
  for (Eigen::Index i = 0; i < s; ++i) {
    Vector g;
    if (near(rng)) {
      g = bank.row(pick(rng)).transpose() + sphere_vector(cfg.theorem1_d, jitter(rng), rng);
      const double n = std::clamp(g.norm(), cfg.theorem1_norm_lo, cfg.theorem1_norm_hi);
      g *= n / g.norm();
    } else {
      g = random_gradient(cfg.theorem1_d, cfg.theorem1_norm_lo, cfg.theorem1_norm_hi, rng);
    }
    sel.row(i) = g.transpose();
  }
  return {std::move(bank), std::move(sel)};
}

}  // namespace

BoundsResult run_bounds(const BoundsConfig& cfg, const std::filesystem::path& out_dir) {
  if (cfg.theorem1_k < 1 || cfg.theorem1_max_selected < 1 || cfg.theorem1_d < 1)
    throw std::invalid_argument("bounds: fisher-bound sizes must be >= 1");
  if (!(cfg.theorem1_norm_lo > 0 && cfg.theorem1_norm_hi >= cfg.theorem1_norm_lo))
    throw std::invalid_argument("bounds: need 0 < norm_lo <= norm_hi");
  BoundsResult out;
  out.theorem1_worst_slack = std::numeric_limits<double>::infinity();
  FisherConfig fc;
  fc.gamma = cfg.theorem1_gamma;
  for (std::size_t i = 0; i < cfg.theorem1_instances; ++i) {
    Rng rng = make_stream(cfg.seed, i);
    auto [bank_g, sel] = theorem1_instance(cfg, rng);
    const GradientBank bank(std::move(bank_g));
    const Theorem1Report r = theorem1_bound(bank, sel, fc, cfg.theorem1_kernel_lambda);
    if (r.skipped) {
      out.violations.push_back("fisher bound instance " + std::to_string(i) +
                               " violates assumptions: " + *r.skipped);
      continue;
    }
    ++out.theorem1_total;
    if (r.holds) ++out.theorem1_pass;
    out.theorem1_worst_slack = std::min(out.theorem1_worst_slack, r.slack());
  }
  if (out.theorem1_total == 0) out.theorem1_worst_slack = 0.0;
  if (out.theorem1_pass != out.theorem1_total)
    out.violations.push_back("fisher bound failed on " +
                             std::to_string(out.theorem1_total - out.theorem1_pass) +
                             " instances");

  const double B = cfg.telescope_budget;
  const double log_ratio = std::log(cfg.telescope_lambda_max / cfg.telescope_lambda0);
  out.proof_bound = B / cfg.telescope_eta * log_ratio;
  out.statement_bound = B + feasibility_slack(cfg.telescope_lambda_max,
                                              cfg.telescope_lambda0, cfg.telescope_eta);
  const auto runs = parallel_map<PacingTrialResult>(cfg.telescope_runs, [&](std::size_t i) {
    PacingTrialConfig tc;
    tc.T = cfg.telescope_T;
    tc.value = cfg.telescope_value;
    tc.budget = B;
    tc.pacing.lambda0 = cfg.telescope_lambda0;
    tc.pacing.lambda_max = cfg.telescope_lambda_max;
    tc.pacing.eta = cfg.telescope_eta;
    tc.dual_update = DualUpdate::per_win;
    tc.seed = mix64(cfg.seed ^ mix64(i + 1));
    auto r = run_pacing_trial(tc);
    r.lambda_trace.clear();
    r.spend_trace.clear();
    return r;
  });
  for (const auto& r : runs) {
    const double err =
        std::abs(r.sum_cost_unclamped - B / cfg.telescope_eta * r.log_ratio_unclamped);
    out.telescope_max_err = std::max(out.telescope_max_err, err);
    out.max_spend_unclamped = std::max(out.max_spend_unclamped, r.sum_cost_unclamped);
  }
  out.spend_within_proof_bound = out.max_spend_unclamped <= out.proof_bound;
  if (!(out.telescope_max_err < 1e-9))
    out.violations.push_back("telescoping identity error above 1e-9");
  if (!out.spend_within_proof_bound)
    out.violations.push_back("unclamped spend above (B / eta) log(lambda_max / lambda0)");

  if (!out_dir.empty())
    write_json_file(out_dir / "bounds_report.json",
                    {{"theorem1_pass", out.theorem1_pass},
                     {"theorem1_total", out.theorem1_total},
                     {"theorem1_worst_slack", out.theorem1_worst_slack},
                     {"telescope_max_err", out.telescope_max_err},
                     {"telescope_runs", cfg.telescope_runs},
                     {"max_spend_unclamped", out.max_spend_unclamped},
                     {"proof_bound", out.proof_bound},
                     {"statement_bound", out.statement_bound},
                     {"spend_within_proof_bound", out.spend_within_proof_bound}});
  return out;
}

}  // namespace infobid
