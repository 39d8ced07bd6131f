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

// p such that a constant bid c, scored c * pctr against Uniform[lo, p], spends
// the budget in expectation over the stream.
double calibrate_market_hi(const Vector& pctrs, double c, double lo, double budget) {
  std::vector<double> s(static_cast<std::size_t>(pctrs.size()));
  for (Eigen::Index i = 0; i < pctrs.size(); ++i) s[i] = c * pctrs[i];
  const double top = *std::max_element(s.begin(), s.end());
  auto spend = [&](double hi) {
    double e = 0.0;
    for (double x : s) e += x * std::clamp((x - lo) / (hi - lo), 0.0, 1.0);
    return e;
  };
  if (spend(top) <= budget) return top;
  double a = top, b = top;
  while (spend(b) > budget) b *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    (spend(m) > budget ? a : b) = m;
  }
  return 0.5 * (a + b);
}

Exp4SeedResult run_seed(const Exp4Config& cfg, std::uint64_t seed) {
  SynthConfig sc = cfg.synth;
  sc.n = cfg.n_init + cfg.n_val + cfg.n_auc + cfg.n_test;
  sc.seed = seed;
  const Dataset all = generate_synthetic(sc).data;
  const Dataset init = all.slice(0, cfg.n_init);
  const Dataset val = all.slice(cfg.n_init, cfg.n_val);
  const Dataset auc_set = all.slice(cfg.n_init + cfg.n_val, cfg.n_auc);
  const Dataset test = all.slice(cfg.n_init + cfg.n_val + cfg.n_auc, cfg.n_test);

  TrainConfig tc = cfg.train;
  tc.seed = seed;
  const LogisticModel base = train(LogisticModel(all.dim()), init, tc);
  const auto bank = std::make_shared<const GradientBank>(
      detail::label_gradients(base, val), "theta_init");

  Exp4SeedResult res;
  res.seed = seed;
  const Metrics bm = evaluate(base, test);
  res.base = {"initial", bm.auc.value_or(0.5), bm.logloss};
  res.market_hi = cfg.market_hi.value_or(calibrate_market_hi(
      base.predict_all(auc_set.feature_matrix()), cfg.calibration_bid,
      cfg.market_lo, cfg.budget));
  const auto prices =
      competitor_uniform(cfg.market_lo, res.market_hi, cfg.n_auc, mix64(seed));
  const auto stream = impression_stream(auc_set, prices);

  for (const StrategySpec& spec : cfg.strategies) {
    CampaignConfig cc;
    cc.budget = cfg.budget;
    cc.T = cfg.n_auc;
    cc.mechanism = cfg.mechanism;
    cc.strategy = spec.to_strategy();
    cc.pacing = cfg.pacing;
    cc.gradest = cfg.gradest;
    cc.kernel_lambda = cfg.kernel_lambda;
    cc.beta = cfg.beta;
    cc.market = {cfg.market_lo, res.market_hi};
    cc.tie_wins = cfg.tie_wins;
    cc.spa_lambda_floor_one = cfg.spa_lambda_floor_one;
    cc.seed = seed;
    CampaignResult cr = run_campaign(stream, cc, base, bank);

    Exp4StrategyResult sr;
    sr.strategy = spec.label();
    const LogisticModel m = retrain_with_won(init, cr.won, tc);
    const Metrics met = evaluate(m, test);
    sr.auc = met.auc.value_or(0.5);
    sr.logloss = met.logloss;
    sr.spend = cr.log.total_spend();
    sr.max_payment = cr.log.max_payment();
    sr.wins = cr.won.size();
    sr.won_delta = cr.log.won_delta();
    std::vector<double> deltas;
    for (const auto& r : cr.log.records) deltas.push_back(r.delta);
    sr.offline_opt = offline_opt_fractional(deltas, prices, cfg.budget);
    sr.budget_safe = sr.spend <= cfg.budget + sr.max_payment;
    sr.lambda_direction_ok =
        lambda_direction_ok(cr.log, cfg.budget, cfg.pacing.period_len, cfg.pacing);
    sr.log = std::move(cr.log);
    sr.won = std::move(cr.won);
    res.strategies.push_back(std::move(sr));
  }
  return res;
}

}  // namespace

bool lambda_direction_ok(const CampaignLog& log, double budget,
                         std::size_t period_len, const PacingParams& pacing) {
  const auto& rec = log.records;
  if (rec.empty() || budget <= 0) return true;
  const std::size_t K = (rec.size() + period_len - 1) / period_len;
  for (std::size_t k = 1; k * period_len < rec.size(); ++k) {
    const std::size_t end = k * period_len - 1;
    const double before = rec[end].lambda;
    const double after = rec[end + 1].lambda;
    const double paced = budget * static_cast<double>(k) / static_cast<double>(K);
    const double err = rec[end].cum_spend - paced;
    const bool at_max = after >= pacing.lambda_max * (1 - 1e-12);
    const bool at_min = after <= pacing.lambda_min * (1 + 1e-12);
    if (std::abs(pacing.eta * err / budget) < 1e-12) continue;
    if (err > 0 && !(after > before || at_max)) return false;
    if (err < 0 && !(after < before || at_min)) return false;
  }
  return true;
}

Exp4Result run_exp4(const Exp4Config& cfg, const std::filesystem::path& out_dir) {
  Exp4Result out;
  out.seeds = parallel_map<Exp4SeedResult>(
      cfg.seeds.size(), [&](std::size_t i) { return run_seed(cfg, cfg.seeds[i]); });

  for (const auto& spec : cfg.strategies)
    if (spec.kind == "proposed") {
      out.proposed_label = spec.label();
      break;
    }
  if (!out.proposed_label.empty())
    for (const auto& spec : cfg.strategies)
      if (spec.label() != out.proposed_label)
        out.proposed_ge.emplace_back(spec.label(), 0);

  for (const auto& s : out.seeds) {
    bool best = !out.proposed_label.empty();
    for (auto& [label, count] : out.proposed_ge) {
      if (s.find(out.proposed_label).auc >= s.find(label).auc) {
        ++count;
      } else {
        best = false;
      }
    }
    if (best) ++out.proposed_best;
    for (const auto& r : s.strategies) {
      const std::string where = detail::seed_tag(s.seed) + "/" + r.strategy;
      if (!r.budget_safe) {
        out.all_budget_safe = false;
        out.violations.push_back("budget safety violated: " + where);
      }
      if (!r.lambda_direction_ok) {
        out.all_lambda_ok = false;
        out.violations.push_back("dual direction violated: " + where);
      }
      if (r.won_delta > r.offline_opt) {
        out.all_oracle_dominated = false;
        out.violations.push_back("offline oracle exceeded: " + where);
      }
    }
  }

  if (!out_dir.empty()) {
    TableWriter w(out_dir / "exp4_results.csv",
                  {"seed", "strategy", "auc", "logloss", "spend", "wins",
                   "won_delta", "offline_opt", "market_hi"});
    nlohmann::json summary = {{"seeds", out.seeds.size()},
                              {"proposed_best", out.proposed_best},
                              {"all_budget_safe", out.all_budget_safe},
                              {"all_lambda_ok", out.all_lambda_ok},
                              {"all_oracle_dominated", out.all_oracle_dominated}};
    for (const auto& [label, count] : out.proposed_ge)
      summary["proposed_ge_" + label] = count;
    for (const auto& s : out.seeds) {
      summary["market_hi_" + detail::seed_tag(s.seed)] = s.market_hi;
      w.cell(static_cast<long long>(s.seed)).cell(s.base.method).cell(s.base.auc)
          .cell(s.base.logloss).cell(0.0).cell(0).cell(0.0).cell(0.0)
          .cell(s.market_hi);
      w.end_row();
      for (const auto& r : s.strategies) {
        w.cell(static_cast<long long>(s.seed)).cell(r.strategy).cell(r.auc)
            .cell(r.logloss).cell(r.spend).cell(r.wins).cell(r.won_delta)
            .cell(r.offline_opt).cell(s.market_hi);
        w.end_row();
        if (cfg.write_logs) {
          const std::string stem =
              "exp4_" + detail::seed_tag(s.seed) + "_" + r.strategy;
          r.log.write_csv((out_dir / (stem + "_log.csv")).string());
          write_csv(out_dir / (stem + "_won.csv"), r.won);
        }
      }
    }
    write_json_file(out_dir / "exp4_summary.json", summary);
  }
  return out;
}

}  // namespace infobid
