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

#include <doctest.h>

#include <filesystem>
#include <vector>

#include "infobid/experiments.hpp"
#include "oracles.hpp"

using namespace infobid;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("infobid_" + name);
  fs::remove_all(p);
  return p;
}

Exp1Config small_exp1() {
  Exp1Config c;
  c.seeds = {0, 1};
  c.synth.n = 600;
  c.synth.d = 5;
  c.n_init = c.n_test = c.n_val = 150;
  c.budget_count = 10;
  c.train.epochs = 20;
  return c;
}

}  // namespace

TEST_CASE("parallel map keeps index order") {
  const auto v = parallel_map<int>(100, [](std::size_t i) { return static_cast<int>(i * i); }, 4);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<int>(i * i));
}

TEST_CASE("spearman") {
  std::vector<double> a{1, 2, 3, 4}, b{10, 20, 30, 40}, c{4, 3, 2, 1}, d{1, 1, 2, 5};
  CHECK(spearman(a, b) == doctest::Approx(1.0));
  CHECK(spearman(a, c) == doctest::Approx(-1.0));
  CHECK(spearman(a, d) == doctest::Approx(oracle::spearman(a, d)));
}

TEST_CASE("config parsing") {
  const auto c = exp2_config_from_json(
      {{"experiment", "exp2"}, {"trials", 3}, {"etas", {0.1, 1.0}}, {"eta_star", 1.0}});
  CHECK(c.trials == 3);
  CHECK(c.etas.size() == 2);
  CHECK(*c.eta_star == 1.0);
  CHECK_THROWS(exp2_config_from_json({{"trails", 3}}));
  CHECK_THROWS(exp1_config_from_json({{"synth", {{"sepration", 1.0}}}}));
  const auto e4 = exp4_config_from_json(
      {{"strategies", {{{"kind", "uniform"}, {"constant", 5.0}}}},
       {"mechanism", "second_price"}});
  REQUIRE(e4.strategies.size() == 1);
  CHECK(e4.strategies[0].constant == 5.0);
  CHECK(e4.mechanism == Mechanism::second_price);
  const Exp4Config def;
  CHECK(def.pacing.lambda0 == 0.01);
  CHECK(def.pacing.eta == 0.1);
  CHECK(def.pacing.period_len == 100);
  CHECK(def.gradest.mode == GradMode::zeroth_order);
}

TEST_CASE("exp1 with no picks ties all methods") {
  Exp1Config c = small_exp1();
  c.budget_count = 0;
  const Exp1Result r = run_exp1(c);
  for (const auto& s : r.seeds)
    for (const auto& m : s.methods) {
      CHECK(m.auc == s.base.auc);
      CHECK(m.logloss == s.base.logloss);
    }
}

TEST_CASE("exp1 writes its tables") {
  const fs::path out = scratch("exp1");
  const Exp1Result r = run_exp1(small_exp1(), out);
  CHECK(r.seeds.size() == 2);
  CHECK(fs::exists(out / "exp1_results.csv"));
  CHECK(fs::exists(out / "exp1_summary.json"));
  for (const auto& s : r.seeds)
    for (const auto& sel : s.selections) CHECK(sel.size() == 10);
  const Exp1Result again = run_exp1(small_exp1());
  CHECK(again.seeds[1].methods[0].auc == r.seeds[1].methods[0].auc);
  fs::remove_all(out);
}

TEST_CASE("exp2 small sweep") {
  Exp2Config c;
  c.trials = 4;
  c.T = 500;
  c.budget = 20;
  c.etas = {1e-6, 10, 1000};
  c.budgets = {10, 20};
  const Exp2Result r = run_exp2(c);
  REQUIRE(r.eta_sweep.size() == 3);
  CHECK(r.budget_sweep.size() == 2);
  const EtaPoint* best = &r.eta_sweep[0];
  for (const auto& p : r.eta_sweep) {
    CHECK(p.mae >= 0.0);
    if (p.mae < best->mae) best = &p;
  }
  CHECK(r.eta_star == best->eta);
}

TEST_CASE("exp3 correct subset is exact") {
  Exp3Config c;
  c.seeds = {0, 1};
  c.n_train = 200;
  c.n_test = 300;
  c.synth.n = 500;
  const Exp3Result r = run_exp3(c);
  CHECK(r.correct_subset_exact);
  for (const auto& s : r.seeds) {
    CHECK(s.find("correct", "analytical").accuracy.mean_cosine == 1.0);
    CHECK(s.find("all", "pctr_weighted").accuracy.mean_cosine == 0.0);
  }
}

TEST_CASE("random label guess averages to zero cosine") {
  // g1 = g0 - x, and for logistic loss the two are antiparallel, so a fair
  // guess is right half the time (+1) and wrong half the time (-1).
  Exp3Config c;
  c.seeds = {3};
  c.n_train = 200;
  c.n_test = 1500;
  c.synth.n = 1700;
  const Exp3Result r = run_exp3(c);
  const auto& row = r.seeds[0].find("all", "random");
  const double n = static_cast<double>(row.count);
  CHECK(std::abs(row.accuracy.mean_cosine) <= 3.0 / std::sqrt(n));
}

TEST_CASE("exp4 small run") {
  Exp4Config c;
  c.seeds = {0};
  c.synth.n = 600;
  c.synth.d = 5;
  c.n_init = 50;
  c.n_val = 50;
  c.n_auc = 200;
  c.n_test = 300;
  c.budget = 200;
  c.train.epochs = 20;
  const fs::path out = scratch("exp4");
  const Exp4Result r = run_exp4(c, out);
  CHECK(r.all_budget_safe);
  CHECK(r.all_lambda_ok);
  CHECK(r.all_oracle_dominated);
  CHECK(r.violations.empty());
  REQUIRE(r.seeds.size() == 1);
  CHECK(r.seeds[0].strategies.size() == 5);
  CHECK(fs::exists(out / "exp4_results.csv"));
  for (const auto& s : r.seeds[0].strategies) CHECK(s.spend <= c.budget + 1e-9);
  fs::remove_all(out);
}

TEST_CASE("lambda direction check") {
  PacingParams p;
  p.lambda0 = 1.0;
  p.eta = 0.5;
  p.period_len = 2;
  CampaignLog log;
  // Period 1 overspends (lambda must rise), period 2 lags (must fall).
  auto add = [&](std::size_t t, double paid, double cum, double lambda) {
    log.records.push_back({t, 1.0, paid > 0, paid, 0.0, lambda, cum, std::nullopt, 0.0});
  };
  add(0, 6, 6, 1.0);
  add(1, 0, 6, 1.0);
  const double up = std::exp(0.5 * (6 - 5) / 10.0);
  add(2, 0, 6, up);
  add(3, 0, 6, up);
  CHECK(lambda_direction_ok(log, 10.0, 2, p));
  log.records[2].lambda = 0.9;
  CHECK_FALSE(lambda_direction_ok(log, 10.0, 2, p));
}

TEST_CASE("toy noise floor trend") {
  ToyConfig c;
  c.trajectories = 20;
  c.steps = 500;
  const ToyResult r = run_toy(c);
  REQUIRE(r.arms.size() == c.xis.size());
  CHECK(r.arms.front().terminal_grad_sq <= r.arms.back().terminal_grad_sq);
  const BumpLandscape land = make_landscape(c);
  Vector x = Vector::Constant(c.d, 0.3);
  const Vector fd = oracle::central_difference([&](const Vector& v) { return land.reward(v); }, x);
  CHECK((land.gradient(x) - fd).norm() < 1e-6 * std::max(1.0, fd.norm()));
}

TEST_CASE("bounds report") {
  BoundsConfig c;
  c.theorem1_instances = 20;
  c.telescope_runs = 3;
  c.telescope_T = 1000;
  const BoundsResult r = run_bounds(c);
  CHECK(r.theorem1_pass == r.theorem1_total);
  CHECK(r.telescope_max_err < 1e-9);
  CHECK(r.spend_within_proof_bound);
  CHECK(r.proof_bound == doctest::Approx((100 / 0.1) * std::log(1e4)));
  CHECK(r.statement_bound == doctest::Approx(100 + std::log(1e4) / 0.1));
}
