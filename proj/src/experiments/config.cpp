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


#include <fstream>
#include <set>
#include <stdexcept>
#include <string>

#include "infobid/experiments.hpp"

namespace infobid {
namespace {

using nlohmann::json;

// Reads known keys into destinations, then rejects anything left over.
class Reader {
 public:
  Reader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object())
      throw std::invalid_argument(where_ + ": expected a JSON object");
  }

  template <typename T>
  Reader& get(const char* key, T& dst) {
    seen_.insert(key);
    if (j_.contains(key)) dst = j_.at(key).get<T>();
    return *this;
  }

  template <typename T>
  Reader& get(const char* key, std::optional<T>& dst) {
    seen_.insert(key);
    if (j_.contains(key) && !j_.at(key).is_null()) dst = j_.at(key).get<T>();
    return *this;
  }

  template <typename F>
  Reader& block(const char* key, F&& fn) {
    seen_.insert(key);
    if (j_.contains(key)) fn(j_.at(key));
    return *this;
  }

  Reader& ignore(const char* key) {
    seen_.insert(key);
    return *this;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key()))
        throw std::invalid_argument(where_ + ": unknown key '" + it.key() + "'");
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

void read_synth(const json& j, SynthConfig& c) {
  Reader r(j, "synth");
  r.get("n", c.n).get("d", c.d).get("separation", c.separation)
      .get("label_noise", c.label_noise).get("seed", c.seed);
  r.finish();
}

void read_train(const json& j, TrainConfig& c) {
  Reader r(j, "train");
  r.get("learning_rate", c.learning_rate).get("epochs", c.epochs)
      .get("batch_size", c.batch_size).get("l2_reg", c.l2_reg)
      .get("seed", c.seed);
  r.finish();
}

void read_pacing(const json& j, PacingParams& c) {
  Reader r(j, "pacing");
  r.get("lambda0", c.lambda0).get("lambda_min", c.lambda_min)
      .get("lambda_max", c.lambda_max).get("eta", c.eta)
      .get("period_len", c.period_len);
  r.finish();
}

void read_gradest(const json& j, GradEstConfig& c) {
  Reader r(j, "gradest");
  std::string mode = to_string(c.mode);
  r.get("entropy_threshold", c.entropy_threshold)
      .get("exploration_utility", c.exploration_utility)
      .get("zo_mu", c.zo_mu).get("zo_dirs", c.zo_dirs).get("mode", mode)
      .get("seed", c.seed);
  r.finish();
  c.mode = grad_mode_from_string(mode);
}

void read_seeds(Reader& r, std::vector<std::uint64_t>& seeds) {
  r.get("seeds", seeds);
  if (seeds.empty()) throw std::invalid_argument("seeds must be non-empty");
}

// Keys shared by every experiment file.
void common_keys(Reader& r) { r.ignore("experiment").ignore("output_dir"); }

}  // namespace

std::vector<std::uint64_t> default_seeds(std::size_t n) {
  std::vector<std::uint64_t> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = i;
  return s;
}

Exp1Config exp1_config_from_json(const json& j) {
  Exp1Config c;
  Reader r(j, "exp1");
  common_keys(r);
  read_seeds(r, c.seeds);
  r.block("synth", [&](const json& b) { read_synth(b, c.synth); })
      .block("train", [&](const json& b) { read_train(b, c.train); })
      .get("n_init", c.n_init).get("n_test", c.n_test).get("n_val", c.n_val)
      .get("budget_count", c.budget_count)
      .get("kernel_lambda", c.kernel_lambda).get("beta", c.beta)
      .get("gamma", c.gamma);
  r.finish();
  return c;
}

Exp2Config exp2_config_from_json(const json& j) {
  Exp2Config c;
  Reader r(j, "exp2");
  common_keys(r);
  r.get("seed", c.seed).get("trials", c.trials).get("T", c.T)
      .get("value", c.value).get("market_lo", c.market.lo)
      .get("market_hi", c.market.hi).get("lambda0", c.lambda0)
      .get("lambda_min", c.lambda_min).get("lambda_max", c.lambda_max)
      .get("period_len", c.period_len).get("budget", c.budget)
      .get("budget_cap", c.budget_cap).get("etas", c.etas).get("budgets", c.budgets)
      .get("eta_star", c.eta_star);
  r.finish();
  if (c.trials < 1) throw std::invalid_argument("exp2: trials must be >= 1");
  if (c.etas.empty()) throw std::invalid_argument("exp2: etas is empty");
  return c;
}

Exp3Config exp3_config_from_json(const json& j) {
  Exp3Config c;
  Reader r(j, "exp3");
  common_keys(r);
  read_seeds(r, c.seeds);
  r.block("synth", [&](const json& b) { read_synth(b, c.synth); })
      .block("train", [&](const json& b) { read_train(b, c.train); })
      .get("n_train", c.n_train).get("n_test", c.n_test)
      .get("entropy_threshold", c.entropy_threshold).get("zo_mu", c.zo_mu)
      .get("zo_dirs", c.zo_dirs);
  r.finish();
  return c;
}

Exp4Config exp4_config_from_json(const json& j) {
  Exp4Config c;
  Reader r(j, "exp4");
  common_keys(r);
  read_seeds(r, c.seeds);
  std::string mechanism = to_string(c.mechanism);
  r.block("synth", [&](const json& b) { read_synth(b, c.synth); })
      .block("train", [&](const json& b) { read_train(b, c.train); })
      .block("pacing", [&](const json& b) { read_pacing(b, c.pacing); })
      .block("gradest", [&](const json& b) { read_gradest(b, c.gradest); })
      .block("strategies",
             [&](const json& b) {
               c.strategies.clear();
               for (const auto& s : b) {
                 StrategySpec spec;
                 Reader sr(s, "strategies[]");
                 sr.get("kind", spec.kind).get("beta", spec.beta)
                     .get("constant", spec.constant)
                     .get("multiplier", spec.multiplier);
                 sr.finish();
                 spec.to_strategy();  // validates
                 c.strategies.push_back(spec);
               }
             })
      .get("n_init", c.n_init).get("n_val", c.n_val).get("n_auc", c.n_auc)
      .get("n_test", c.n_test).get("budget", c.budget)
      .get("mechanism", mechanism).get("kernel_lambda", c.kernel_lambda)
      .get("beta", c.beta).get("market_lo", c.market_lo)
      .get("market_hi", c.market_hi)
      .get("calibration_bid", c.calibration_bid).get("tie_wins", c.tie_wins)
      .get("spa_lambda_floor_one", c.spa_lambda_floor_one)
      .get("write_logs", c.write_logs);
  r.finish();
  c.mechanism = mechanism_from_string(mechanism);
  if (c.strategies.empty())
    throw std::invalid_argument("exp4: strategies is empty");
  return c;
}

ToyConfig toy_config_from_json(const json& j) {
  ToyConfig c;
  Reader r(j, "toy");
  common_keys(r);
  r.get("d", c.d).get("r", c.r).get("xis", c.xis).get("steps", c.steps)
      .get("trajectories", c.trajectories).get("n_bumps", c.n_bumps)
      .get("width", c.width).get("center_spread", c.center_spread)
      .get("amplitudes", c.amplitudes).get("start_spread", c.start_spread)
      .get("seed", c.seed);
  r.finish();
  return c;
}

BoundsConfig bounds_config_from_json(const json& j) {
  BoundsConfig c;
  Reader r(j, "bounds");
  common_keys(r);
  r.get("seed", c.seed)
      .get("theorem1_instances", c.theorem1_instances)
      .get("theorem1_d", c.theorem1_d).get("theorem1_k", c.theorem1_k)
      .get("theorem1_max_selected", c.theorem1_max_selected)
      .get("theorem1_gamma", c.theorem1_gamma)
      .get("theorem1_kernel_lambda", c.theorem1_kernel_lambda)
      .get("theorem1_norm_lo", c.theorem1_norm_lo)
      .get("theorem1_norm_hi", c.theorem1_norm_hi)
      .get("telescope_runs", c.telescope_runs)
      .get("telescope_T", c.telescope_T)
      .get("telescope_budget", c.telescope_budget)
      .get("telescope_eta", c.telescope_eta)
      .get("telescope_lambda0", c.telescope_lambda0)
      .get("telescope_lambda_max", c.telescope_lambda_max)
      .get("telescope_value", c.telescope_value);
  r.finish();
  return c;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return json::parse(in);
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

}  // namespace infobid
