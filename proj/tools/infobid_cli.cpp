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


// Command-line driver: one subcommand per experiment.
//
//   infobid exp4 --config exp4.json --out results/
//
// Exit status: 0 on success, 2 when an invariant check fails, 1 on error.

#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "infobid/experiments.hpp"

namespace {

using infobid::read_json_file;
using nlohmann::json;

int report(const std::vector<std::string>& violations) {
  for (const auto& v : violations) std::cerr << "invariant: " << v << "\n";
  return violations.empty() ? 0 : 2;
}

int run_exp1(const json& j, const std::filesystem::path& out) {
  const auto r = infobid::run_exp1(infobid::exp1_config_from_json(j), out);
  std::cout << "exp1: surrogate beats random on " << r.surrogate_beats_random << "/"
            << r.seeds.size() << " seeds; mean |AUC gap| to fim_oracle: surrogate "
            << r.mean_gap_surrogate_fim << ", random " << r.mean_gap_random_fim << "\n";
  return report(r.violations);
}

int run_exp2(const json& j, const std::filesystem::path& out) {
  const auto r = infobid::run_exp2(infobid::exp2_config_from_json(j), out);
  std::cout << "exp2: eta* = " << r.eta_star << ", u_shaped = " << r.u_shaped
            << ", band_ok = " << r.band_ok << "\n";
  return report(r.violations);
}

int run_exp3(const json& j, const std::filesystem::path& out) {
  const auto r = infobid::run_exp3(infobid::exp3_config_from_json(j), out);
  std::cout << "exp3: ordering holds on " << r.ordering_holds << "/" << r.seeds.size()
            << " seeds; correct-subset cosine exact = " << r.correct_subset_exact << "\n";
  return report(r.violations);
}

int run_exp4(const json& j, const std::filesystem::path& out) {
  const auto r = infobid::run_exp4(infobid::exp4_config_from_json(j), out);
  std::cout << "exp4:";
  for (const auto& [label, count] : r.proposed_ge)
    std::cout << " " << r.proposed_label << ">=" << label << " " << count << "/"
              << r.seeds.size() << ";";
  std::cout << " budget_safe = " << r.all_budget_safe
            << ", lambda_ok = " << r.all_lambda_ok << "\n";
  return report(r.violations);
}

int run_toy(const json& j, const std::filesystem::path& out) {
  const auto r = infobid::run_toy(infobid::toy_config_from_json(j), out);
  std::cout << "toy: spearman = " << r.spearman << ", monotone = " << r.monotone << "\n";
  return report(r.violations);
}

int run_bounds(const json& j, const std::filesystem::path& out) {
  const auto r = infobid::run_bounds(infobid::bounds_config_from_json(j), out);
  std::cout << "bounds: fisher bound " << r.theorem1_pass << "/" << r.theorem1_total
            << ", telescope max err " << r.telescope_max_err << "\n";
  return report(r.violations);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information-aware bidding simulator"};
  app.require_subcommand(1);

  using Runner = std::function<int(const json&, const std::filesystem::path&)>;
  const std::vector<std::pair<std::string, Runner>> commands = {
      {"exp1", run_exp1}, {"exp2", run_exp2}, {"exp3", run_exp3},
      {"exp4", run_exp4}, {"toy", run_toy},   {"bounds", run_bounds}};

  std::string config_path;
  std::string out_dir;
  std::vector<std::pair<CLI::App*, Runner>> subs;
  for (const auto& [name, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, "run " + name);
    sub->add_option("--config", config_path, "JSON config")->required();
    sub->add_option("--out", out_dir, "output directory")->required();
    subs.emplace_back(sub, fn);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const json cfg = read_json_file(config_path);
    std::filesystem::create_directories(out_dir);
    for (const auto& [sub, fn] : subs)
      if (sub->parsed()) return fn(cfg, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
