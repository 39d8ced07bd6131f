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


#include <random>
#include <stdexcept>

#include "common.hpp"
#include "infobid/csv.hpp"
#include "infobid/random.hpp"

namespace infobid {
namespace {

constexpr const char* kMethods[] = {"analytical", "zo", "pctr_weighted", "random"};
constexpr const char* kSubsets[] = {"all", "high_conf", "correct"};

Exp3SeedResult run_seed(const Exp3Config& cfg, std::uint64_t seed) {
  SynthConfig sc = cfg.synth;
  sc.n = cfg.n_train + cfg.n_test;
  sc.seed = seed;
  const Dataset all = generate_synthetic(sc).data;
  const Dataset train_set = all.slice(0, cfg.n_train);
  const Dataset test = all.slice(cfg.n_train, cfg.n_test);
  TrainConfig tc = cfg.train;
  tc.seed = seed;
  const LogisticModel model = train(LogisticModel(all.dim()), train_set, tc);

  // estimates[subset][method], truths[subset]
  std::vector<std::vector<std::vector<Vector>>> est(3, std::vector<std::vector<Vector>>(4));
  std::vector<std::vector<Vector>> truth(3);
  bool correct_exact = true;
  Rng coin = make_stream(seed, 0x636f696eULL);
  std::bernoulli_distribution fair(0.5);
  for (std::size_t t = 0; t < test.size(); ++t) {
    const Vector& x = test[t].features;
    const int y = test.label(t);
    const double p = model.predict(x);
    const HypotheticalGradients hyp = hypothetical_gradients(model, x);
    Rng rng = make_stream(seed, t);
    const HypotheticalGradients zo =
        zo_hypothetical_gradients(model, x, cfg.zo_mu, cfg.zo_dirs, rng);
    const Vector g_true = y == 1 ? hyp.g1 : hyp.g0;
    const bool pick_one = fair(coin);
    const Vector row[4] = {norm_select(hyp.g0, hyp.g1).first,
                           norm_select(zo.g0, zo.g1).first,
                           pctr_weighted(hyp.g0, hyp.g1, p),
                           pick_one ? hyp.g1 : hyp.g0};
    const bool in[3] = {true, binary_entropy(p) <= cfg.entropy_threshold,
                        (p > 0.5 ? 1 : 0) == y};
    if (in[2] && g_true.squaredNorm() > 0 && cosine_or_zero(row[0], g_true) != 1.0)
      correct_exact = false;
    for (int s = 0; s < 3; ++s) {
      if (!in[s]) continue;
      truth[s].push_back(g_true);
      for (int m = 0; m < 4; ++m) est[s][m].push_back(row[m]);
    }
  }

  Exp3SeedResult res;
  res.seed = seed;
  res.correct_exact = correct_exact;
  for (int s = 0; s < 3; ++s)
    for (int m = 0; m < 4; ++m)
      res.rows.push_back({kSubsets[s], kMethods[m],
                          estimator_accuracy(est[s][m], truth[s]), truth[s].size()});
  return res;
}

}  // namespace

Exp3Result run_exp3(const Exp3Config& cfg, const std::filesystem::path& out_dir) {
  Exp3Result out;
  out.seeds = parallel_map<Exp3SeedResult>(
      cfg.seeds.size(), [&](std::size_t i) { return run_seed(cfg, cfg.seeds[i]); });
  for (const auto& s : out.seeds) {
    const double a = s.find("high_conf", "analytical").accuracy.mean_cosine;
    const double z = s.find("high_conf", "zo").accuracy.mean_cosine;
    const double w = s.find("high_conf", "pctr_weighted").accuracy.mean_cosine;
    const double r = s.find("high_conf", "random").accuracy.mean_cosine;
    if (a >= z && z >= w && w >= r) ++out.ordering_holds;
    if (!s.correct_exact) {
      out.correct_subset_exact = false;
      out.violations.push_back("analytical cosine != 1 on a correct prediction, " +
                               detail::seed_tag(s.seed));
    }
  }

  if (!out_dir.empty()) {
    TableWriter w(out_dir / "exp3_results.csv",
                  {"seed", "subset", "method", "count", "mean_cosine", "mean_l2",
                   "excluded_zero_truth"});
    for (const auto& s : out.seeds)
      for (const auto& r : s.rows) {
        w.cell(static_cast<long long>(s.seed)).cell(r.subset).cell(r.method)
            .cell(r.count).cell(r.accuracy.mean_cosine).cell(r.accuracy.mean_l2)
            .cell(r.accuracy.excluded_zero_truth);
        w.end_row();
      }
    write_json_file(out_dir / "exp3_summary.json",
                    {{"seeds", out.seeds.size()},
                     {"ordering_holds", out.ordering_holds},
                     {"correct_subset_exact", out.correct_subset_exact}});
  }
  return out;
}

}  // namespace infobid
