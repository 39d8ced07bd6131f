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


#include <cmath>
#include <random>
#include <stdexcept>

#include "common.hpp"
#include "infobid/csv.hpp"
#include "infobid/random.hpp"

namespace infobid {

double BumpLandscape::reward(const Vector& x) const {
  double r = 0.0;
  for (Eigen::Index j = 0; j < centers.rows(); ++j)
    r += amplitudes[j] *
         std::exp(-(x - centers.row(j).transpose()).squaredNorm() / (2 * width * width));
  return r;
}

Vector BumpLandscape::gradient(const Vector& x) const {
  Vector g = Vector::Zero(x.size());
  for (Eigen::Index j = 0; j < centers.rows(); ++j) {
    const Vector diff = x - centers.row(j).transpose();
    g -= amplitudes[j] * std::exp(-diff.squaredNorm() / (2 * width * width)) /
         (width * width) * diff;
  }
  return g;
}

BumpLandscape make_landscape(const ToyConfig& cfg) {
  if (cfg.d < 1) throw std::invalid_argument("toy: d must be >= 1");
  if (!(cfg.width > 0)) throw std::invalid_argument("toy: width must be > 0");
  if (cfg.amplitudes.size() != cfg.n_bumps)
    throw std::invalid_argument("toy: need one amplitude per bump");
  BumpLandscape land;
  land.width = cfg.width;
  land.amplitudes.resize(static_cast<Eigen::Index>(cfg.n_bumps));
  land.centers.resize(static_cast<Eigen::Index>(cfg.n_bumps), cfg.d);
  Rng rng = make_stream(cfg.seed, 0x6c616e64ULL);
  for (std::size_t j = 0; j < cfg.n_bumps; ++j) {
    if (!(cfg.amplitudes[j] > 0))
      throw std::invalid_argument("toy: amplitudes must be > 0");
    land.amplitudes[static_cast<Eigen::Index>(j)] = cfg.amplitudes[j];
    land.centers.row(static_cast<Eigen::Index>(j)) =
        cfg.center_spread * gaussian_vector(cfg.d, rng).transpose();
  }
  return land;
}

namespace {

struct Trajectory {
  double terminal_grad_sq = 0.0;
  double acceptance = 0.0;
};

Trajectory run_trajectory(const ToyConfig& cfg, const BumpLandscape& land,
                          std::size_t arm, std::size_t j) {
  const double xi = cfg.xis[arm];
  Rng start = make_stream(cfg.seed, 0x100000 + j);
  Vector x = cfg.start_spread * gaussian_vector(cfg.d, start);
  Rng rng = make_stream(mix64(cfg.seed) ^ mix64(arm + 1), j);
  std::normal_distribution<double> noise(0.0, 1.0);
  const std::size_t tail = std::max<std::size_t>(1, cfg.steps / 10);
  double tail_sum = 0.0;
  std::size_t accepted = 0;
  double rx = land.reward(x);
  for (std::size_t t = 0; t < cfg.steps; ++t) {
    const Vector cand = x + sphere_vector(cfg.d, cfg.r, rng);
    const double rc = land.reward(cand);
    const double noisy_c = rc + xi * noise(rng);
    const double noisy_x = rx + xi * noise(rng);
    if (noisy_c > noisy_x) {
      x = cand;
      rx = rc;
      ++accepted;
    }
    if (t >= cfg.steps - tail) tail_sum += land.gradient(x).squaredNorm();
  }
  return {tail_sum / static_cast<double>(tail),
          static_cast<double>(accepted) / static_cast<double>(cfg.steps)};
}

}  // namespace

ToyResult run_toy(const ToyConfig& cfg, const std::filesystem::path& out_dir) {
  if (!(cfg.r > 0)) throw std::invalid_argument("toy: r must be > 0");
  if (cfg.xis.empty() || cfg.trajectories < 1 || cfg.steps < 1)
    throw std::invalid_argument("toy: need xis, trajectories and steps");
  for (double xi : cfg.xis)
    if (!(xi >= 0)) throw std::invalid_argument("toy: xi must be >= 0");
  const BumpLandscape land = make_landscape(cfg);

  ToyResult out;
  for (std::size_t a = 0; a < cfg.xis.size(); ++a) {
    const auto traj = parallel_map<Trajectory>(
        cfg.trajectories, [&](std::size_t j) { return run_trajectory(cfg, land, a, j); });
    std::vector<double> g, acc;
    for (const auto& t : traj) {
      g.push_back(t.terminal_grad_sq);
      acc.push_back(t.acceptance);
    }
    out.arms.push_back({cfg.xis[a], detail::mean(g),
                        detail::stddev(g) / std::sqrt(static_cast<double>(g.size())),
                        detail::mean(acc)});
  }
  std::vector<double> xs, ys;
  for (const auto& arm : out.arms) {
    xs.push_back(arm.xi);
    ys.push_back(arm.terminal_grad_sq);
  }
  out.spearman = xs.size() >= 2 ? spearman(xs, ys) : 0.0;
  out.monotone = true;
  for (std::size_t i = 1; i < ys.size(); ++i)
    if (ys[i] < ys[i - 1]) out.monotone = false;

  if (!out_dir.empty()) {
    TableWriter w(out_dir / "toy_results.csv",
                  {"xi", "terminal_grad_sq", "terminal_grad_sq_se", "acceptance_rate"});
    for (const auto& arm : out.arms) {
      w.cell(arm.xi).cell(arm.terminal_grad_sq).cell(arm.terminal_grad_sq_se)
          .cell(arm.acceptance_rate);
      w.end_row();
    }
    TableWriter wl(out_dir / "toy_landscape.csv", {"bump", "amplitude", "width", "center"});
    for (Eigen::Index j = 0; j < land.centers.rows(); ++j) {
      std::string c;
      for (Eigen::Index k = 0; k < land.centers.cols(); ++k)
        c += (k ? " " : "") + format_real(land.centers(j, k));
      wl.cell(static_cast<long long>(j)).cell(land.amplitudes[j]).cell(land.width).cell(c);
      wl.end_row();
    }
    write_json_file(out_dir / "toy_summary.json",
                    {{"spearman", out.spearman}, {"monotone", out.monotone},
                     {"trajectories", cfg.trajectories}, {"steps", cfg.steps}});
  }
  return out;
}

}  // namespace infobid
