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


#include "common.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "infobid/csv.hpp"

namespace infobid {
namespace detail {

RowMatrix label_gradients(const LogisticModel& model, const Dataset& data) {
  RowMatrix g(static_cast<Eigen::Index>(data.size()), data.dim());
  for (std::size_t i = 0; i < data.size(); ++i)
    g.row(static_cast<Eigen::Index>(i)) =
        model.loss_gradient(data[i].features, data.label(i)).transpose();
  return g;
}

void write_gradient_csv(const std::filesystem::path& path, const RowMatrix& g) {
  std::vector<std::string> cols;
  for (Eigen::Index j = 0; j < g.cols(); ++j) cols.push_back("g" + std::to_string(j));
  TableWriter w(path, cols);
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) w.cell(g(i, j));
    w.end_row();
  }
}

double mean(std::span<const double> v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

std::string seed_tag(std::uint64_t seed) { return "seed" + std::to_string(seed); }

}  // namespace detail

Strategy StrategySpec::to_strategy() const {
  return strategy_from_string(kind, beta, constant, multiplier);
}

std::string StrategySpec::label() const {
  if (kind == "proposed") return "proposed_b" + format_real(beta);
  return kind;
}

Exp4Config::Exp4Config() {
  pacing.lambda0 = 0.01;
  pacing.eta = 0.1;
  pacing.period_len = 100;
  gradest.mode = GradMode::zeroth_order;
  gradest.zo_dirs = 5;
  gradest.zo_mu = 0.01;
}

const EstimatorRow& Exp3SeedResult::find(const std::string& subset,
                                         const std::string& method) const {
  for (const auto& r : rows)
    if (r.subset == subset && r.method == method) return r;
  throw std::out_of_range("no estimator row " + subset + "/" + method);
}

const Exp4StrategyResult& Exp4SeedResult::find(const std::string& label) const {
  for (const auto& s : strategies)
    if (s.strategy == label) return s;
  throw std::out_of_range("no strategy " + label);
}

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("spearman needs two equal series of length >= 2");
  auto ranks = [](std::span<const double> v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const auto ra = ranks(a);
  const auto rb = ranks(b);
  const double ma = detail::mean(ra), mb = detail::mean(rb);
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa == 0 || sbb == 0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace infobid
