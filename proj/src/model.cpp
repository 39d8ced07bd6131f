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

#include "infobid/model.hpp"

#include <algorithm>
#include <numeric>

#include "infobid/random.hpp"

namespace infobid {

Dataset::Dataset(Eigen::Index dim) : dim_(dim) {
  if (dim < 0) throw std::invalid_argument("dataset dimension must be >= 0");
}

void Dataset::add(Sample s) {
  if (samples_.empty() && dim_ == 0) dim_ = s.features.size();
  require_size("dataset sample", dim_, s.features.size());
  if (!s.features.allFinite())
    throw std::invalid_argument("dataset sample has non-finite features");
  if (s.label && *s.label != 0 && *s.label != 1)
    throw std::invalid_argument("label must be 0 or 1");
  samples_.push_back(std::move(s));
}

void Dataset::add(Vector features, std::optional<int> label) {
  add(Sample{std::move(features), label});
}

bool Dataset::fully_labeled() const {
  return std::all_of(samples_.begin(), samples_.end(),
                     [](const Sample& s) { return s.label.has_value(); });
}

int Dataset::label(std::size_t i) const {
  const auto& l = samples_.at(i).label;
  if (!l) throw std::invalid_argument("sample " + std::to_string(i) +
                                      " has no label");
  return *l;
}

RowMatrix Dataset::feature_matrix() const {
  RowMatrix x(static_cast<Eigen::Index>(samples_.size()), dim_);
  for (std::size_t i = 0; i < samples_.size(); ++i)
    x.row(static_cast<Eigen::Index>(i)) = samples_[i].features.transpose();
  return x;
}

Vector Dataset::label_vector() const {
  Vector y(static_cast<Eigen::Index>(samples_.size()));
  for (std::size_t i = 0; i < samples_.size(); ++i)
    y[static_cast<Eigen::Index>(i)] = label(i);
  return y;
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset out(dim_);
  for (std::size_t i : indices) out.samples_.push_back(samples_.at(i));
  return out;
}

Dataset Dataset::slice(std::size_t begin, std::size_t count) const {
  if (begin + count > samples_.size())
    throw std::out_of_range("dataset slice out of range");
  Dataset out(dim_);
  out.samples_.assign(samples_.begin() + static_cast<std::ptrdiff_t>(begin),
                      samples_.begin() +
                          static_cast<std::ptrdiff_t>(begin + count));
  return out;
}

Dataset Dataset::concat(const Dataset& a, const Dataset& b) {
  if (a.empty()) {
    Dataset out = b;
    if (out.dim_ == 0) out.dim_ = a.dim_;
    return out;
  }
  Dataset out = a;
  for (const auto& s : b) out.add(s);
  return out;
}

LogisticModel::LogisticModel(Vector weights) : weights_(std::move(weights)) {
  if (!weights_.allFinite())
    throw std::invalid_argument("model weights must be finite");
}

Vector LogisticModel::predict_all(const RowMatrix& xs) const {
  require_size("predict", dim(), xs.cols());
  Vector logits = xs * weights_;
  return logits.unaryExpr(
      [](double z) { return clamp_probability(sigmoid(z)); });
}

LogisticModel train(const LogisticModel& init, const Dataset& data,
                    const TrainConfig& cfg) {
  if (cfg.learning_rate <= 0) throw std::invalid_argument("learning_rate <= 0");
  if (cfg.batch_size < 1) throw std::invalid_argument("batch_size < 1");
  if (cfg.epochs < 0) throw std::invalid_argument("epochs < 0");
  if (data.empty()) throw std::invalid_argument("cannot train on empty data");
  if (!data.fully_labeled())
    throw std::invalid_argument("training data has missing labels");
  require_size("train", init.dim(), data.dim());

  const RowMatrix x = data.feature_matrix();
  const Vector y = data.label_vector();
  const auto n = static_cast<std::size_t>(x.rows());
  const auto batch = std::min<std::size_t>(cfg.batch_size, n);

  Vector theta = init.weights();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng = make_stream(cfg.seed, 0x7472);

  Vector grad(theta.size());
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t stop = std::min(n, start + batch);
      grad.setZero();
      for (std::size_t k = start; k < stop; ++k) {
        const auto i = static_cast<Eigen::Index>(order[k]);
        const double p = clamp_probability(sigmoid(x.row(i).dot(theta)));
        grad.noalias() += (p - y[i]) * x.row(i).transpose();
      }
      grad /= static_cast<double>(stop - start);
      grad += cfg.l2_reg * theta;
      theta -= cfg.learning_rate * grad;
    }
  }
  return LogisticModel(std::move(theta));
}

double training_objective(const LogisticModel& model, const Dataset& data,
                          double l2_reg) {
  if (data.empty()) throw std::invalid_argument("empty dataset");
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i)
    total += log_loss(model.predict(data[i].features), data.label(i));
  return total / static_cast<double>(data.size()) +
         0.5 * l2_reg * model.weights().squaredNorm();
}

SyntheticData generate_synthetic(const SynthConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("SynthConfig.n must be >= 1");
  if (cfg.d < 1) throw std::invalid_argument("SynthConfig.d must be >= 1");
  if (cfg.label_noise < 0 || cfg.label_noise > 1)
    throw std::invalid_argument("label_noise must lie in [0,1]");

  Rng truth_rng = make_stream(cfg.seed, 1);
  Vector w = gaussian_vector(cfg.d, truth_rng);
  w *= cfg.separation / w.norm();

  Rng rng = make_stream(cfg.seed, 2);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  SyntheticData out{Dataset(cfg.d), w};
  for (std::size_t i = 0; i < cfg.n; ++i) {
    Vector x = gaussian_vector(cfg.d, rng);
    int y = unif(rng) < sigmoid(w.dot(x)) ? 1 : 0;
    if (unif(rng) < cfg.label_noise) y = 1 - y;
    out.data.add(std::move(x), y);
  }
  return out;
}

double auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size())
    throw DimensionMismatch("auc", static_cast<Eigen::Index>(scores.size()),
                            static_cast<Eigen::Index>(labels.size()));
  const std::size_t n = scores.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  double pos_rank_sum = 0.0;
  std::size_t n_pos = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[idx[j]] == scores[idx[i]]) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // 1-based
    for (std::size_t k = i; k < j; ++k) {
      if (labels[idx[k]] == 1) {
        pos_rank_sum += avg_rank;
        ++n_pos;
      }
    }
    i = j;
  }
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0)
    throw std::invalid_argument("AUC undefined: dataset has a single class");
  const double np = static_cast<double>(n_pos);
  return (pos_rank_sum - np * (np + 1) / 2) /
         (np * static_cast<double>(n_neg));
}

Metrics evaluate(const LogisticModel& model, const Dataset& data) {
  if (data.empty()) throw std::invalid_argument("cannot evaluate empty data");
  std::vector<double> scores(data.size());
  std::vector<int> labels(data.size());
  double loss = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    scores[i] = model.predict(data[i].features);
    labels[i] = data.label(i);
    loss += log_loss(scores[i], labels[i]);
  }
  Metrics m;
  m.logloss = loss / static_cast<double>(data.size());
  const auto n_pos = std::count(labels.begin(), labels.end(), 1);
  if (n_pos > 0 && n_pos < static_cast<long>(labels.size()))
    m.auc = auc(scores, labels);
  return m;
}

}  // namespace infobid
