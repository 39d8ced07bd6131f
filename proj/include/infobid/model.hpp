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

// Intercept-free logistic pCTR model, synthetic data, training and metrics.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "infobid/linalg.hpp"

namespace infobid {

inline constexpr double kProbEpsilon = 1e-12;

template <typename Scalar>
Scalar sigmoid(Scalar z) {
  if (z >= Scalar(0)) return Scalar(1) / (Scalar(1) + std::exp(-z));
  const Scalar e = std::exp(z);
  return e / (Scalar(1) + e);
}

template <typename Scalar>
Scalar clamp_probability(Scalar p) {
  const Scalar eps = static_cast<Scalar>(kProbEpsilon);
  return std::clamp(p, eps, Scalar(1) - eps);
}

/// Binary cross-entropy of a (clamped) probability against a 0/1 label.
template <typename Scalar>
Scalar log_loss(Scalar p, int y) {
  const Scalar q = clamp_probability(p);
  return y == 1 ? -std::log(q) : -std::log1p(-q);
}

/// sigmoid(theta . x), clamped away from 0 and 1.
template <typename DerivedW, typename DerivedX>
typename DerivedW::Scalar predict_probability(
    const Eigen::MatrixBase<DerivedW>& theta,
    const Eigen::MatrixBase<DerivedX>& x) {
  require_size("predict", theta.size(), x.size());
  return clamp_probability(sigmoid(theta.dot(x)));
}

/// Exact log-loss gradient in theta: (p - y) x.
template <typename DerivedX>
VectorX<typename DerivedX::Scalar> logistic_gradient(
    typename DerivedX::Scalar p, int y, const Eigen::MatrixBase<DerivedX>& x) {
  using Scalar = typename DerivedX::Scalar;
  return (p - static_cast<Scalar>(y)) * x;
}

struct Sample {
  Vector features;
  std::optional<int> label;
};

/// Ordered samples sharing one feature dimension. Index identifies a sample.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(Eigen::Index dim);

  // Throws DimensionMismatch / std::invalid_argument on bad input.
  void add(Sample s);
  void add(Vector features, std::optional<int> label);

  Eigen::Index dim() const { return dim_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  const Sample& operator[](std::size_t i) const { return samples_[i]; }
  const std::vector<Sample>& samples() const { return samples_; }
  auto begin() const { return samples_.begin(); }
  auto end() const { return samples_.end(); }

  bool fully_labeled() const;
  int label(std::size_t i) const;

  // Rows are samples.
  RowMatrix feature_matrix() const;
  Vector label_vector() const;

  Dataset subset(std::span<const std::size_t> indices) const;
  Dataset slice(std::size_t begin, std::size_t count) const;
  // Concatenation; dims must agree unless one side is empty.
  static Dataset concat(const Dataset& a, const Dataset& b);

 private:
  Eigen::Index dim_ = 0;
  std::vector<Sample> samples_;
};

class LogisticModel {
 public:
  LogisticModel() = default;
  explicit LogisticModel(Eigen::Index dim) : weights_(Vector::Zero(dim)) {}
  explicit LogisticModel(Vector weights);

  Eigen::Index dim() const { return weights_.size(); }
  const Vector& weights() const { return weights_; }
  Vector& weights() { return weights_; }

  double predict(const Eigen::Ref<const Vector>& x) const {
    return predict_probability(weights_, x);
  }
  // pCTR for every row.
  Vector predict_all(const RowMatrix& xs) const;

  Vector loss_gradient(const Eigen::Ref<const Vector>& x, int y) const {
    return logistic_gradient(predict(x), y, x);
  }

 private:
  Vector weights_;
};

struct TrainConfig {
  double learning_rate = 0.5;
  int epochs = 200;
  int batch_size = 32;
  double l2_reg = 1e-3;
  std::uint64_t seed = 0;
};

/// Mini-batch gradient descent on mean log loss + l2_reg * |theta|^2 / 2.
/// Starts from `init`; deterministic given cfg.seed.
LogisticModel train(const LogisticModel& init, const Dataset& data,
                    const TrainConfig& cfg);

/// Mean training objective (log loss plus the ridge term).
double training_objective(const LogisticModel& model, const Dataset& data,
                          double l2_reg);

struct SynthConfig {
  std::size_t n = 2000;
  Eigen::Index d = 20;
  double separation = 3.0;
  double label_noise = 0.05;
  std::uint64_t seed = 0;
};

struct SyntheticData {
  Dataset data;
  Vector ground_truth;  // unit direction scaled by separation
};

/// x ~ N(0, I_d); y ~ Bernoulli(sigmoid(w* . x)), flipped w.p. label_noise.
SyntheticData generate_synthetic(const SynthConfig& cfg);

/// Rank-statistic AUC with average ranks for ties. Throws
/// std::invalid_argument when either class is absent.
double auc(std::span<const double> scores, std::span<const int> labels);

struct Metrics {
  double logloss = 0.0;
  std::optional<double> auc;  // absent for single-class data
};

Metrics evaluate(const LogisticModel& model, const Dataset& data);

}  // namespace infobid
