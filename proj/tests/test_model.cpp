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

#include <cmath>
#include <vector>

#include "infobid/model.hpp"
#include "infobid/random.hpp"
#include "oracles.hpp"

using namespace infobid;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

}  // namespace

TEST_CASE("predict") {
  LogisticModel zero(3);
  CHECK(zero.predict(vec({1, -2, 3})) == doctest::Approx(0.5));
  LogisticModel m(vec({1, 0}));
  CHECK(m.predict(vec({0, 5})) == doctest::Approx(0.5));
  CHECK(m.predict(vec({2, 0})) == doctest::Approx(oracle::sigmoid(2.0)).epsilon(1e-14));
  CHECK(m.predict(vec({2, 0})) == doctest::Approx(0.8808).epsilon(1e-4));
  CHECK_THROWS_AS(m.predict(vec({1, 2, 3})), DimensionMismatch);
}

TEST_CASE("predict clamps to [eps, 1 - eps]") {
  LogisticModel m(vec({1000}));
  CHECK(m.predict(vec({1})) == doctest::Approx(1 - 1e-12));
  CHECK(m.predict(vec({-1})) == 1e-12);
}

TEST_CASE("log loss") {
  CHECK(log_loss(0.5, 1) == doctest::Approx(std::log(2.0)));
  CHECK(log_loss(1 - 1e-12, 1) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(log_loss(0.9, 0) == doctest::Approx(-std::log(0.1)));
  CHECK(std::isfinite(log_loss(0.0, 1)));
}

TEST_CASE("loss gradient") {
  LogisticModel zero(2);
  Vector g = zero.loss_gradient(vec({1, 0}), 1);
  CHECK(g[0] == doctest::Approx(-0.5));
  CHECK(g[1] == 0.0);
  LogisticModel m(vec({1, 0}));
  CHECK(m.loss_gradient(Vector::Zero(2), 1).isZero());
  g = m.loss_gradient(vec({2, 0}), 0);
  CHECK(g[0] == doctest::Approx(2 * oracle::sigmoid(2.0)));
  CHECK(g[0] == doctest::Approx(1.7616).epsilon(1e-4));
}

TEST_CASE("loss gradient matches central differences") {
  Rng rng(11);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int t = 0; t < 100; ++t) {
    const Vector theta = gaussian_vector(6, rng) * 0.5;
    const Vector x = gaussian_vector(6, rng);
    const int y = coin(rng);
    const Vector g = LogisticModel(theta).loss_gradient(x, y);
    const Vector fd = oracle::central_difference(
        [&](const Vector& th) { return oracle::logistic_loss(th, x, y); }, theta);
    for (Eigen::Index i = 0; i < g.size(); ++i)
      CHECK(std::abs(g[i] - fd[i]) <= 1e-6 * std::max(1.0, std::abs(fd[i])));
  }
}

TEST_CASE("train") {
  Dataset two(1);
  two.add(vec({1.0}), 1);
  two.add(vec({-1.0}), 0);
  TrainConfig cfg;
  cfg.epochs = 100;
  const LogisticModel fit = train(LogisticModel(1), two, cfg);
  CHECK(fit.predict(vec({1.0})) > 0.5);
  CHECK(fit.predict(vec({-1.0})) < 0.5);

  cfg.epochs = 0;
  LogisticModel init(vec({0.3}));
  CHECK(train(init, two, cfg).weights() == init.weights());

  CHECK_THROWS(train(LogisticModel(1), Dataset(1), cfg));
  Dataset unlabeled(1);
  unlabeled.add(vec({1.0}), std::nullopt);
  CHECK_THROWS(train(LogisticModel(1), unlabeled, TrainConfig{}));
}

TEST_CASE("train is deterministic") {
  SynthConfig sc;
  sc.n = 200;
  sc.d = 5;
  const Dataset data = generate_synthetic(sc).data;
  TrainConfig cfg;
  cfg.epochs = 20;
  cfg.seed = 3;
  CHECK(train(LogisticModel(5), data, cfg).weights() ==
        train(LogisticModel(5), data, cfg).weights());
}

TEST_CASE("small full-batch step does not increase training loss") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    SynthConfig sc;
    sc.n = 64;
    sc.d = 4;
    sc.seed = s;
    const Dataset data = generate_synthetic(sc).data;
    Rng rng(s);
    const LogisticModel init(gaussian_vector(4, rng));
    TrainConfig cfg;
    cfg.learning_rate = 1e-3;
    cfg.epochs = 1;
    cfg.batch_size = 64;
    cfg.l2_reg = 0.0;
    const LogisticModel next = train(init, data, cfg);
    CHECK(training_objective(next, data, 0.0) <=
          training_objective(init, data, 0.0) + 1e-15);
  }
}

TEST_CASE("synthetic data") {
  SynthConfig sc;
  sc.separation = 0.0;
  sc.label_noise = 0.0;
  const Dataset flat = generate_synthetic(sc).data;
  const double rate = flat.label_vector().mean();
  CHECK(rate >= 0.45);
  CHECK(rate <= 0.55);

  sc.separation = 10.0;
  const SyntheticData sharp = generate_synthetic(sc);
  CHECK(sharp.ground_truth.norm() == doctest::Approx(10.0));
  std::size_t correct = 0;
  for (const auto& s : sharp.data)
    correct += ((sharp.ground_truth.dot(s.features) > 0) == (*s.label == 1));
  // Bayes accuracy for logit 10 z, z ~ N(0, 1): E[sigmoid(10 |z|)], by quadrature.
  double bayes = 0.0;
  const double h = 1e-4;
  for (double z = h / 2; z < 12.0; z += h)
    bayes += 2.0 * h * oracle::sigmoid(10.0 * z) * std::exp(-z * z / 2) / std::sqrt(2 * M_PI);
  const double acc = static_cast<double>(correct) / static_cast<double>(sharp.data.size());
  CHECK(bayes > 0.94);
  CHECK(std::abs(acc - bayes) <= 3.0 * std::sqrt(bayes * (1 - bayes) / 2000.0));

  const Dataset again = generate_synthetic(sc).data;
  CHECK(again.feature_matrix() == sharp.data.feature_matrix());
  CHECK(again.label_vector() == sharp.data.label_vector());
}

TEST_CASE("trained model beats chance on held-out data") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    SynthConfig sc;
    sc.seed = s;
    const Dataset data = generate_synthetic(sc).data;
    const LogisticModel m =
        train(LogisticModel(sc.d), data.slice(0, 500), TrainConfig{});
    CHECK(*evaluate(m, data.slice(500, 500)).auc > 0.5);
  }
}

TEST_CASE("auc") {
  std::vector<double> s{0.9, 0.1};
  std::vector<int> y{1, 0};
  CHECK(auc(s, y) == 1.0);
  s = {0.5, 0.5};
  CHECK(auc(s, y) == 0.5);
  s = {0.8, 0.6, 0.4, 0.2};
  y = {1, 0, 1, 0};
  CHECK(auc(s, y) == doctest::Approx(0.75));
  y = {1, 1, 1, 1};
  CHECK_THROWS(auc(s, y));
}

TEST_CASE("auc equals pair counting") {
  Rng rng(5);
  std::uniform_int_distribution<int> level(0, 6);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> s(2 + t % 49);
    std::vector<int> y(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      s[i] = level(rng) / 6.0;
      y[i] = coin(rng);
    }
    y[0] = 1;
    y[1] = 0;
    CHECK(auc(s, y) == doctest::Approx(oracle::auc_pairs(s, y)).epsilon(1e-12));
  }
}

TEST_CASE("evaluate on a single class") {
  Dataset d(1);
  d.add(vec({1.0}), 1);
  d.add(vec({2.0}), 1);
  const Metrics m = evaluate(LogisticModel(1), d);
  CHECK_FALSE(m.auc.has_value());
  CHECK(m.logloss == doctest::Approx(std::log(2.0)));
}

TEST_CASE("dataset") {
  Dataset d(2);
  d.add(vec({1, 2}), 1);
  CHECK_THROWS_AS(d.add(vec({1}), 0), DimensionMismatch);
  CHECK_THROWS(d.add(vec({1, 2}), 2));
  Dataset e(2);
  e.add(vec({3, 4}), 0);
  const Dataset c = Dataset::concat(d, e);
  CHECK(c.size() == 2);
  CHECK(c.label(1) == 0);
  CHECK(Dataset::concat(Dataset{}, e).size() == 1);
}
