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
#include <memory>
#include <vector>

#include "infobid/gradest.hpp"
#include "oracles.hpp"

using namespace infobid;

namespace {

// Weights along e1 giving pctr p for x = (1, 1).
LogisticModel model_with_pctr(double p) {
  Vector w = Vector::Zero(2);
  w[0] = std::log(p / (1 - p));
  return LogisticModel(w);
}

BankPtr unit_bank() {
  RowMatrix g(2, 2);
  g << 1, 0, 0, 1;
  return std::make_shared<GradientBank>(g);
}

}  // namespace

TEST_CASE("entropy") {
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.9) == doctest::Approx(0.4690).epsilon(1e-4));
  CHECK(binary_entropy(0.9) == doctest::Approx(oracle::binary_entropy(0.9)).epsilon(1e-14));
  double prev = 2.0;
  for (double d = 0.0; d < 0.5; d += 0.01) {
    const double h = binary_entropy(0.5 + d);
    CHECK(h < prev);
    CHECK(binary_entropy(0.5 - d) == doctest::Approx(h));
    prev = h;
  }
}

TEST_CASE("hypothetical gradients") {
  Vector x(2);
  x << 1, 1;
  const auto half = hypothetical_gradients(model_with_pctr(0.5), x);
  CHECK(half.g0.norm() == doctest::Approx(0.5 * x.norm()));
  CHECK(half.g1.norm() == doctest::Approx(0.5 * x.norm()));
  const auto zero = hypothetical_gradients(model_with_pctr(0.7), Vector::Zero(2));
  CHECK(zero.g0.isZero());
  CHECK(zero.g1.isZero());
  const auto h = hypothetical_gradients(model_with_pctr(0.8), x);
  CHECK(h.g0[0] == doctest::Approx(0.8));
  CHECK(h.g0[1] == doctest::Approx(0.8));
  CHECK(h.g1[0] == doctest::Approx(-0.2));
  CHECK(h.g1[1] == doctest::Approx(-0.2));
}

TEST_CASE("norm select") {
  Vector x(2);
  x << 1, 1;
  auto h = hypothetical_gradients(model_with_pctr(0.8), x);
  CHECK(norm_select(h.g0, h.g1).second == Provenance::norm_pick_g1);
  h = hypothetical_gradients(model_with_pctr(0.2), x);
  CHECK(norm_select(h.g0, h.g1).second == Provenance::norm_pick_g0);
  const Vector g = Vector::Ones(2);
  CHECK(norm_select(g, -g).second == Provenance::norm_pick_g0);
}

TEST_CASE("norm pick equals the predicted label") {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const LogisticModel m(gaussian_vector(5, rng));
    const Vector x = gaussian_vector(5, rng);
    const double p = m.predict(x);
    if (p == 0.5) continue;
    const int y = p > 0.5 ? 1 : 0;
    const auto h = hypothetical_gradients(m, x);
    const Vector picked = norm_select(h.g0, h.g1).first;
    CHECK(picked == m.loss_gradient(x, y));
  }
}

TEST_CASE("zo gradient") {
  Rng rng(1);
  Vector theta(1);
  theta << 0.3;
  Rng replay = rng;
  const Vector lin = zo_gradient([](const Vector& t) { return 3 * t[0]; }, theta, 0.1, 4, rng);
  double u2 = 0.0;
  for (int i = 0; i < 4; ++i) u2 += std::pow(gaussian_vector(1, replay)[0], 2) / 4;
  CHECK(lin[0] == doctest::Approx(3.0 * u2).epsilon(1e-12));
  // A unit direction recovers the slope exactly.
  Rng one(0);
  const Vector unit = zo_gradient(
      [](const Vector& t) { return 3 * t[0]; }, theta, 0.1, 1, one);
  Rng one_replay(0);
  const double u = gaussian_vector(1, one_replay)[0];
  CHECK(unit[0] / (u * u) == doctest::Approx(3.0));
  const Vector flat = zo_gradient([](const Vector&) { return 7.0; }, Vector::Ones(5), 0.1, 4, rng);
  CHECK(flat.isZero());
  CHECK_THROWS_AS(zo_gradient([](const Vector&) { return NAN; }, theta, 0.1, 1, rng),
                  std::domain_error);
  CHECK_THROWS(zo_gradient([](const Vector&) { return 0.0; }, theta, 0.0, 1, rng));
  CHECK_THROWS(zo_gradient([](const Vector&) { return 0.0; }, theta, 0.1, 0, rng));
}

TEST_CASE("zo gradient on logistic loss") {
  Rng rng(2);
  double cos_sum = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Vector theta = gaussian_vector(20, rng) * 0.3;
    const Vector x = gaussian_vector(20, rng);
    const int y = t % 2;
    const Vector truth = LogisticModel(theta).loss_gradient(x, y);
    const Vector est = zo_gradient(
        [&](const Vector& th) { return oracle::logistic_loss(th, x, y); }, theta, 1e-3, 500, rng);
    cos_sum += cosine(est, truth);
  }
  CHECK(cos_sum / 100 > 0.9);
}

TEST_CASE("zo hypothetical gradients share directions") {
  const LogisticModel m(Vector::Constant(4, 0.2));
  const Vector x = Vector::LinSpaced(4, -1, 1);
  Rng a = make_stream(5, 1), b = make_stream(5, 1);
  const auto both = zo_hypothetical_gradients(m, x, 1e-3, 8, a);
  const Vector g0 = zo_gradient(
      [&](const Vector& th) { return log_loss(LogisticModel(th).predict(x), 0); },
      m.weights(), 1e-3, 8, b);
  CHECK((both.g0 - g0).norm() < 1e-12);
}

TEST_CASE("pctr weighted") {
  Vector g0(2), g1(2);
  g0 << 1, 2;
  g1 << -3, 4;
  CHECK(pctr_weighted(g0, g1, 0.0) == g0);
  CHECK(pctr_weighted(g0, g1, 1.0) == g1);
  Vector x(2);
  x << 0.7, -1.3;
  const LogisticModel m(Vector::Constant(2, 0.4));
  const auto h = hypothetical_gradients(m, x);
  CHECK(pctr_weighted(h.g0, h.g1, m.predict(x)).norm() < 1e-15);
}

TEST_CASE("marginal utility gate") {
  Vector x(2);
  x << 1, 1;
  CoverageState state(unit_bank(), 0.1, 0.0);
  GradEstConfig cfg;
  cfg.entropy_threshold = 0.9;
  cfg.exploration_utility = 2.5;
  const auto explore = estimate_marginal_utility(model_with_pctr(0.5), x, state, cfg);
  CHECK(explore.provenance == Provenance::exploration);
  CHECK_FALSE(explore.gradient.has_value());
  CHECK(explore.utility == 2.5);

  cfg.entropy_threshold = 0.3;
  const LogisticModel sure = model_with_pctr(0.99);
  const auto est = estimate_marginal_utility(sure, x, state, cfg);
  CHECK(est.entropy == doctest::Approx(0.0808).epsilon(1e-3));
  CHECK(est.provenance == Provenance::norm_pick_g1);
  const Vector g1 = sure.loss_gradient(x, 1);
  REQUIRE(est.gradient.has_value());
  CHECK(*est.gradient == g1);
  double expect = 0.0;
  RowMatrix bank(2, 2);
  bank << 1, 0, 0, 1;
  expect = oracle::coverage_F(bank, g1.transpose(), {}, 0.1, 0.0);
  CHECK(est.utility == doctest::Approx(expect).epsilon(1e-13));

  CoverageState value_only(unit_bank(), 0.1, 1.0);
  const auto v = estimate_marginal_utility(sure, x, value_only, cfg);
  CHECK(v.utility == doctest::Approx(sure.predict(x)));
}

TEST_CASE("zeroth-order mode is keyed by the stream") {
  Vector x(2);
  x << 1, 1;
  CoverageState state(unit_bank(), 0.1, 0.0);
  GradEstConfig cfg;
  cfg.mode = GradMode::zeroth_order;
  cfg.seed = 4;
  const LogisticModel m = model_with_pctr(0.99);
  const auto a = estimate_marginal_utility(m, x, state, cfg, 7);
  const auto b = estimate_marginal_utility(m, x, state, cfg, 7);
  const auto c = estimate_marginal_utility(m, x, state, cfg, 8);
  CHECK(*a.gradient == *b.gradient);
  CHECK(*a.gradient != *c.gradient);
}

TEST_CASE("estimator accuracy") {
  Rng rng(6);
  std::vector<Vector> truth, neg;
  for (int i = 0; i < 20; ++i) {
    truth.push_back(gaussian_vector(5, rng));
    neg.push_back(-truth.back());
  }
  auto same = estimator_accuracy(truth, truth);
  CHECK(same.mean_cosine == doctest::Approx(1.0));
  CHECK(same.mean_l2 == 0.0);
  auto opp = estimator_accuracy(neg, truth);
  CHECK(opp.mean_cosine == doctest::Approx(-1.0));
  double mean_norm = 0.0;
  for (const auto& t : truth) mean_norm += t.norm() / 20.0;
  CHECK(opp.mean_l2 == doctest::Approx(2 * mean_norm));

  truth.push_back(Vector::Zero(5));
  neg.push_back(Vector::Ones(5));
  opp = estimator_accuracy(neg, truth);
  CHECK(opp.excluded_zero_truth == 1);
  CHECK(opp.cosine_count == 20);

  const std::size_t N = 2000;
  std::vector<Vector> rnd, tr;
  for (std::size_t i = 0; i < N; ++i) {
    rnd.push_back(sphere_vector(20, 1.0, rng));
    tr.push_back(gaussian_vector(20, rng));
  }
  CHECK(std::abs(estimator_accuracy(rnd, tr).mean_cosine) <= 3.0 / std::sqrt(20.0 * N));
}

TEST_CASE("config validation") {
  GradEstConfig cfg;
  cfg.entropy_threshold = 1.5;
  CHECK_THROWS(cfg.validate());
  cfg = GradEstConfig{};
  cfg.zo_mu = 0.0;
  CHECK_THROWS(cfg.validate());
  CHECK(grad_mode_from_string("zeroth_order") == GradMode::zeroth_order);
  CHECK_THROWS(grad_mode_from_string("nope"));
}
