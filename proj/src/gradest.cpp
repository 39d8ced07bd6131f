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

#include "infobid/gradest.hpp"

#include <cmath>
#include <stdexcept>

namespace infobid {

const char* to_string(GradMode m) {
  return m == GradMode::analytical ? "analytical" : "zeroth_order";
}

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::exploration: return "exploration";
    case Provenance::norm_pick_g0: return "norm_pick_g0";
    case Provenance::norm_pick_g1: return "norm_pick_g1";
  }
  return "?";
}

GradMode grad_mode_from_string(const std::string& s) {
  if (s == "analytical") return GradMode::analytical;
  if (s == "zeroth_order") return GradMode::zeroth_order;
  throw std::invalid_argument("unknown gradient mode '" + s + "'");
}

void GradEstConfig::validate() const {
  if (!(entropy_threshold >= 0 && entropy_threshold <= 1))
    throw std::invalid_argument("entropy_threshold must lie in [0,1]");
  if (!(exploration_utility >= 0))
    throw std::invalid_argument("exploration_utility must be >= 0");
  if (!(zo_mu > 0)) throw std::invalid_argument("zo_mu must be > 0");
  if (zo_dirs < 1) throw std::invalid_argument("zo_dirs must be >= 1");
}

HypotheticalGradients hypothetical_gradients(const LogisticModel& model,
                                             const Eigen::Ref<const Vector>& x) {
  const double p = model.predict(x);
  return {logistic_gradient(p, 0, x), logistic_gradient(p, 1, x)};
}

std::pair<Vector, Provenance> norm_select(const Vector& g0, const Vector& g1) {
  if (g0.squaredNorm() <= g1.squaredNorm())
    return {g0, Provenance::norm_pick_g0};
  return {g1, Provenance::norm_pick_g1};
}

Vector zo_gradient(const LossFn& loss, const Vector& theta, double mu,
                   int n_dirs, Rng& rng) {
  if (!(mu > 0)) throw std::invalid_argument("zo_gradient: mu must be > 0");
  if (n_dirs < 1) throw std::invalid_argument("zo_gradient: n_dirs < 1");
  Vector estimate = Vector::Zero(theta.size());
  for (int i = 0; i < n_dirs; ++i) {
    const Vector u = gaussian_vector(theta.size(), rng);
    const double up = loss(theta + mu * u);
    const double down = loss(theta - mu * u);
    if (!std::isfinite(up) || !std::isfinite(down))
      throw std::domain_error("zo_gradient: non-finite loss evaluation");
    estimate += ((up - down) / (2 * mu)) * u;
  }
  return estimate / static_cast<double>(n_dirs);
}

HypotheticalGradients zo_hypothetical_gradients(const LogisticModel& model,
                                                const Eigen::Ref<const Vector>& x,
                                                double mu, int n_dirs,
                                                Rng& rng) {
  if (!(mu > 0)) throw std::invalid_argument("zo: mu must be > 0");
  if (n_dirs < 1) throw std::invalid_argument("zo: n_dirs < 1");
  require_size("zo", model.dim(), x.size());
  const Vector& theta = model.weights();
  HypotheticalGradients out{Vector::Zero(theta.size()),
                            Vector::Zero(theta.size())};
  for (int i = 0; i < n_dirs; ++i) {
    const Vector u = gaussian_vector(theta.size(), rng);
    const double p_up = LogisticModel(theta + mu * u).predict(x);
    const double p_down = LogisticModel(theta - mu * u).predict(x);
    out.g0 += ((log_loss(p_up, 0) - log_loss(p_down, 0)) / (2 * mu)) * u;
    out.g1 += ((log_loss(p_up, 1) - log_loss(p_down, 1)) / (2 * mu)) * u;
  }
  out.g0 /= static_cast<double>(n_dirs);
  out.g1 /= static_cast<double>(n_dirs);
  return out;
}

Vector pctr_weighted(const Vector& g0, const Vector& g1, double p) {
  require_size("pctr_weighted", g0.size(), g1.size());
  return p * g1 + (1 - p) * g0;
}

GradEstimate estimate_marginal_utility(const LogisticModel& model,
                                       const Eigen::Ref<const Vector>& x,
                                       const CoverageState& state,
                                       const GradEstConfig& cfg,
                                       std::uint64_t stream_key) {
  cfg.validate();
  GradEstimate est;
  est.pctr = model.predict(x);
  est.entropy = binary_entropy(est.pctr);
  if (est.entropy > cfg.entropy_threshold) {
    est.utility = cfg.exploration_utility;
    est.provenance = Provenance::exploration;
    return est;
  }

  HypotheticalGradients hyp;
  if (cfg.mode == GradMode::analytical) {
    hyp = hypothetical_gradients(model, x);
  } else {
    Rng rng = make_stream(cfg.seed, stream_key);
    hyp = zo_hypothetical_gradients(model, x, cfg.zo_mu, cfg.zo_dirs, rng);
  }
  auto [g, prov] = norm_select(hyp.g0, hyp.g1);
  est.utility = state.marginal_gain(g, est.pctr);
  est.provenance = prov;
  est.gradient = std::move(g);
  return est;
}

double cosine_or_zero(const Vector& estimate, const Vector& truth) {
  require_size("cosine", truth.size(), estimate.size());
  const double nt2 = truth.squaredNorm();
  const double ne2 = estimate.squaredNorm();
  if (nt2 == 0.0 || ne2 <= 1e-18 * nt2) return 0.0;
  return estimate.dot(truth) / std::sqrt(ne2 * nt2);
}

EstimatorAccuracy estimator_accuracy(std::span<const Vector> estimates,
                                     std::span<const Vector> truths) {
  if (estimates.size() != truths.size())
    throw DimensionMismatch("estimator_accuracy",
                            static_cast<Eigen::Index>(truths.size()),
                            static_cast<Eigen::Index>(estimates.size()));
  EstimatorAccuracy acc;
  if (estimates.empty()) return acc;
  double cos_sum = 0.0;
  double l2_sum = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    require_size("estimator_accuracy", truths[i].size(), estimates[i].size());
    l2_sum += (estimates[i] - truths[i]).norm();
    if (truths[i].norm() == 0.0) {
      ++acc.excluded_zero_truth;
      continue;
    }
    cos_sum += cosine_or_zero(estimates[i], truths[i]);
    ++acc.cosine_count;
  }
  acc.mean_l2 = l2_sum / static_cast<double>(estimates.size());
  if (acc.cosine_count)
    acc.mean_cosine = cos_sum / static_cast<double>(acc.cosine_count);
  return acc;
}

}  // namespace infobid
