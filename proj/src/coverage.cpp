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

#include "infobid/coverage.hpp"

#include <algorithm>
#include <numeric>

#include "infobid/fisher.hpp"
#include "infobid/random.hpp"

namespace infobid {

GradientBank::GradientBank(RowMatrix gradients, std::string anchor_id)
    : gradients_(std::move(gradients)), anchor_id_(std::move(anchor_id)) {
  if (gradients_.rows() < 1)
    throw std::invalid_argument("gradient bank needs at least one gradient");
  if (!gradients_.allFinite())
    throw std::invalid_argument("gradient bank has non-finite entries");
}

Vector GradientBank::kernels(const Eigen::Ref<const Vector>& g,
                             double lambda) const {
  require_size("coverage gradient", dim(), g.size());
  return (-lambda * (gradients_.rowwise() - g.transpose()).rowwise().squaredNorm())
      .array()
      .exp()
      .matrix();
}

RowMatrix GradientBank::kernel_matrix(const RowMatrix& candidates,
                                      double lambda) const {
  require_size("coverage candidates", dim(), candidates.cols());
  RowMatrix k(candidates.rows(), size());
  for (Eigen::Index i = 0; i < candidates.rows(); ++i)
    k.row(i) = kernels(candidates.row(i).transpose(), lambda).transpose();
  return k;
}

Matrix GradientBank::second_moment() const {
  return gradients_.transpose() * gradients_;
}

CoverageState::CoverageState(BankPtr bank, double kernel_lambda, double beta)
    : bank_(std::move(bank)), kernel_lambda_(kernel_lambda), beta_(beta) {
  if (!bank_) throw std::invalid_argument("coverage state needs a bank");
  if (!(kernel_lambda_ > 0)) throw std::invalid_argument("kernel_lambda <= 0");
  if (!(beta_ >= 0 && beta_ <= 1)) throw std::invalid_argument("beta not in [0,1]");
  maxima_ = Vector::Zero(bank_->size());
}

CoverageValue CoverageState::value() const {
  CoverageValue v;
  v.U = maxima_.sum();
  v.V = value_sum_;
  v.F = (1 - beta_) * v.U + beta_ * v.V;
  return v;
}

double CoverageState::gain_from_kernels(const Eigen::Ref<const Vector>& kernels,
                                        double pctr) const {
  require_size("coverage kernels", maxima_.size(), kernels.size());
  const double coverage_gain = (kernels - maxima_).cwiseMax(0.0).sum();
  return (1 - beta_) * coverage_gain + beta_ * pctr;
}

void CoverageState::commit_kernels(const Eigen::Ref<const Vector>& kernels,
                                   double pctr) {
  require_size("coverage kernels", maxima_.size(), kernels.size());
  maxima_ = maxima_.cwiseMax(kernels);
  value_sum_ += pctr;
  ++selected_count_;
}

double CoverageState::marginal_gain(const Eigen::Ref<const Vector>& g,
                                    double pctr) const {
  return gain_from_kernels(bank_->kernels(g, kernel_lambda_), pctr);
}

void CoverageState::commit(const Eigen::Ref<const Vector>& g, double pctr) {
  commit_kernels(bank_->kernels(g, kernel_lambda_), pctr);
}

const char* to_string(SelectionMode mode) {
  switch (mode) {
    case SelectionMode::surrogate: return "surrogate";
    case SelectionMode::fim_oracle: return "fim_oracle";
    case SelectionMode::random: return "random";
  }
  return "?";
}

SelectionMode selection_mode_from_string(const std::string& s) {
  if (s == "surrogate") return SelectionMode::surrogate;
  if (s == "fim_oracle") return SelectionMode::fim_oracle;
  if (s == "random") return SelectionMode::random;
  throw std::invalid_argument("unknown selection mode '" + s + "'");
}

namespace {

// Index of the largest score among unselected rows; first index wins ties.
Eigen::Index best_unselected(const Vector& scores,
                             const std::vector<bool>& taken) {
  Eigen::Index best = -1;
  for (Eigen::Index i = 0; i < scores.size(); ++i) {
    if (taken[static_cast<std::size_t>(i)]) continue;
    if (best < 0 || scores[i] > scores[best]) best = i;
  }
  return best;
}

std::vector<std::size_t> select_surrogate(const GradientBank& bank,
                                          const RowMatrix& candidates,
                                          const Vector& pctrs,
                                          std::size_t budget,
                                          const GreedyConfig& cfg) {
  auto shared = std::make_shared<GradientBank>(bank);
  CoverageState state(shared, cfg.kernel_lambda, cfg.beta);
  const RowMatrix kernels = bank.kernel_matrix(candidates, cfg.kernel_lambda);
  const auto n = static_cast<std::size_t>(candidates.rows());
  std::vector<bool> taken(n, false);
  std::vector<std::size_t> picked;
  Vector gains(candidates.rows());
  for (std::size_t step = 0; step < budget; ++step) {
    for (Eigen::Index i = 0; i < candidates.rows(); ++i) {
      const double p = pctrs.size() ? pctrs[i] : 0.0;
      gains[i] = state.gain_from_kernels(kernels.row(i).transpose(), p);
    }
    const Eigen::Index best = best_unselected(gains, taken);
    taken[static_cast<std::size_t>(best)] = true;
    picked.push_back(static_cast<std::size_t>(best));
    state.commit_kernels(kernels.row(best).transpose(),
                         pctrs.size() ? pctrs[best] : 0.0);
  }
  return picked;
}

std::vector<std::size_t> select_fim(const GradientBank& bank,
                                    const RowMatrix& candidates,
                                    std::size_t budget, double gamma) {
  const Matrix second_moment = bank.second_moment();
  FisherInverse fisher(bank.dim(), gamma);
  std::vector<bool> taken(static_cast<std::size_t>(candidates.rows()), false);
  std::vector<std::size_t> picked;
  for (std::size_t step = 0; step < budget; ++step) {
    const Vector reduction = fisher.reductions(candidates, second_moment);
    const Eigen::Index best = best_unselected(reduction, taken);
    taken[static_cast<std::size_t>(best)] = true;
    picked.push_back(static_cast<std::size_t>(best));
    fisher.add(candidates.row(best).transpose());
  }
  return picked;
}

std::vector<std::size_t> select_random(std::size_t n, std::size_t budget,
                                       std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Rng rng = make_stream(seed, 0x72616e64);
  // Partial Fisher-Yates: the first `budget` slots are a uniform draw.
  for (std::size_t i = 0; i < budget; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(budget);
  return idx;
}

}  // namespace

std::vector<std::size_t> greedy_select(const GradientBank& bank,
                                       const RowMatrix& candidates,
                                       const Vector& pctrs, std::size_t budget,
                                       SelectionMode mode,
                                       const GreedyConfig& cfg) {
  if (candidates.rows() == 0)
    throw std::invalid_argument("greedy_select: no candidates");
  require_size("greedy_select candidates", bank.dim(), candidates.cols());
  if (pctrs.size() != 0)
    require_size("greedy_select pctrs", candidates.rows(), pctrs.size());
  if (budget > static_cast<std::size_t>(candidates.rows()))
    throw std::invalid_argument("greedy_select: budget exceeds candidates");
  if (mode == SelectionMode::surrogate && cfg.beta > 0 && pctrs.size() == 0)
    throw std::invalid_argument("greedy_select: beta > 0 needs pctrs");

  switch (mode) {
    case SelectionMode::surrogate:
      return select_surrogate(bank, candidates, pctrs, budget, cfg);
    case SelectionMode::fim_oracle:
      return select_fim(bank, candidates, budget, cfg.gamma);
    case SelectionMode::random:
      return select_random(static_cast<std::size_t>(candidates.rows()), budget,
                           cfg.seed);
  }
  return {};
}

std::vector<std::size_t> greedy_fim_naive(const GradientBank& bank,
                                          const RowMatrix& candidates,
                                          std::size_t budget, double gamma) {
  if (candidates.rows() == 0)
    throw std::invalid_argument("greedy_fim_naive: no candidates");
  if (budget > static_cast<std::size_t>(candidates.rows()))
    throw std::invalid_argument("greedy_fim_naive: budget exceeds candidates");
  std::vector<bool> taken(static_cast<std::size_t>(candidates.rows()), false);
  std::vector<std::size_t> picked;
  RowMatrix chosen(0, candidates.cols());
  for (std::size_t step = 0; step < budget; ++step) {
    Vector neg_uncertainty(candidates.rows());
    RowMatrix trial(chosen.rows() + 1, candidates.cols());
    trial.topRows(chosen.rows()) = chosen;
    for (Eigen::Index i = 0; i < candidates.rows(); ++i) {
      if (taken[static_cast<std::size_t>(i)]) continue;
      trial.bottomRows(1) = candidates.row(i);
      neg_uncertainty[i] = -fisher_uncertainty(bank, trial, gamma);
    }
    const Eigen::Index best = best_unselected(neg_uncertainty, taken);
    taken[static_cast<std::size_t>(best)] = true;
    picked.push_back(static_cast<std::size_t>(best));
    chosen.conservativeResize(chosen.rows() + 1, Eigen::NoChange);
    chosen.bottomRows(1) = candidates.row(best);
  }
  return picked;
}

}  // namespace infobid
