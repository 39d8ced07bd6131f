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

// Gradient coverage: a facility-location objective over a fixed bank of
// validation gradients,
//
//   U(S) = sum_x max_{z in S} exp(-lambda |g_x - g_z|^2),   V(S) = sum pctr_z,
//   F(S) = (1 - beta) U(S) + beta V(S),
//
// maintained incrementally through per-validation running maxima.

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "infobid/linalg.hpp"

namespace infobid {

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar gaussian_kernel(const Eigen::MatrixBase<DerivedA>& a,
                                          const Eigen::MatrixBase<DerivedB>& b,
                                          typename DerivedA::Scalar lambda) {
  require_size("kernel", a.size(), b.size());
  return std::exp(-lambda * (a - b).squaredNorm());
}

/// Validation gradients at a common anchor parameter. Immutable.
class GradientBank {
 public:
  explicit GradientBank(RowMatrix gradients, std::string anchor_id = {});

  Eigen::Index size() const { return gradients_.rows(); }
  Eigen::Index dim() const { return gradients_.cols(); }
  const RowMatrix& gradients() const { return gradients_; }
  const std::string& anchor_id() const { return anchor_id_; }

  // exp(-lambda |g_x - g|^2) for every bank row x.
  Vector kernels(const Eigen::Ref<const Vector>& g, double lambda) const;
  // Row i holds kernels(candidates.row(i)).
  RowMatrix kernel_matrix(const RowMatrix& candidates, double lambda) const;

  // sum_x g_x g_x^T
  Matrix second_moment() const;

 private:
  RowMatrix gradients_;
  std::string anchor_id_;
};

using BankPtr = std::shared_ptr<const GradientBank>;

struct CoverageValue {
  double U = 0.0;
  double V = 0.0;
  double F = 0.0;
};

class CoverageState {
 public:
  CoverageState(BankPtr bank, double kernel_lambda, double beta);

  CoverageValue value() const;

  // F(S + z) - F(S); read-only.
  double marginal_gain(const Eigen::Ref<const Vector>& g, double pctr) const;
  void commit(const Eigen::Ref<const Vector>& g, double pctr);

  // Same as above given precomputed bank kernels of the candidate.
  double gain_from_kernels(const Eigen::Ref<const Vector>& kernels,
                           double pctr) const;
  void commit_kernels(const Eigen::Ref<const Vector>& kernels, double pctr);

  const GradientBank& bank() const { return *bank_; }
  const BankPtr& bank_ptr() const { return bank_; }
  double kernel_lambda() const { return kernel_lambda_; }
  double beta() const { return beta_; }
  const Vector& maxima() const { return maxima_; }
  double value_sum() const { return value_sum_; }
  std::size_t selected_count() const { return selected_count_; }

 private:
  BankPtr bank_;
  double kernel_lambda_;
  double beta_;
  Vector maxima_;
  double value_sum_ = 0.0;
  std::size_t selected_count_ = 0;
};

enum class SelectionMode { surrogate, fim_oracle, random };

const char* to_string(SelectionMode mode);
SelectionMode selection_mode_from_string(const std::string& s);

struct GreedyConfig {
  double kernel_lambda = 0.1;
  double beta = 0.0;
  double gamma = 1.0;  // ridge for fim_oracle
  std::uint64_t seed = 0;
};

/// Picks `budget` candidate rows in selection order. Ties go to the lowest
/// index. `pctrs` feeds V(S) in surrogate mode and may be empty when beta = 0.
std::vector<std::size_t> greedy_select(const GradientBank& bank,
                                       const RowMatrix& candidates,
                                       const Vector& pctrs, std::size_t budget,
                                       SelectionMode mode,
                                       const GreedyConfig& cfg);

/// Greedy argmin of G_gamma(S + z) recomputing the full Fisher solve for every
/// candidate. Reference path for the Sherman-Morrison greedy.
std::vector<std::size_t> greedy_fim_naive(const GradientBank& bank,
                                          const RowMatrix& candidates,
                                          std::size_t budget, double gamma);

}  // namespace infobid
