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

// Regularized empirical Fisher uncertainty
//
//   I_gamma(S) = sum_{z in S} g_z g_z^T + gamma I,
//   G_gamma(S) = sum_x g_x^T I_gamma(S)^{-1} g_x,
//
// and the coverage upper bound on G_gamma in terms of U(S).

#pragma once

#include <optional>
#include <string>

#include "infobid/coverage.hpp"

namespace infobid {

/// G_gamma via a Cholesky solve against every validation gradient.
double fisher_uncertainty(const GradientBank& bank, const RowMatrix& selected,
                          double gamma);

/// I_gamma(S)^{-1} maintained by Sherman-Morrison rank-one updates.
class FisherInverse {
 public:
  FisherInverse(Eigen::Index dim, double gamma);

  void add(const Eigen::Ref<const Vector>& g);
  const Matrix& inverse() const { return inverse_; }

  // sum_x g_x^T I^{-1} g_x = tr(I^{-1} J) for J = bank second moment.
  double uncertainty(const Matrix& second_moment) const;

  // G(S) - G(S + z) for every candidate row, without mutating.
  Vector reductions(const RowMatrix& candidates,
                    const Matrix& second_moment) const;

 private:
  Matrix inverse_;
};

struct FisherConfig {
  double gamma = 1.0;
  std::optional<double> tau;           // default m^2
  std::optional<double> grad_bound_L;  // default: max observed norm
  std::optional<double> grad_floor_m;  // default: min selected norm
};

struct Theorem1Report {
  double lhs = 0.0;  // G_gamma(S)
  double rhs = 0.0;  // coverage bound
  double coverage = 0.0;
  double L = 0.0;
  double m = 0.0;
  double tau = 0.0;
  bool holds = false;
  std::optional<std::string> skipped;  // assumption violation

  double slack() const { return rhs - lhs; }
};

/// Coefficient multiplying the normalized coverage term in the bound; it is
/// positive, so the bound decreases in U.
double theorem1_coefficient(double gamma, double L, double m, double tau);

double theorem1_rhs(std::size_t k, double gamma, double L, double m, double tau,
                    double kernel_lambda, double coverage);

Theorem1Report theorem1_bound(const GradientBank& bank,
                              const RowMatrix& selected,
                              const FisherConfig& cfg, double kernel_lambda);

/// U(S) evaluated directly for an explicit set of selected gradients.
double coverage_of_set(const GradientBank& bank, const RowMatrix& selected,
                       double kernel_lambda);

}  // namespace infobid
