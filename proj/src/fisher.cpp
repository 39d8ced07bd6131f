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

#include "infobid/fisher.hpp"

#include <algorithm>
#include <cmath>

namespace infobid {

double fisher_uncertainty(const GradientBank& bank, const RowMatrix& selected,
                          double gamma) {
  if (!(gamma > 0)) throw std::invalid_argument("fisher: gamma must be > 0");
  if (selected.rows() > 0)
    require_size("fisher selected", bank.dim(), selected.cols());
  Matrix info = gamma * Matrix::Identity(bank.dim(), bank.dim());
  if (selected.rows() > 0) info.noalias() += selected.transpose() * selected;
  const Eigen::LLT<Matrix> llt(info);
  const Matrix rhs = bank.gradients().transpose();  // d x k
  const Matrix solved = llt.solve(rhs);
  return rhs.cwiseProduct(solved).sum();
}

FisherInverse::FisherInverse(Eigen::Index dim, double gamma) {
  if (!(gamma > 0)) throw std::invalid_argument("fisher: gamma must be > 0");
  inverse_ = Matrix::Identity(dim, dim) / gamma;
}

void FisherInverse::add(const Eigen::Ref<const Vector>& g) {
  require_size("fisher add", inverse_.rows(), g.size());
  const Vector pg = inverse_ * g;
  inverse_.noalias() -= (pg * pg.transpose()) / (1.0 + g.dot(pg));
}

double FisherInverse::uncertainty(const Matrix& second_moment) const {
  return inverse_.cwiseProduct(second_moment).sum();
}

Vector FisherInverse::reductions(const RowMatrix& candidates,
                                 const Matrix& second_moment) const {
  require_size("fisher candidates", inverse_.rows(), candidates.cols());
  // With P = I^{-1}: G(S) - G(S+z) = z^T P J P z / (1 + z^T P z).
  const RowMatrix pz = candidates * inverse_;
  const Vector quad = candidates.cwiseProduct(pz).rowwise().sum();
  const Vector num = (pz * second_moment).cwiseProduct(pz).rowwise().sum();
  return num.cwiseQuotient((Vector::Ones(quad.size()) + quad));
}

double coverage_of_set(const GradientBank& bank, const RowMatrix& selected,
                       double kernel_lambda) {
  if (selected.rows() == 0) return 0.0;
  Vector best = Vector::Zero(bank.size());
  for (Eigen::Index i = 0; i < selected.rows(); ++i)
    best = best.cwiseMax(bank.kernels(selected.row(i).transpose(), kernel_lambda));
  return best.sum();
}

double theorem1_coefficient(double gamma, double L, double m, double tau) {
  const double gap = 2 * m * m - tau;
  return gap * gap / (4 * gamma * gamma * (1 + L * L / gamma));
}

double theorem1_rhs(std::size_t k, double gamma, double L, double m, double tau,
                    double kernel_lambda, double coverage) {
  const double kd = static_cast<double>(k);
  const double floor = std::exp(-kernel_lambda * tau);
  return kd * L * L / gamma - theorem1_coefficient(gamma, L, m, tau) *
                                  (coverage - kd * floor) / (1 - floor);
}

Theorem1Report theorem1_bound(const GradientBank& bank,
                              const RowMatrix& selected,
                              const FisherConfig& cfg, double kernel_lambda) {
  if (!(cfg.gamma > 0)) throw std::invalid_argument("coverage bound: gamma <= 0");
  if (!(kernel_lambda > 0))
    throw std::invalid_argument("coverage bound: kernel_lambda <= 0");
  if (selected.rows() > 0)
    require_size("coverage bound selected", bank.dim(), selected.cols());

  Theorem1Report r;
  double observed_L = bank.gradients().rowwise().norm().maxCoeff();
  if (selected.rows() > 0)
    observed_L = std::max(observed_L, selected.rowwise().norm().maxCoeff());
  r.L = cfg.grad_bound_L.value_or(observed_L);
  if (r.L < observed_L) {
    r.skipped = "grad_bound_L is below the largest observed gradient norm";
    return r;
  }

  if (selected.rows() > 0) {
    const double observed_m = selected.rowwise().norm().minCoeff();
    r.m = cfg.grad_floor_m.value_or(observed_m);
    if (r.m > observed_m) {
      r.skipped = "grad_floor_m exceeds the smallest selected gradient norm";
      return r;
    }
  } else if (cfg.grad_floor_m) {
    r.m = *cfg.grad_floor_m;
  } else {
    r.skipped = "empty selection and no grad_floor_m given";
    return r;
  }
  if (!(r.m > 0)) {
    r.skipped = "a selected gradient has zero norm (m = 0)";
    return r;
  }

  r.tau = cfg.tau.value_or(r.m * r.m);
  if (!(r.tau > 0 && r.tau <= 2 * r.m * r.m)) {
    r.skipped = "tau outside (0, 2 m^2]";
    return r;
  }

  r.coverage = coverage_of_set(bank, selected, kernel_lambda);
  r.lhs = fisher_uncertainty(bank, selected, cfg.gamma);
  r.rhs = theorem1_rhs(static_cast<std::size_t>(bank.size()), cfg.gamma, r.L,
                       r.m, r.tau, kernel_lambda, r.coverage);
  r.holds = r.lhs <= r.rhs + 1e-9;
  return r;
}

}  // namespace infobid
