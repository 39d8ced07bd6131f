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

// Independent reference implementations. Nothing here calls into the library
// code it is used to check.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

inline double logistic_loss(const Vec& theta, const Vec& x, int y) {
  const double p = sigmoid(theta.dot(x));
  return y == 1 ? -std::log(p) : -std::log(1.0 - p);
}

template <typename F>
Vec central_difference(const F& f, const Vec& theta, double h = 1e-6) {
  Vec g(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    Vec a = theta, b = theta;
    a[i] += h;
    b[i] -= h;
    g[i] = (f(a) - f(b)) / (2.0 * h);
  }
  return g;
}

// F(S) straight from the definition; rows of `bank` and `sel` are gradients.
inline double coverage_F(const Mat& bank, const Mat& sel,
                         const std::vector<double>& pctr, double lambda,
                         double beta) {
  double U = 0.0;
  for (Eigen::Index x = 0; x < bank.rows(); ++x) {
    double best = 0.0;
    for (Eigen::Index z = 0; z < sel.rows(); ++z) {
      double d2 = 0.0;
      for (Eigen::Index j = 0; j < bank.cols(); ++j) {
        const double t = bank(x, j) - sel(z, j);
        d2 += t * t;
      }
      best = std::max(best, std::exp(-lambda * d2));
    }
    U += best;
  }
  double V = 0.0;
  for (double p : pctr) V += p;
  return (1.0 - beta) * U + beta * V;
}

inline Mat rows(const Mat& m, const std::vector<int>& idx) {
  Mat out(static_cast<Eigen::Index>(idx.size()), m.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) out.row(i) = m.row(idx[i]);
  return out;
}

// G_gamma(S) via an explicit inverse.
inline double fisher_G(const Mat& bank, const Mat& sel, double gamma) {
  const Eigen::Index d = bank.cols();
  Mat I = gamma * Mat::Identity(d, d);
  for (Eigen::Index z = 0; z < sel.rows(); ++z)
    I += sel.row(z).transpose() * sel.row(z);
  const Mat inv = I.inverse();
  double G = 0.0;
  for (Eigen::Index x = 0; x < bank.rows(); ++x)
    G += bank.row(x) * inv * bank.row(x).transpose();
  return G;
}

// Fraction of concordant positive/negative pairs, ties count 1/2.
inline double auc_pairs(const std::vector<double>& s, const std::vector<int>& y) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (y[i] != 1) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (y[j] != 0) continue;
      den += 1.0;
      if (s[i] > s[j]) num += 1.0;
      else if (s[i] == s[j]) num += 0.5;
    }
  }
  return num / den;
}

// Best integral knapsack value by enumeration (n <= 20).
inline double knapsack_exhaustive(const std::vector<double>& v,
                                  const std::vector<double>& w, double cap) {
  const std::size_t n = v.size();
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double vv = 0.0, ww = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        vv += std::max(v[i], 0.0);
        ww += w[i];
      }
    if (ww <= cap) best = std::max(best, vv);
  }
  return best;
}

// Fractional knapsack by repeatedly taking the best remaining ratio.
inline double knapsack_fractional(std::vector<double> v, std::vector<double> w,
                                  double cap) {
  double total = 0.0;
  std::vector<bool> used(v.size(), false);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] > 0 && w[i] == 0) { total += v[i]; used[i] = true; }
  while (cap > 0) {
    int best = -1;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (used[i] || v[i] <= 0) continue;
      if (best < 0 || v[i] / w[i] > v[best] / w[best]) best = static_cast<int>(i);
    }
    if (best < 0) break;
    used[best] = true;
    const double take = std::min(1.0, cap / w[best]);
    total += take * v[best];
    cap -= take * w[best];
  }
  return total;
}

inline double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -(p * std::log(p) + (1 - p) * std::log(1 - p)) / std::log(2.0);
}

// Average-rank Spearman via Pearson on ranks.
inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  auto rank = [](const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      double less = 0, eq = 0;
      for (double w : v) {
        if (w < v[i]) less += 1;
        else if (w == v[i]) eq += 1;
      }
      r[i] = less + (eq + 1) / 2.0;
    }
    return r;
  };
  const auto ra = rank(a), rb = rank(b);
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) { ma += ra[i] / n; mb += rb[i] / n; }
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace oracle
