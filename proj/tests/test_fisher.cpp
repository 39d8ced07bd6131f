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

#include "infobid/fisher.hpp"
#include "infobid/random.hpp"
#include "oracles.hpp"

using namespace infobid;

namespace {

RowMatrix random_rows(Eigen::Index n, Eigen::Index d, Rng& rng) {
  RowMatrix m(n, d);
  for (Eigen::Index i = 0; i < n; ++i) m.row(i) = gaussian_vector(d, rng).transpose();
  return m;
}

}  // namespace

TEST_CASE("uncertainty of the empty set") {
  Rng rng(1);
  const RowMatrix g = random_rows(6, 3, rng);
  CHECK(fisher_uncertainty(GradientBank(g), RowMatrix(0, 3), 1.0) ==
        doctest::Approx(g.squaredNorm()));
}

TEST_CASE("two by two by hand") {
  RowMatrix v(1, 2), s(1, 2);
  v << 1, 0;
  s << 1, 0;
  CHECK(fisher_uncertainty(GradientBank(v), s, 1.0) == doctest::Approx(0.5));
}

TEST_CASE("solve path matches explicit inverse and sherman-morrison") {
  Rng rng(2);
  const RowMatrix bank = random_rows(10, 5, rng);
  const RowMatrix sel = random_rows(7, 5, rng);
  const double ref = oracle::fisher_G(bank, sel, 0.7);
  CHECK(fisher_uncertainty(GradientBank(bank), sel, 0.7) ==
        doctest::Approx(ref).epsilon(1e-10));
  FisherInverse inv(5, 0.7);
  for (Eigen::Index i = 0; i < sel.rows(); ++i) inv.add(sel.row(i).transpose());
  CHECK(inv.uncertainty(GradientBank(bank).second_moment()) ==
        doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("reductions match differences of G") {
  Rng rng(3);
  const RowMatrix bank = random_rows(8, 4, rng);
  const RowMatrix sel = random_rows(3, 4, rng);
  const RowMatrix cand = random_rows(5, 4, rng);
  FisherInverse inv(4, 1.0);
  for (Eigen::Index i = 0; i < sel.rows(); ++i) inv.add(sel.row(i).transpose());
  const Vector red = inv.reductions(cand, GradientBank(bank).second_moment());
  const double base = oracle::fisher_G(bank, sel, 1.0);
  for (Eigen::Index c = 0; c < cand.rows(); ++c) {
    Eigen::MatrixXd more(sel.rows() + 1, 4);
    more.topRows(sel.rows()) = sel;
    more.bottomRows(1) = cand.row(c);
    CHECK(red[c] == doctest::Approx(base - oracle::fisher_G(bank, more, 1.0)).epsilon(1e-9));
  }
}

TEST_CASE("adding a gradient never increases G") {
  Rng rng(4);
  const RowMatrix bank = random_rows(8, 4, rng);
  for (int t = 0; t < 50; ++t) {
    const RowMatrix sel = random_rows(1 + t % 6, 4, rng);
    RowMatrix more(sel.rows() + 1, 4);
    more.topRows(sel.rows()) = sel;
    more.bottomRows(1) = gaussian_vector(4, rng).transpose();
    CHECK(fisher_uncertainty(GradientBank(bank), more, 1.0) <=
          fisher_uncertainty(GradientBank(bank), sel, 1.0) + 1e-12);
  }
}

TEST_CASE("bound with exact coverage") {
  Rng rng(5);
  RowMatrix bank = random_rows(6, 3, rng);
  for (Eigen::Index i = 0; i < bank.rows(); ++i)
    bank.row(i) *= (1.0 + i * 0.1) / bank.row(i).norm();
  FisherConfig cfg;
  cfg.tau = 0.01;
  const Theorem1Report r = theorem1_bound(GradientBank(bank), bank, cfg, 0.1);
  REQUIRE_FALSE(r.skipped.has_value());
  CHECK(r.coverage == doctest::Approx(6.0));
  CHECK(r.holds);
}

TEST_CASE("bound holds on random instances") {
  Rng rng(6);
  std::uniform_real_distribution<double> norm(0.5, 2.0);
  std::uniform_int_distribution<int> size(1, 15);
  for (int t = 0; t < 100; ++t) {
    RowMatrix bank = random_rows(20, 5, rng);
    RowMatrix sel = random_rows(size(rng), 5, rng);
    for (Eigen::Index i = 0; i < bank.rows(); ++i) bank.row(i) *= norm(rng) / bank.row(i).norm();
    for (Eigen::Index i = 0; i < sel.rows(); ++i) sel.row(i) *= norm(rng) / sel.row(i).norm();
    const Theorem1Report r = theorem1_bound(GradientBank(bank), sel, FisherConfig{}, 0.1);
    REQUIRE_FALSE(r.skipped.has_value());
    CHECK(r.slack() >= -1e-9);
  }
}

TEST_CASE("bound decreases in coverage") {
  CHECK(theorem1_coefficient(1.0, 2.0, 0.5, 0.25) > 0.0);
  CHECK(theorem1_rhs(10, 1.0, 2.0, 0.5, 0.25, 0.1, 5.0) <
        theorem1_rhs(10, 1.0, 2.0, 0.5, 0.25, 0.1, 4.0));
}

TEST_CASE("zero selected gradient is reported") {
  Rng rng(7);
  const RowMatrix bank = random_rows(4, 2, rng);
  const RowMatrix sel = RowMatrix::Zero(1, 2);
  const Theorem1Report r = theorem1_bound(GradientBank(bank), sel, FisherConfig{}, 0.1);
  CHECK(r.skipped.has_value());
  CHECK_FALSE(r.holds);
  CHECK_THROWS(fisher_uncertainty(GradientBank(bank), sel, 0.0));
}
