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

#include "infobid/auction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "infobid/csv.hpp"
#include "infobid/random.hpp"

namespace infobid {

std::vector<Impression> impression_stream(const Dataset& data,
                                          std::span<const double> market_prices) {
  if (market_prices.size() != data.size())
    throw DimensionMismatch("impression_stream",
                            static_cast<Eigen::Index>(data.size()),
                            static_cast<Eigen::Index>(market_prices.size()));
  std::vector<Impression> out;
  out.reserve(data.size());
  for (std::size_t t = 0; t < data.size(); ++t) {
    if (!(market_prices[t] >= 0))
      throw std::invalid_argument("market price must be >= 0");
    out.push_back({t, data[t].features, data.label(t), market_prices[t]});
  }
  return out;
}

const char* to_string(Mechanism m) {
  switch (m) {
    case Mechanism::first_price_cpm: return "first_price_cpm";
    case Mechanism::second_price: return "second_price";
  }
  return "?";
}

Mechanism mechanism_from_string(const std::string& s) {
  if (s == "first_price_cpm") return Mechanism::first_price_cpm;
  if (s == "second_price") return Mechanism::second_price;
  throw std::invalid_argument("unknown mechanism: " + s);
}

std::vector<double> competitor_uniform(double lo, double hi, std::size_t n,
                                       std::uint64_t seed) {
  if (!(hi > lo && lo >= 0))
    throw std::invalid_argument("competitor_uniform needs hi > lo >= 0");
  Rng rng = make_stream(seed, 0x6d61726b6574ULL);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> out(n);
  for (auto& p : out) p = dist(rng);
  return out;
}

Resolution resolve(Mechanism mechanism, double bid, double pctr,
                   double market_price, bool tie_wins) {
  if (!(bid >= 0)) throw std::invalid_argument("bid must be >= 0");
  if (bid == 0.0) return {};
  const double score = pctr * bid;
  const bool won = tie_wins ? score >= market_price : score > market_price;
  if (!won) return {};
  return {true,
          mechanism == Mechanism::first_price_cpm ? score : market_price};
}

Strategy Strategy::proposed(double beta) {
  if (!(beta >= 0 && beta <= 1))
    throw std::invalid_argument("beta must lie in [0, 1]");
  Strategy s;
  s.kind = StrategyKind::proposed;
  s.beta = beta;
  return s;
}

Strategy Strategy::value_only() {
  Strategy s;
  s.kind = StrategyKind::value_only;
  s.beta = 1.0;
  return s;
}

Strategy Strategy::uncertainty_only() {
  Strategy s;
  s.kind = StrategyKind::uncertainty_only;
  s.beta = 0.0;
  return s;
}

Strategy Strategy::uniform(double c) {
  if (!(c >= 0)) throw std::invalid_argument("uniform bid must be >= 0");
  Strategy s;
  s.kind = StrategyKind::uniform;
  s.constant = c;
  return s;
}

Strategy Strategy::pctr_linear(double m) {
  if (!(m >= 0)) throw std::invalid_argument("multiplier must be >= 0");
  Strategy s;
  s.kind = StrategyKind::pctr_linear;
  s.multiplier = m;
  return s;
}

bool Strategy::uses_dual() const {
  return kind == StrategyKind::proposed || kind == StrategyKind::value_only ||
         kind == StrategyKind::uncertainty_only;
}

double Strategy::effective_beta(double fallback) const {
  switch (kind) {
    case StrategyKind::proposed: return beta;
    case StrategyKind::value_only: return 1.0;
    case StrategyKind::uncertainty_only: return 0.0;
    default: return fallback;
  }
}

std::string Strategy::name() const {
  switch (kind) {
    case StrategyKind::proposed: return "proposed";
    case StrategyKind::value_only: return "value_only";
    case StrategyKind::uncertainty_only: return "uncertainty_only";
    case StrategyKind::uniform: return "uniform";
    case StrategyKind::pctr_linear: return "pctr_linear";
  }
  return "?";
}

Strategy strategy_from_string(const std::string& s, double beta,
                              double constant, double multiplier) {
  if (s == "proposed") return Strategy::proposed(beta);
  if (s == "value_only") return Strategy::value_only();
  if (s == "uncertainty_only") return Strategy::uncertainty_only();
  if (s == "uniform") return Strategy::uniform(constant);
  if (s == "pctr_linear") return Strategy::pctr_linear(multiplier);
  throw std::invalid_argument("unknown strategy: " + s);
}

BidDecision strategy_bid(const Strategy& strategy, const Impression& imp,
                         const LogisticModel& model, const CoverageState& state,
                         const PacingController& controller,
                         const GradEstConfig& gradcfg, const BidEnv& env) {
  BidDecision d;
  d.estimate = estimate_marginal_utility(model, imp.features, state, gradcfg,
                                         imp.index);
  const double remaining = controller.remaining();
  if (remaining <= 0) return d;
  const double pctr = d.estimate.pctr;
  const double delta = d.estimate.utility;

  double bid = 0.0;
  switch (strategy.kind) {
    case StrategyKind::uniform:
      bid = strategy.constant;
      break;
    case StrategyKind::pctr_linear:
      bid = strategy.multiplier * pctr;
      break;
    default: {
      double score = 0.0;
      if (env.mechanism == Mechanism::first_price_cpm) {
        const WinCurve curve = WinCurve::uniform(env.market.lo, env.market.hi);
        score = optimal_bid_fpa(delta, controller.lambda(), curve, env.grid_step);
      } else {
        double lambda = controller.lambda();
        if (env.spa_lambda_floor_one) lambda = std::max(lambda, 1.0);
        score = optimal_bid_spa(delta, lambda);
      }
      bid = score / pctr;
      break;
    }
  }
  d.bid = std::clamp(bid, 0.0, remaining / pctr);
  return d;
}

double CampaignLog::total_spend() const {
  return records.empty() ? 0.0 : records.back().cum_spend;
}

double CampaignLog::max_payment() const {
  double m = 0.0;
  for (const auto& r : records) m = std::max(m, r.price_paid);
  return m;
}

double CampaignLog::won_delta() const {
  double s = 0.0;
  for (const auto& r : records)
    if (r.won) s += r.delta;
  return s;
}

void CampaignLog::write_csv(const std::string& path) const {
  TableWriter w(path, {"t", "bid", "won", "price_paid", "delta", "lambda",
                       "cum_spend", "provenance"});
  for (const auto& r : records) {
    w.cell(r.t).cell(r.bid).cell(r.won ? 1 : 0).cell(r.price_paid)
        .cell(r.delta).cell(r.lambda).cell(r.cum_spend)
        .cell(std::string(r.provenance ? to_string(*r.provenance) : "none"));
    w.end_row();
  }
}

CampaignResult run_campaign(std::span<const Impression> stream,
                            const CampaignConfig& cfg,
                            const LogisticModel& model, BankPtr bank) {
  if (stream.size() != cfg.T)
    throw std::invalid_argument("run_campaign: stream length != T");
  if (cfg.T < 1) throw std::invalid_argument("run_campaign: T must be >= 1");
  const std::size_t period_len = cfg.pacing.period_len;
  const std::size_t periods = (cfg.T + period_len - 1) / period_len;

  GradEstConfig gradcfg = cfg.gradest;
  gradcfg.seed = cfg.seed;
  const BidEnv env{cfg.mechanism, cfg.market, cfg.grid_step,
                   cfg.spa_lambda_floor_one};

  CampaignResult res{CampaignLog{}, Dataset(model.dim()),
                     PacingController(cfg.budget, periods, cfg.pacing),
                     CoverageValue{}};
  CoverageState state(std::move(bank), cfg.kernel_lambda,
                      cfg.strategy.effective_beta(cfg.beta));
  PacingController& ctl = res.controller;
  res.log.records.reserve(stream.size());

  double cum = 0.0;
  for (std::size_t t = 0; t < stream.size(); ++t) {
    const Impression& imp = stream[t];
    CampaignRecord rec;
    rec.t = imp.index;
    rec.lambda = ctl.lambda();
    rec.market_price = imp.market_price;
    if (!ctl.exhausted()) {
      BidDecision d =
          strategy_bid(cfg.strategy, imp, model, state, ctl, gradcfg, env);
      rec.bid = d.bid;
      rec.delta = d.estimate.utility;
      rec.provenance = d.estimate.provenance;
      const Resolution r = resolve(cfg.mechanism, d.bid, d.estimate.pctr,
                                   imp.market_price, cfg.tie_wins);
      if (r.won) {
        rec.won = true;
        rec.price_paid = r.price_paid;
        ctl.record_spend(r.price_paid);
        state.commit(model.loss_gradient(imp.features, imp.true_label),
                     d.estimate.pctr);
        res.won.add(imp.features, imp.true_label);
      }
    }
    cum += rec.price_paid;
    rec.cum_spend = cum;
    if (cfg.dual_update == DualUpdate::per_win) {
      ctl.update_dual_perwin(rec.price_paid);
    } else if ((t + 1) % period_len == 0) {
      ctl.update_dual_period();
    }
    res.log.records.push_back(std::move(rec));
  }
  res.coverage = state.value();
  return res;
}

LogisticModel retrain_with_won(const Dataset& initial, const Dataset& won,
                               const TrainConfig& cfg) {
  const Dataset all = Dataset::concat(initial, won);
  return train(LogisticModel(all.dim()), all, cfg);
}

double offline_opt_fractional(std::span<const double> deltas,
                              std::span<const double> prices, double budget) {
  if (deltas.size() != prices.size())
    throw DimensionMismatch("offline_opt_fractional",
                            static_cast<Eigen::Index>(deltas.size()),
                            static_cast<Eigen::Index>(prices.size()));
  double value = 0.0;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(prices[i] >= 0)) throw std::invalid_argument("price must be >= 0");
    if (deltas[i] <= 0) continue;
    if (prices[i] == 0) {
      value += deltas[i];
    } else {
      order.push_back(i);
    }
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return deltas[a] * prices[b] > deltas[b] * prices[a];
  });
  double left = std::max(budget, 0.0);
  for (std::size_t i : order) {
    if (left <= 0) break;
    if (prices[i] <= left) {
      value += deltas[i];
      left -= prices[i];
    } else {
      value += deltas[i] * left / prices[i];
      left = 0;
    }
  }
  return value;
}

PacingTrialResult run_pacing_trial(const PacingTrialConfig& cfg) {
  const std::size_t periods =
      (cfg.T + cfg.pacing.period_len - 1) / cfg.pacing.period_len;
  PacingController ctl(cfg.budget, periods, cfg.pacing);
  const WinCurve curve = WinCurve::uniform(cfg.market.lo, cfg.market.hi);
  const auto prices = competitor_uniform(cfg.market.lo, cfg.market.hi, cfg.T,
                                         cfg.seed);
  const double log_lambda0 = ctl.log_lambda();

  PacingTrialResult res;
  res.lambda_trace.reserve(cfg.T);
  res.spend_trace.reserve(cfg.T);
  for (std::size_t t = 0; t < cfg.T; ++t) {
    res.lambda_trace.push_back(ctl.lambda());
    double cost = 0.0;
    if (!cfg.budget_cap || !ctl.exhausted()) {
      double bid = optimal_bid_fpa(cfg.value, ctl.lambda(), curve);
      if (cfg.budget_cap) bid = std::min(bid, ctl.remaining());
      const Resolution r =
          resolve(Mechanism::first_price_cpm, bid, 1.0, prices[t]);
      cost = r.price_paid;
      ctl.record_spend(cost);
    }
    if (cfg.dual_update == DualUpdate::per_win) {
      ctl.update_dual_perwin(cost);
    } else if ((t + 1) % cfg.pacing.period_len == 0) {
      ctl.update_dual_period();
    }
    if (!res.clamped) {
      if (ctl.clamp_activated()) {
        res.clamped = true;
      } else {
        res.sum_cost_unclamped += cost;
        res.log_ratio_unclamped = ctl.log_lambda() - log_lambda0;
      }
    }
    res.spend_trace.push_back(ctl.spent());
  }
  res.spend = ctl.spent();
  return res;
}

}  // namespace infobid
