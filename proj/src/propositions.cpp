// Copyright 2026 The certmarket Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "certmarket/propositions.hpp"

#include <string>

#include "certmarket/beliefs.hpp"
#include "certmarket/error.hpp"
#include "certmarket/profit.hpp"

namespace certmarket {

SlopeReport LossTermSlope(const QualitySupport& support,
                              std::size_t level) {
  const std::size_t n = support.size();
  if (level >= n) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "level " + std::to_string(level) + " outside support");
  }
  const auto v = support.values();
  const auto q = support.priors();
  const std::size_t l = level;

  SlopeReport r;
  r.level = l;
  double mass_c = 0.0, sum_c = 0.0, mass_nc = 0.0, sum_nc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k >= l) {
      mass_c += q[k];
      sum_c += q[k] * v[k];
    } else {
      mass_nc += q[k];
      sum_nc += q[k] * v[k];
    }
  }
  r.certified_mass = mass_c;
  r.uncertified_mass = mass_nc;
  r.certified_mean = sum_c / mass_c;
  r.uncertified_mean = l > 0 ? sum_nc / mass_nc : 0.0;

  r.outcome_slopes.assign(n - l, 0.0);
  for (std::size_t j = l; j < n; ++j) {
    double d = 0.0;
    if (v[j] >= r.certified_mean) {
      for (std::size_t k = l; k < j; ++k) d += q[k] * (v[j] - v[k]);
    } else {
      for (std::size_t k = j + 1; k < n; ++k) d += q[k] * (v[k] - v[j]);
    }
    r.outcome_slopes[j - l] = d;
  }

  for (std::size_t j = l; j < n; ++j) {
    for (std::size_t i = l; i < j; ++i) {
      r.disclosed_pairs += q[i] * q[j] * (r.outcome_slopes[j - l] - r.outcome_slopes[i - l]);
    }
  }

  if (l == 0) return r;  // nobody stays silent: no ND terms

  // Ties v_K == E_NC fall into the loss set; they contribute nothing.
  std::size_t loss_cutoff = 0;
  for (std::size_t k = 0; k < l; ++k) {
    if (v[k] <= r.uncertified_mean) loss_cutoff = k;
  }
  r.loss_cutoff = loss_cutoff;

  double nd_sum = 0.0;
  double loss_nd = 0.0;
  for (std::size_t k = 0; k <= loss_cutoff; ++k) {
    nd_sum += q[k] * (r.certified_mean + v[k] - 2.0 * r.uncertified_mean);
    loss_nd += q[k] * (v[k] - r.uncertified_mean);
  }
  r.nd_slope = r.certified_mass / r.uncertified_mass * nd_sum;

  for (std::size_t k = l; k < n; ++k) {
    r.silent_pairs += (1.0 - 2.0 * r.certified_mass) * q[k] * (-loss_nd);
    r.silent_pairs += q[k] * r.uncertified_mass * (r.outcome_slopes[k - l] - r.nd_slope);
  }
  return r;
}

double LossTermSlopeFd(const MarketParams& market,
                      const ThresholdProfile& profile, double h) {
  if (!(h > 0.0 && h <= 0.05)) {
    throw Error(ErrorCode::kStepTooLarge,
                "step must lie in (0, 0.05], got " + std::to_string(h));
  }
  const MarketParams at_one = market.WithEnv(Environment::kAccurate, {});
  const MarketParams below = market.WithEnv(Environment::kNoisy, 1.0 - h);
  const double loss_at_one = JointProfitDecomposition(at_one, profile).loss_term;
  const double loss_below = JointProfitDecomposition(below, profile).loss_term;
  return (loss_at_one - loss_below) / h;
}

SlopeCondition CheckSlopeCondition(const QualitySupport& support) {
  const auto v = support.values();
  const auto q = support.priors();
  SlopeCondition r;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i + 1] - v[i] < v[i] - v[i - 1]) {
      r.first_gap_violation = i;
      break;
    }
  }
  double below = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (k > 0 && !(q[k] > 2.0 * below)) {
      r.first_prior_violation = k;
      break;
    }
    below += q[k];
  }
  r.gaps_ok = !r.first_gap_violation;
  r.priors_ok = !r.first_prior_violation;
  r.ok = r.gaps_ok && r.priors_ok;
  if (r.first_gap_violation) {
    const std::size_t i = *r.first_gap_violation;
    r.diagnostic += "gap shrinks after v" + std::to_string(i + 1) + "; ";
  }
  if (r.first_prior_violation) {
    const std::size_t k = *r.first_prior_violation;
    r.diagnostic += "q" + std::to_string(k + 1) +
                    " is not above twice the mass below it; ";
  }
  if (r.ok) r.diagnostic = "ok";
  else r.diagnostic.resize(r.diagnostic.size() - 2);
  return r;
}

bool TruncatedMeanBounds(const QualitySupport& support) {
  const SlopeCondition cond = CheckSlopeCondition(support);
  if (!cond.priors_ok) {
    throw Error(ErrorCode::kConditionNotMet, cond.diagnostic);
  }
  const auto v = support.values();
  const auto q = support.priors();
  const std::size_t n = v.size();
  // Lower-truncated means.
  double mass = 0.0, sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mass += q[k];
    sum += q[k] * v[k];
    if (k > 0 && !(sum / mass > v[k - 1])) return false;
  }
  if (n < 2) return true;
  // Upper-truncated means against the second-highest value.
  mass = 0.0;
  sum = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    mass += q[k];
    sum += q[k] * v[k];
    if (!(sum / mass > v[n - 2])) return false;
  }
  return true;
}

QualitySupport TwoTypeExampleSupport() {
  return QualitySupport::Create({1.0, 3.0}, {1.0 / 3.0, 2.0 / 3.0});
}

namespace {

double WtpGap(const BeliefTable& table) {
  return table.Wtp(Message::Disclosed(table.market().size() - 1)) -
         table.Wtp(Message::NonDisclosure());
}

double NonBertrand(const BeliefTable& table) {
  return table.Prob(Message::Disclosed(table.market().size() - 1)) *
         table.Prob(Message::NonDisclosure());
}

}  // namespace

std::vector<TwoTypeCurveRow> TwoTypeCurves(std::span<const double> alpha_grid,
                                        double c, double b,
                                        const QualitySupport& support) {
  RawMarket raw;
  raw.values.assign(support.values().begin(), support.values().end());
  raw.priors.assign(support.priors().begin(), support.priors().end());
  raw.b = b;
  raw.c = c;
  raw.env = Environment::kAccurate;
  const MarketParams accurate = ValidateMarket(raw);
  const ThresholdProfile top = ThresholdProfile::Same(support.size() - 1);
  const BeliefTable acc_table(accurate, top);
  const double acc_profit = ExAnteProfitOf(acc_table).net;

  std::vector<TwoTypeCurveRow> rows;
  rows.reserve(alpha_grid.size());
  for (double alpha : alpha_grid) {
    const MarketParams noisy = accurate.WithEnv(Environment::kNoisy, alpha);
    const BeliefTable table(noisy, top);
    const BeliefTable table_b0(noisy.WithB(0.0), top);
    TwoTypeCurveRow row;
    row.alpha = alpha;
    row.pr_non_bertrand = NonBertrand(table);
    row.pr_non_bertrand_accurate = NonBertrand(acc_table);
    row.wtp_gap_accurate = WtpGap(acc_table);
    row.wtp_gap_b0 = WtpGap(table_b0);
    row.wtp_gap_b = WtpGap(table);
    row.profit_noisy = ExAnteProfitOf(table).net;
    row.profit_accurate = acc_profit;
    rows.push_back(row);
  }
  return rows;
}

double TwoTypeClosedForm::PrNonBertrand(double alpha) {
  const double q_h = 2.0 / 3.0;
  return q_h * (alpha + (1.0 - alpha) * q_h) * (1.0 - q_h) *
         (1.0 + q_h * (1.0 - alpha));
}

double TwoTypeClosedForm::WtpGapB0(double alpha) {
  return 6.0 / (5.0 - 2.0 * alpha);
}

double TwoTypeClosedForm::WtpGapB1(double alpha) {
  return WtpGapB0(alpha) * (7.0 - 4.0 * alpha) / (5.0 - 2.0 * alpha);
}

double TwoTypeClosedForm::ProfitNoisyB1(double alpha, double c) {
  return (16.0 * alpha * alpha + 4.0 * alpha - 56.0) / (54.0 * alpha - 135.0) -
         2.0 * c / 3.0;
}

double TwoTypeClosedForm::ProfitAccurate(double c) {
  return 4.0 / 9.0 - 2.0 * c / 3.0;
}

std::optional<double> EstimateLossAversion(std::optional<int> theta_x,
                                           std::optional<int> theta_y) {
  auto check = [](std::optional<int> theta, int hi, const char* name) {
    if (!theta) return;
    if (*theta == 0) {
      throw Error(ErrorCode::kZeroSwitchPoint,
                  std::string(name) + " switching point is zero");
    }
    if (*theta < 1 || *theta > hi) {
      throw Error(ErrorCode::kInvalidRange,
                  std::string(name) + " switching point " +
                      std::to_string(*theta) + " outside 1.." +
                      std::to_string(hi));
    }
  };
  check(theta_x, 10, "first");
  check(theta_y, 20, "second");
  if (theta_x && theta_y) return 0.5 * (10.0 / *theta_x + 20.0 / *theta_y);
  if (theta_x) return 10.0 / *theta_x;
  if (theta_y) return 20.0 / *theta_y;
  return std::nullopt;
}

}  // namespace certmarket
