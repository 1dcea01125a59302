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

// Numerical checks of the model's analytical results: the two-type example
// curves, the slope of the expected-loss profit term at full precision, the
// conditional-mean bounds it relies on, and the loss-aversion estimator used
// with the elicitation task.

#ifndef CERTMARKET_PROPOSITIONS_HPP_
#define CERTMARKET_PROPOSITIONS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "certmarket/market.hpp"

namespace certmarket {

// Slope of the expected-loss profit term at alpha = 1 for the profile
// cert = disclose = l, split into its pieces.
//
// outcome_slopes[j - l] is dEL_j/dalpha at 1 for disclosed outcome j >= l:
//   v_j >= E_C:  sum_{k=l}^{j-1} q_k (v_j - v_k)
//   v_j <  E_C:  sum_{k=j+1}^{n} q_k (v_k - v_j)
// with E_C the certified mean. nd_slope is
//   (q_D / q_ND) sum_{k<=K} q_k (E_C + v_k - 2 E_NC)
// where E_NC is the uncertified mean and K the largest index with
// v_K <= E_NC. disclosed_pairs sums over pairs of disclosed outcomes,
// silent_pairs over pairs with ND.
struct SlopeReport {
  std::size_t level = 0;
  std::vector<double> outcome_slopes;
  double nd_slope = 0.0;
  double disclosed_pairs = 0.0;
  double silent_pairs = 0.0;
  double certified_mean = 0.0;
  double uncertified_mean = 0.0;
  double certified_mass = 0.0;
  double uncertified_mass = 0.0;
  // Largest index K with v_K <= E_NC; absent when nobody is uncertified.
  std::optional<std::size_t> loss_cutoff;

  double Total() const { return disclosed_pairs + silent_pairs; }
};

// `level` is the 0-based threshold. level == 0 leaves no uncertified types,
// so nd_slope = 0 and silent_pairs = 0.
SlopeReport LossTermSlope(const QualitySupport& support, std::size_t level);

// Backward difference (loss_term(1) - loss_term(1 - h)) / h computed
// through the profit decomposition. Throws Error(kStepTooLarge) unless
// 0 < h <= 0.05.
double LossTermSlopeFd(const MarketParams& market,
                       const ThresholdProfile& profile, double h = 1e-3);

// Conditions under which the loss_term slope at full precision is negative:
// increasing gaps v_{i+1} - v_i >= v_i - v_{i-1}, and
// q_k > 2 (q_1 + ... + q_{k-1}) for every k >= 2.
struct SlopeCondition {
  bool ok = false;
  bool gaps_ok = false;
  bool priors_ok = false;
  std::optional<std::size_t> first_gap_violation;    // 0-based index i
  std::optional<std::size_t> first_prior_violation;  // 0-based index k
  std::string diagnostic;
};

SlopeCondition CheckSlopeCondition(const QualitySupport& support);

// E[v | v <= v_k] > v_{k-1} for every k > 1 and E[v | v >= v_k] > v_{n-1}
// for every k. Throws Error(kConditionNotMet) when the prior condition of
// CheckSlopeCondition fails.
bool TruncatedMeanBounds(const QualitySupport& support);

struct TwoTypeCurveRow {
  double alpha = 0.0;
  double pr_non_bertrand = 0.0;           // rho_H * rho_ND under noise
  double pr_non_bertrand_accurate = 0.0;  // same at alpha = 1
  double wtp_gap_accurate = 0.0;
  double wtp_gap_b0 = 0.0;
  double wtp_gap_b = 0.0;
  double profit_noisy = 0.0;     // net, per seller
  double profit_accurate = 0.0;  // net, per seller
};

// The two-type example: values (1, 3) with q_H = 2/3 unless overridden.
QualitySupport TwoTypeExampleSupport();

// Rows computed through the general engine for profile ({v_H}, {s_H}).
std::vector<TwoTypeCurveRow> TwoTypeCurves(
    std::span<const double> alpha_grid, double c, double b,
    const QualitySupport& support = TwoTypeExampleSupport());

// Closed forms of the example for values (1, 3) and q_H = 2/3.
struct TwoTypeClosedForm {
  static double PrNonBertrand(double alpha);
  static double WtpGapB0(double alpha);
  static double WtpGapB1(double alpha);
  static double ProfitNoisyB1(double alpha, double c);
  static double ProfitAccurate(double c);
};

// b = (10 / theta_x + 20 / theta_y) / 2 with either term alone when only one
// switching point exists. Returns nullopt when neither is present.
// Throws Error(kZeroSwitchPoint) for a zero switching point and
// Error(kInvalidRange) outside 1..10 (theta_x) or 1..20 (theta_y).
std::optional<double> EstimateLossAversion(std::optional<int> theta_x,
                                           std::optional<int> theta_y);

}  // namespace certmarket

#endif  // CERTMARKET_PROPOSITIONS_HPP_
