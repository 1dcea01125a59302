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

#ifndef CERTMARKET_EQUILIBRIUM_HPP_
#define CERTMARKET_EQUILIBRIUM_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "certmarket/beliefs.hpp"
#include "certmarket/market.hpp"

namespace certmarket {

// Result of checking every certification and disclosure deviation of a
// symmetric threshold profile.
//
// cert_gaps[i] is the payoff of certifying minus the payoff of staying
// silent for type i. Certifiers follow the profile's disclosure rule;
// non-certifiers are evaluated at their best deviation, which may disclose
// outcomes the profile suppresses. A gap within tol of zero counts as
// "certify" (indifferent sellers certify).
//
// disclose_gaps[k] is E pi(s_k) - E pi(ND). Only outcomes that some
// certifying type can draw are constrained (disclose_checked[k]).
struct EquilibriumReport {
  ThresholdProfile profile;
  bool is_equilibrium = false;
  std::vector<double> cert_gaps;
  std::vector<double> disclose_gaps;
  std::vector<bool> disclose_checked;
  OffEqPolicy policy = OffEqPolicy::kPointMassAtOutcome;
  // Largest gain any type gets from deviating, 0 at an equilibrium up to tol.
  double max_violation = 0.0;
  // Every on-path disclosed WTP is at least the ND WTP.
  bool wtp_order_ok = true;
  double ex_ante_net = 0.0;
  double ex_ante_gross = 0.0;
};

EquilibriumReport VerifyThresholdEquilibrium(const MarketParams& market,
                                             const ThresholdProfile& profile,
                                             OffEqPolicy policy,
                                             double tol = kTolerance);

struct EnumerateOptions {
  OffEqPolicy policy = OffEqPolicy::kPointMassAtOutcome;
  double tol = kTolerance;
  std::size_t max_support = 64;
  // Also scan cert != disclose thresholds (including "never disclose").
  bool split_thresholds = false;
};

// Scans the empty profile followed by threshold profiles ordered by
// (cert, disclose). Every scanned profile is reported; filter on
// is_equilibrium. Throws Error(kSupportTooLarge).
std::vector<EquilibriumReport> EnumerateThresholdEquilibria(
    const MarketParams& market, const EnumerateOptions& options = {});

// Smallest index m with sum_{j<=m} q_j (v_m - v_j) >= c, i.e. the lowest
// type for which accurate certification pays. Uses only support and c.
std::optional<std::size_t> AccurateUniqueEquilibrium(
    const MarketParams& market, double tol = kTolerance);

// Two-type existence region in terms of the normalized fee
// c / (dv (1 - q_H)). Accurate certification sustains the high type alone
// for a fee in (0, 1]; noisy certification for a fee in
// (noisy_low, noisy_high].
struct TwoTypeRegion {
  double normalized_fee = 0.0;
  double noisy_low = 0.0;
  double noisy_high = 0.0;
  bool in_accurate_region = false;
  bool in_noisy_region = false;
};

// Throws Error(kNotTwoType).
TwoTypeRegion TwoTypeExistence(const MarketParams& market);

struct NoisyVsAccurate {
  // q_H (b + 1) > 1 / (1 - (1 - q_H)(1 - alpha)).
  bool noisy_more_profitable = false;
  double lhs = 0.0;
  double rhs = 0.0;
  // Net ex-ante profit of ({v_H},{s_H}) under noise minus under accuracy.
  double profit_gap = 0.0;
};

// Throws Error(kNotTwoType) or Error(kAccurateInput) when alpha == 1.
NoisyVsAccurate TwoTypeNoisyVsAccurate(const MarketParams& market);

}  // namespace certmarket

#endif  // CERTMARKET_EQUILIBRIUM_HPP_
