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

// Expected profits of a symmetric threshold profile: per message, per type,
// ex ante, and the split of profit into a posterior-mean term and an
// expected-loss term.

#ifndef CERTMARKET_PROFIT_HPP_
#define CERTMARKET_PROFIT_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "certmarket/beliefs.hpp"
#include "certmarket/market.hpp"

namespace certmarket {

struct ExAnteProfit {
  double net = 0.0;
  double gross = 0.0;
};

// Per-seller profit = mean_term + b * loss_term when WTPs are ordered like
// the messages (ND first, outcomes ascending). ordering_ok is false otherwise, in which
// case mean_term + b * loss_term no longer equals the realized profit.
struct ProfitDecomposition {
  double mean_term = 0.0;
  double loss_term = 0.0;
  bool ordering_ok = true;
};

struct ProfitReport {
  std::vector<std::pair<Message, double>> per_message;  // on-path messages
  std::vector<double> per_type;  // net of the fee for certifying types
  double ex_ante_net = 0.0;
  double ex_ante_gross = 0.0;
  // Sum of both sellers' gross profit; equals 2 * ex_ante_gross.
  double joint_gross = 0.0;
  double mean_term = 0.0;
  double loss_term = 0.0;
  bool ordering_ok = true;
  // Set when ND carries zero probability; its expected profit is then 0.
  bool nd_off_path = false;
  double cert_prob = 0.0;
};

// Expected profit of a seller showing `wtp` against an opponent drawn from
// the on-path messages of `table`.
double ExpectedProfitAgainst(const BeliefTable& table, double wtp,
                             double tol = kTolerance);

// Throws Error(kOffPathMessage) unless the message is on path.
double ExpectedProfitGivenMessage(const BeliefTable& table, const Message& m);
double ExpectedProfitGivenMessage(const MarketParams& market,
                                  const ThresholdProfile& profile,
                                  const Message& m);

double ExpectedProfitOfType(const BeliefTable& table, std::size_t type);
double ExpectedProfitOfType(const MarketParams& market,
                            const ThresholdProfile& profile, std::size_t type);

ExAnteProfit ExAnteProfitOf(const BeliefTable& table);
ExAnteProfit ExAnteProfitOf(const MarketParams& market,
                            const ThresholdProfile& profile);

// Both sellers' gross profit summed over ordered message pairs.
double JointGrossProfit(const BeliefTable& table);
double JointGrossProfit(const MarketParams& market,
                        const ThresholdProfile& profile);

ProfitDecomposition JointProfitDecomposition(const BeliefTable& table);
ProfitDecomposition JointProfitDecomposition(const MarketParams& market,
                                             const ThresholdProfile& profile);

ProfitReport MakeProfitReport(const BeliefTable& table);
ProfitReport MakeProfitReport(const MarketParams& market,
                              const ThresholdProfile& profile);

}  // namespace certmarket

#endif  // CERTMARKET_PROFIT_HPP_
