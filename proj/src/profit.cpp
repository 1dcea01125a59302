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

#include "certmarket/profit.hpp"

#include "certmarket/error.hpp"
#include "certmarket/pricing.hpp"

namespace certmarket {

double ExpectedProfitAgainst(const BeliefTable& table, double wtp,
                             double tol) {
  double total = 0.0;
  for (const Message& other : table.on_path()) {
    total += table.Prob(other) *
             BertrandSubgame(wtp, table.Wtp(other), tol).profit_i;
  }
  return total;
}

double ExpectedProfitGivenMessage(const BeliefTable& table, const Message& m) {
  if (!table.OnPath(m)) {
    throw Error(ErrorCode::kOffPathMessage,
                m.ToString() + " has zero probability");
  }
  return ExpectedProfitAgainst(table, table.Wtp(m));
}

double ExpectedProfitGivenMessage(const MarketParams& market,
                                  const ThresholdProfile& profile,
                                  const Message& m) {
  return ExpectedProfitGivenMessage(BeliefTable(market, profile), m);
}

namespace {

// E pi(m) with the zero convention for an off-path ND.
double MessageProfit(const BeliefTable& table, const Message& m) {
  if (m.is_nd() && !table.OnPath(m)) return 0.0;
  return ExpectedProfitAgainst(table, table.Wtp(m));
}

}  // namespace

double ExpectedProfitOfType(const BeliefTable& table, std::size_t type) {
  const MarketParams& market = table.market();
  if (type >= market.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "type outside the support");
  }
  if (!table.profile().Certifies(type)) {
    return MessageProfit(table, Message::NonDisclosure());
  }
  const auto outcomes =
      CertOutcomeDistribution(market.support(), market.alpha(), type);
  double total = 0.0;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    if (outcomes[k] == 0.0) continue;
    total += outcomes[k] * MessageProfit(table, table.MessageFor(k));
  }
  return total - market.c();
}

double ExpectedProfitOfType(const MarketParams& market,
                            const ThresholdProfile& profile,
                            std::size_t type) {
  return ExpectedProfitOfType(BeliefTable(market, profile), type);
}

ExAnteProfit ExAnteProfitOf(const BeliefTable& table) {
  const QualitySupport& support = table.market().support();
  ExAnteProfit result;
  double cert_prob = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    result.net += support.prior(i) * ExpectedProfitOfType(table, i);
    if (table.profile().Certifies(i)) cert_prob += support.prior(i);
  }
  result.gross = result.net + table.market().c() * cert_prob;
  return result;
}

ExAnteProfit ExAnteProfitOf(const MarketParams& market,
                            const ThresholdProfile& profile) {
  return ExAnteProfitOf(BeliefTable(market, profile));
}

double JointGrossProfit(const BeliefTable& table) {
  double total = 0.0;
  for (const Message& a : table.on_path()) {
    for (const Message& b : table.on_path()) {
      const SubgameResult r = BertrandSubgame(table.Wtp(a), table.Wtp(b));
      total += table.Prob(a) * table.Prob(b) * (r.profit_i + r.profit_j);
    }
  }
  return total;
}

double JointGrossProfit(const MarketParams& market,
                        const ThresholdProfile& profile) {
  return JointGrossProfit(BeliefTable(market, profile));
}

ProfitDecomposition JointProfitDecomposition(const BeliefTable& table) {
  ProfitDecomposition d;
  const auto& path = table.on_path();  // ND first, outcomes ascending
  for (std::size_t a = 0; a < path.size(); ++a) {
    const PosteriorRecord& lo = table.Record(path[a]);
    for (std::size_t b = a + 1; b < path.size(); ++b) {
      const PosteriorRecord& hi = table.Record(path[b]);
      const double weight = lo.path_prob * hi.path_prob;
      d.mean_term += weight * (hi.mean - lo.mean);
      d.loss_term += weight * (hi.exp_loss - lo.exp_loss);
      if (hi.wtp < lo.wtp - kTolerance) d.ordering_ok = false;
    }
  }
  return d;
}

ProfitDecomposition JointProfitDecomposition(const MarketParams& market,
                                             const ThresholdProfile& profile) {
  return JointProfitDecomposition(BeliefTable(market, profile));
}

ProfitReport MakeProfitReport(const BeliefTable& table) {
  ProfitReport report;
  const MarketParams& market = table.market();
  for (const Message& m : table.on_path()) {
    report.per_message.emplace_back(m, ExpectedProfitGivenMessage(table, m));
  }
  report.nd_off_path = !table.OnPath(Message::NonDisclosure());
  report.per_type.resize(market.size());
  for (std::size_t i = 0; i < market.size(); ++i) {
    report.per_type[i] = ExpectedProfitOfType(table, i);
    report.ex_ante_net += market.support().prior(i) * report.per_type[i];
    if (table.profile().Certifies(i)) {
      report.cert_prob += market.support().prior(i);
    }
  }
  report.ex_ante_gross = report.ex_ante_net + market.c() * report.cert_prob;
  report.joint_gross = JointGrossProfit(table);
  const ProfitDecomposition d = JointProfitDecomposition(table);
  report.mean_term = d.mean_term;
  report.loss_term = d.loss_term;
  report.ordering_ok = d.ordering_ok;
  return report;
}

ProfitReport MakeProfitReport(const MarketParams& market,
                              const ThresholdProfile& profile) {
  return MakeProfitReport(BeliefTable(market, profile));
}

}  // namespace certmarket
