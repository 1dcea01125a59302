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

#include "certmarket/equilibrium.hpp"

#include <algorithm>
#include <string>

#include "certmarket/error.hpp"
#include "certmarket/profit.hpp"

namespace certmarket {

EquilibriumReport VerifyThresholdEquilibrium(const MarketParams& market,
                                             const ThresholdProfile& profile,
                                             OffEqPolicy policy, double tol) {
  ValidateProfile(market, profile);
  const std::size_t n = market.size();
  EquilibriumReport report;
  report.profile = profile;
  report.policy = EffectiveOffEqPolicy(market.env(), policy);
  report.cert_gaps.assign(n, 0.0);
  report.disclose_gaps.assign(n, 0.0);
  report.disclose_checked.assign(n, false);
  if (!market.certification_available()) {
    // Nobody can certify or disclose, so there is no decision to check.
    report.is_equilibrium = true;
    return report;
  }

  const BeliefTable table(market, profile, policy);
  const Message nd = Message::NonDisclosure();
  // Payoff of staying silent, valued with off-path beliefs if need be.
  const double silent = ExpectedProfitAgainst(table, table.Wtp(nd));
  std::vector<double> disclosed(n);
  for (std::size_t k = 0; k < n; ++k) {
    disclosed[k] = ExpectedProfitAgainst(table, table.Wtp(Message::Disclosed(k)));
    report.disclose_gaps[k] = disclosed[k] - silent;
  }

  bool ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const auto outcomes =
        CertOutcomeDistribution(market.support(), market.alpha(), i);
    const bool certifies = profile.Certifies(i);
    double payoff = -market.c();
    for (std::size_t k = 0; k < n; ++k) {
      if (outcomes[k] == 0.0) continue;
      double value;
      if (certifies) {
        value = profile.Discloses(k) ? disclosed[k] : silent;
        report.disclose_checked[k] = true;
      } else {
        value = std::max(disclosed[k], silent);
      }
      payoff += outcomes[k] * value;
    }
    report.cert_gaps[i] = payoff - silent;
    report.max_violation = std::max(
        report.max_violation,
        certifies ? -report.cert_gaps[i] : report.cert_gaps[i]);
    // Indifferent sellers certify.
    if (certifies ? report.cert_gaps[i] < -tol : report.cert_gaps[i] >= -tol) {
      ok = false;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!report.disclose_checked[k]) continue;
    const double gap = report.disclose_gaps[k];
    report.max_violation =
        std::max(report.max_violation, profile.Discloses(k) ? -gap : gap);
    if (profile.Discloses(k) ? gap < -tol : gap > tol) ok = false;
  }
  report.is_equilibrium = ok;

  if (table.OnPath(nd)) {
    for (const Message& m : table.on_path()) {
      if (!m.is_nd() && table.Wtp(m) < table.Wtp(nd) - tol) {
        report.wtp_order_ok = false;
      }
    }
  }
  const ExAnteProfit profit = ExAnteProfitOf(table);
  report.ex_ante_net = profit.net;
  report.ex_ante_gross = profit.gross;
  return report;
}

std::vector<EquilibriumReport> EnumerateThresholdEquilibria(
    const MarketParams& market, const EnumerateOptions& options) {
  const std::size_t n = market.size();
  if (n > options.max_support) {
    throw Error(ErrorCode::kSupportTooLarge,
                "support has " + std::to_string(n) + " levels, limit is " +
                    std::to_string(options.max_support));
  }
  std::vector<ThresholdProfile> profiles{ThresholdProfile::Empty()};
  if (market.certification_available()) {
    for (std::size_t l = 0; l < n; ++l) {
      if (!options.split_thresholds) {
        profiles.push_back(ThresholdProfile::Same(l));
        continue;
      }
      profiles.push_back({l, std::nullopt});
      for (std::size_t d = 0; d < n; ++d) profiles.push_back({l, d});
    }
  }
  std::vector<EquilibriumReport> reports;
  reports.reserve(profiles.size());
  for (const ThresholdProfile& p : profiles) {
    reports.push_back(
        VerifyThresholdEquilibrium(market, p, options.policy, options.tol));
  }
  return reports;
}

std::optional<std::size_t> AccurateUniqueEquilibrium(
    const MarketParams& market, double tol) {
  const QualitySupport& support = market.support();
  for (std::size_t m = 0; m < support.size(); ++m) {
    double gain = 0.0;
    for (std::size_t j = 0; j <= m; ++j) {
      gain += support.prior(j) * (support.value(m) - support.value(j));
    }
    if (gain - market.c() >= -tol) return m;
  }
  return std::nullopt;
}

TwoTypeRegion TwoTypeExistence(const MarketParams& market) {
  if (market.size() != 2) {
    throw Error(ErrorCode::kNotTwoType,
                "support has " + std::to_string(market.size()) + " levels");
  }
  const QualitySupport& s = market.support();
  const double q_h = s.prior(1);
  const double dv = s.value(1) - s.value(0);
  const double alpha = market.alpha();
  const double noise = (1.0 - alpha) * q_h;
  const double factor = 1.0 + market.b() * noise / (1.0 + noise);

  TwoTypeRegion region;
  region.normalized_fee = market.c() / (dv * (1.0 - q_h));
  region.noisy_low = noise * factor;
  region.noisy_high = (alpha + noise) * factor;
  const double fee = region.normalized_fee;
  region.in_accurate_region = fee > 0.0 && fee <= 1.0;
  region.in_noisy_region = region.noisy_low < fee && fee <= region.noisy_high;
  return region;
}

NoisyVsAccurate TwoTypeNoisyVsAccurate(const MarketParams& market) {
  if (market.size() != 2) {
    throw Error(ErrorCode::kNotTwoType,
                "support has " + std::to_string(market.size()) + " levels");
  }
  if (market.env() == Environment::kAccurate || market.alpha() >= 1.0) {
    throw Error(ErrorCode::kAccurateInput,
                "comparison needs a noisy precision alpha < 1");
  }
  const double q_h = market.support().prior(1);
  const double alpha = market.alpha();
  NoisyVsAccurate result;
  result.lhs = q_h * (market.b() + 1.0);
  result.rhs = 1.0 / (1.0 - (1.0 - q_h) * (1.0 - alpha));
  result.noisy_more_profitable = result.lhs > result.rhs;

  const ThresholdProfile top = ThresholdProfile::Same(1);
  const MarketParams noisy = market.WithEnv(Environment::kNoisy, alpha);
  const MarketParams accurate = market.WithEnv(Environment::kAccurate, {});
  result.profit_gap =
      ExAnteProfitOf(noisy, top).net - ExAnteProfitOf(accurate, top).net;
  return result;
}

}  // namespace certmarket
