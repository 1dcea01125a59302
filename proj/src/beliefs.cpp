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

#include "certmarket/beliefs.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "certmarket/error.hpp"

namespace certmarket {
namespace {

PosteriorRecord Summarize(const MarketParams& market, const Message& message,
                          std::vector<double> probs, bool on_path,
                          double path_prob) {
  PosteriorRecord rec;
  rec.message = message;
  const auto values = market.support().values();
  rec.mean = std::inner_product(values.begin(), values.end(), probs.begin(),
                                0.0);
  rec.exp_loss = ExpectedLoss(values, probs, rec.mean);
  rec.wtp = WillingnessToPay(rec.mean, rec.exp_loss, market.b());
  rec.probs = std::move(probs);
  rec.on_path = on_path;
  rec.path_prob = path_prob;
  return rec;
}

std::vector<double> PointMass(std::size_t n, std::size_t at) {
  std::vector<double> probs(n, 0.0);
  probs[at] = 1.0;
  return probs;
}

MessageDistribution Marginalize(const QualitySupport& support,
                                const std::vector<std::vector<double>>& lik) {
  MessageDistribution dist;
  dist.disclosed.assign(support.size(), 0.0);
  for (std::size_t i = 0; i < support.size(); ++i) {
    dist.nd += support.prior(i) * lik[i][0];
    for (std::size_t k = 0; k < support.size(); ++k) {
      dist.disclosed[k] += support.prior(i) * lik[i][k + 1];
    }
  }
  return dist;
}

PosteriorRecord BayesPosterior(const MarketParams& market,
                               const std::vector<std::vector<double>>& lik,
                               const Message& message, double path_prob) {
  const QualitySupport& support = market.support();
  std::vector<double> joint(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) {
    joint[i] = support.prior(i) * lik[i][message.slot()];
  }
  const double total = std::accumulate(joint.begin(), joint.end(), 0.0);
  for (double& p : joint) p /= total;
  return Summarize(market, message, std::move(joint), true, path_prob);
}

PosteriorRecord OffPathPosterior(const MarketParams& market,
                                 const ThresholdProfile& profile,
                                 const Message& message, OffEqPolicy policy,
                                 double path_prob) {
  const QualitySupport& support = market.support();
  const std::size_t n = support.size();
  if (message.is_nd()) {
    std::vector<double> prior(support.priors().begin(),
                              support.priors().end());
    return Summarize(market, message, std::move(prior), false, path_prob);
  }
  const std::size_t k = message.outcome();
  switch (EffectiveOffEqPolicy(market.env(), policy)) {
    case OffEqPolicy::kPointMassAtOutcome:
      return Summarize(market, message, PointMass(n, k), false, path_prob);
    case OffEqPolicy::kWorstType:
      return Summarize(market, message, PointMass(n, 0), false, path_prob);
    case OffEqPolicy::kBayesGivenCertSet: {
      // With nobody certifying, any type could be the deviator.
      std::vector<double> weights(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        if (profile.IsEmpty() || profile.Certifies(i)) {
          weights[i] = support.prior(i) *
                       CertOutcomeDistribution(support, market.alpha(), i)[k];
        }
      }
      const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
      if (total <= kOnPathThreshold) {
        // No certifier can draw this outcome; take it at face value.
        return Summarize(market, message, PointMass(n, k), false, path_prob);
      }
      for (double& w : weights) w /= total;
      return Summarize(market, message, std::move(weights), false, path_prob);
    }
  }
  throw Error(ErrorCode::kInvariantViolation, "unknown off-path policy");
}

}  // namespace

std::string Message::ToString() const {
  return is_nd() ? "ND" : "s" + std::to_string(outcome() + 1);
}

std::string_view OffEqPolicyName(OffEqPolicy policy) {
  switch (policy) {
    case OffEqPolicy::kPointMassAtOutcome: return "pointmass";
    case OffEqPolicy::kBayesGivenCertSet: return "bayes";
    case OffEqPolicy::kWorstType: return "worst";
  }
  return "unknown";
}

std::optional<OffEqPolicy> ParseOffEqPolicy(std::string_view name) {
  if (name == "pointmass") return OffEqPolicy::kPointMassAtOutcome;
  if (name == "bayes") return OffEqPolicy::kBayesGivenCertSet;
  if (name == "worst") return OffEqPolicy::kWorstType;
  return std::nullopt;
}

OffEqPolicy DefaultOffEqPolicy(Environment) {
  // Taking off-path outcomes at face value is what makes the two-type
  // ({v_H}, {s_H}) profile an equilibrium under noise.
  return OffEqPolicy::kPointMassAtOutcome;
}

OffEqPolicy EffectiveOffEqPolicy(Environment env, OffEqPolicy requested) {
  return env == Environment::kAccurate ? OffEqPolicy::kPointMassAtOutcome
                                       : requested;
}

std::vector<std::vector<double>> MessageLikelihoods(
    const MarketParams& market, const ThresholdProfile& profile) {
  ValidateProfile(market, profile);
  const QualitySupport& support = market.support();
  const std::size_t n = support.size();
  std::vector<std::vector<double>> lik(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    if (!profile.Certifies(i)) {
      lik[i][0] = 1.0;
      continue;
    }
    const auto outcomes = CertOutcomeDistribution(support, market.alpha(), i);
    for (std::size_t k = 0; k < n; ++k) {
      if (profile.Discloses(k)) {
        lik[i][k + 1] += outcomes[k];
      } else {
        lik[i][0] += outcomes[k];
      }
    }
  }
  return lik;
}

MessageDistribution MessageProbabilities(const MarketParams& market,
                                         const ThresholdProfile& profile) {
  return Marginalize(market.support(), MessageLikelihoods(market, profile));
}

std::vector<Message> MessageSpace(const MarketParams& market,
                                  const ThresholdProfile& profile) {
  const MessageDistribution dist = MessageProbabilities(market, profile);
  std::vector<Message> space;
  for (std::size_t slot = 0; slot <= market.size(); ++slot) {
    const Message m = Message::FromSlot(slot);
    if (dist.OnPath(m)) space.push_back(m);
  }
  return space;
}

double ExpectedLoss(std::span<const double> values,
                    std::span<const double> probs, double mean) {
  double loss = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    loss += probs[k] * std::min(values[k] - mean, 0.0);
  }
  return loss;
}

PosteriorRecord Posterior(const MarketParams& market,
                          const ThresholdProfile& profile,
                          const Message& message) {
  const auto lik = MessageLikelihoods(market, profile);
  const MessageDistribution dist = Marginalize(market.support(), lik);
  if (!message.is_nd() && message.outcome() >= market.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "outcome outside the support");
  }
  if (!dist.OnPath(message)) {
    throw Error(ErrorCode::kOffPathMessage,
                message.ToString() + " has zero probability");
  }
  return BayesPosterior(market, lik, message, dist.Prob(message));
}

PosteriorRecord OffEquilibriumPosterior(const MarketParams& market,
                                        const ThresholdProfile& profile,
                                        const Message& message,
                                        OffEqPolicy policy) {
  const MessageDistribution dist = MessageProbabilities(market, profile);
  if (!message.is_nd() && message.outcome() >= market.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "outcome outside the support");
  }
  if (dist.OnPath(message)) {
    throw Error(ErrorCode::kOnPathMessage,
                message.ToString() + " is on the equilibrium path");
  }
  return OffPathPosterior(market, profile, message, policy,
                          dist.Prob(message));
}

BeliefTable::BeliefTable(const MarketParams& market,
                         const ThresholdProfile& profile, OffEqPolicy policy)
    : market_(market),
      profile_(profile),
      policy_(EffectiveOffEqPolicy(market.env(), policy)),
      likelihoods_(MessageLikelihoods(market, profile)),
      distribution_(Marginalize(market.support(), likelihoods_)) {
  records_.reserve(market.size() + 1);
  for (std::size_t slot = 0; slot <= market.size(); ++slot) {
    const Message m = Message::FromSlot(slot);
    const double rho = distribution_.Prob(m);
    if (distribution_.OnPath(m)) {
      on_path_.push_back(m);
      records_.push_back(BayesPosterior(market_, likelihoods_, m, rho));
    } else {
      records_.push_back(OffPathPosterior(market_, profile_, m, policy_, rho));
    }
  }
}

}  // namespace certmarket
