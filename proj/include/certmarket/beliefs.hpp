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

#ifndef CERTMARKET_BELIEFS_HPP_
#define CERTMARKET_BELIEFS_HPP_

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "certmarket/market.hpp"

namespace certmarket {

// A message below this probability is treated as off the equilibrium path.
inline constexpr double kOnPathThreshold = 1e-15;

// What a buyer observes about one seller: a disclosed certification outcome
// or non-disclosure (ND). Orders ND first, then outcomes ascending.
class Message {
 public:
  static Message NonDisclosure() { return Message(std::nullopt); }
  static Message Disclosed(std::size_t outcome) { return Message(outcome); }

  bool is_nd() const { return !outcome_; }
  // Precondition: !is_nd().
  std::size_t outcome() const { return *outcome_; }
  // Slot in a dense table: 0 for ND, outcome + 1 otherwise.
  std::size_t slot() const { return outcome_ ? *outcome_ + 1 : 0; }
  static Message FromSlot(std::size_t slot) {
    return slot == 0 ? NonDisclosure() : Disclosed(slot - 1);
  }

  // "ND" or "s<k>" with k 1-based.
  std::string ToString() const;

  friend auto operator<=>(const Message& a, const Message& b) {
    return a.slot() <=> b.slot();
  }
  friend bool operator==(const Message& a, const Message& b) {
    return a.slot() == b.slot();
  }

 private:
  explicit Message(std::optional<std::size_t> outcome) : outcome_(outcome) {}
  std::optional<std::size_t> outcome_;
};

// Buyers' beliefs after a message that has zero probability under the
// candidate profile.
enum class OffEqPolicy {
  kPointMassAtOutcome,  // the outcome is taken at face value
  kBayesGivenCertSet,   // Bayes over certifying types, ignoring disclosure
  kWorstType,           // mass on v_1
};

std::string_view OffEqPolicyName(OffEqPolicy policy);
// Accepts "pointmass", "bayes", "worst".
std::optional<OffEqPolicy> ParseOffEqPolicy(std::string_view name);
OffEqPolicy DefaultOffEqPolicy(Environment env);
// Accurate certification always uses kPointMassAtOutcome.
OffEqPolicy EffectiveOffEqPolicy(Environment env, OffEqPolicy requested);

// Unconditional message probabilities rho: nd = rho_ND, disclosed[k] = rho_k.
struct MessageDistribution {
  double nd = 0.0;
  std::vector<double> disclosed;

  double Prob(const Message& m) const {
    return m.is_nd() ? nd : disclosed.at(m.outcome());
  }
  bool OnPath(const Message& m) const { return Prob(m) > kOnPathThreshold; }
};

struct PosteriorRecord {
  Message message = Message::NonDisclosure();
  std::vector<double> probs;  // over types
  double mean = 0.0;          // E(v | m)
  double exp_loss = 0.0;      // EL, <= 0
  double wtp = 0.0;           // mean + b * EL
  bool on_path = false;
  double path_prob = 0.0;     // rho of the message
};

// Pr(m | v_i) for every message slot (row = type, column = slot). Outcomes
// below the disclosure threshold received by a certifier are folded into ND.
std::vector<std::vector<double>> MessageLikelihoods(
    const MarketParams& market, const ThresholdProfile& profile);

MessageDistribution MessageProbabilities(const MarketParams& market,
                                         const ThresholdProfile& profile);

// On-path messages in canonical order (ND first, then outcomes ascending).
std::vector<Message> MessageSpace(const MarketParams& market,
                                  const ThresholdProfile& profile);

// EL = sum_k probs_k * min(v_k - mean, 0).
double ExpectedLoss(std::span<const double> values,
                    std::span<const double> probs, double mean);

inline double WillingnessToPay(double mean, double exp_loss, double b) {
  return mean + b * exp_loss;
}

// Bayes posterior for an on-path message. Throws Error(kOffPathMessage).
PosteriorRecord Posterior(const MarketParams& market,
                          const ThresholdProfile& profile,
                          const Message& message);

// Posterior for an off-path message under the chosen policy. Off-path ND is
// always the prior. Throws Error(kOnPathMessage).
PosteriorRecord OffEquilibriumPosterior(const MarketParams& market,
                                        const ThresholdProfile& profile,
                                        const Message& message,
                                        OffEqPolicy policy);

// Posteriors for every message of a (market, profile) pair, built once and
// shared read-only afterwards.
class BeliefTable {
 public:
  BeliefTable(const MarketParams& market, const ThresholdProfile& profile,
              OffEqPolicy policy);
  BeliefTable(const MarketParams& market, const ThresholdProfile& profile)
      : BeliefTable(market, profile, DefaultOffEqPolicy(market.env())) {}

  const MarketParams& market() const { return market_; }
  const ThresholdProfile& profile() const { return profile_; }
  OffEqPolicy policy() const { return policy_; }
  const MessageDistribution& distribution() const { return distribution_; }
  const std::vector<std::vector<double>>& likelihoods() const {
    return likelihoods_;
  }
  const std::vector<Message>& on_path() const { return on_path_; }

  const PosteriorRecord& Record(const Message& m) const {
    return records_.at(m.slot());
  }
  double Wtp(const Message& m) const { return Record(m).wtp; }
  double Prob(const Message& m) const { return distribution_.Prob(m); }
  bool OnPath(const Message& m) const { return distribution_.OnPath(m); }

  // Message sent by a certifying seller who drew the given outcome.
  Message MessageFor(std::size_t outcome) const {
    return profile_.Discloses(outcome) ? Message::Disclosed(outcome)
                                       : Message::NonDisclosure();
  }

 private:
  MarketParams market_;
  ThresholdProfile profile_;
  OffEqPolicy policy_;
  std::vector<std::vector<double>> likelihoods_;
  MessageDistribution distribution_;
  std::vector<Message> on_path_;
  std::vector<PosteriorRecord> records_;  // indexed by slot
};

}  // namespace certmarket

#endif  // CERTMARKET_BELIEFS_HPP_
