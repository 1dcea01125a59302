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

// Seeded simulation of the lab market: two sellers and two buyers per group.
// Each round draws both qualities, lets the sellers certify and disclose,
// prices the offers and lets the buyers choose.

#ifndef CERTMARKET_MONTECARLO_HPP_
#define CERTMARKET_MONTECARLO_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "certmarket/beliefs.hpp"
#include "certmarket/market.hpp"

namespace certmarket {

// Follows a threshold profile and prices at the Bertrand equilibrium. With no
// profile the cell's equilibrium profile is used (see ResolveCellProfile).
struct EquilibriumThreshold {
  std::optional<ThresholdProfile> profile;
};
struct AlwaysCertifyDiscloseAll {};
struct NeverCertify {};
// Certifies and discloses like the buyers' belief profile, then adds a
// fixed markup to the Bertrand price (floored at 0, optionally rounded).
struct FixedMarkup {
  double markup = 0.0;
  bool round_to_integer = false;
};
struct CustomPolicy {
  std::function<bool(std::size_t type, const MarketParams&)> certify;
  std::function<bool(std::size_t type, std::size_t outcome,
                     const MarketParams&)>
      disclose;
  // Price given own and opponent messages and the buyers' beliefs.
  std::function<double(std::size_t type, const Message& own,
                       const Message& opponent, const BeliefTable&)>
      price;
};

using SellerPolicy = std::variant<EquilibriumThreshold, AlwaysCertifyDiscloseAll,
                                  NeverCertify, FixedMarkup, CustomPolicy>;

enum class BuyerChoice { kSellerI, kSellerJ, kNone };

struct RoundRecord {
  std::array<std::size_t, 2> qualities{};
  std::array<bool, 2> certified{};
  std::array<std::optional<std::size_t>, 2> outcomes{};
  std::array<Message, 2> messages{Message::NonDisclosure(),
                                  Message::NonDisclosure()};
  // Carried through untouched; never enters beliefs or prices.
  std::array<std::optional<int>, 2> cheap_talk{};
  std::array<double, 2> prices{};
  std::array<BuyerChoice, 2> purchases{BuyerChoice::kNone, BuyerChoice::kNone};
  std::array<double, 2> seller_net{};
  std::array<double, 2> seller_gross{};
  std::array<double, 2> buyer_profit{};

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

// Everything a round needs besides the seed.
struct RoundContext {
  const BeliefTable* beliefs = nullptr;  // buyers' beliefs for this cell
  // Revenue and buyer surplus per unit sold. 0.5 treats the two buyers as
  // halves of a unit mass; 1.0 reproduces the lab's raw accounting.
  double unit_weight = 0.5;
  bool cheap_talk = false;
  double tie_tol = kTolerance;
};

// Deterministic in round_seed. Buyers buy the option with the largest
// surplus at the engine's WTP when that surplus is >= 0; equal surpluses go
// to the seller with the higher WTP, then to seller I.
RoundRecord SimulateRound(const RoundContext& context,
                          const std::array<SellerPolicy, 2>& policies,
                          std::uint64_t round_seed);

// Per-round stream seed as a pure function of its coordinates.
std::uint64_t RoundSeed(std::uint64_t master_seed, std::uint64_t replication,
                        std::uint64_t round);

struct TreatmentConfig {
  std::string name = "treatment";
  QualitySupport support = QualitySupport::Create({1.0}, {1.0});
  Environment env = Environment::kNoisy;
  double b = 0.0;
  std::vector<double> c_values;
  std::vector<double> alpha_values;
  std::size_t rounds = 1;
  std::size_t replications = 1;
  std::uint64_t seed = 0;
  std::array<SellerPolicy, 2> policies{EquilibriumThreshold{},
                                       EquilibriumThreshold{}};
  // Profile that shapes buyers' beliefs; defaults to the cell equilibrium.
  std::optional<ThresholdProfile> belief_profile;
  std::optional<OffEqPolicy> off_eq;
  double unit_weight = 0.5;
  bool cheap_talk = false;
  // 0 = CERTMARKET_THREADS or the hardware concurrency.
  std::size_t threads = 0;
};

struct TreatmentMetrics {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  Environment env = Environment::kNoisy;
  double c = 0.0;
  double alpha = 0.0;
  ThresholdProfile profile;
  std::size_t replications = 0;
  std::size_t observations = 0;  // rounds simulated in this cell
  std::uint64_t seed = 0;
  double seller_net_mean = 0.0;  // per seller per round
  double seller_net_se = 0.0;
  double seller_gross_mean = 0.0;
  double buyer_mean = 0.0;  // per buyer per round
  double buyer_se = 0.0;
  double welfare_mean = 0.0;  // mean profit over the four group members
  double profit_share = 0.0;  // NaN when total profit is not positive
  double purchase_rate = 0.0;
  double cert_rate = 0.0;
  // Messages sent, indexed by Message::slot(); two per round.
  std::vector<std::uint64_t> message_counts;
};

// Certification profile sellers play in a cell when no profile is given: the
// most profitable verified cert = disclose equilibrium with certification,
// lowest threshold on ties; else nobody certifying if that is an equilibrium.
// Loss-averse buyers can leave a discrete support with no threshold
// equilibrium at all; the profile with the smallest max_violation is used
// then. Under accurate certification with risk-neutral buyers the result is
// the unique equilibrium at v_m.
ThresholdProfile ResolveCellProfile(const MarketParams& market,
                                    OffEqPolicy policy);

// One metrics row per (c, alpha) cell in c-major order. Every replication
// visits each cell rounds / cells times. Throws Error(kEmptyGrid) or
// Error(kUnbalancedRounds).
std::vector<TreatmentMetrics> RunTreatment(const TreatmentConfig& config);

// Threads to use: the explicit request, else CERTMARKET_THREADS, else the
// hardware concurrency.
std::size_t ResolveThreadCount(std::size_t requested);

}  // namespace certmarket

#endif  // CERTMARKET_MONTECARLO_HPP_
