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

#include "certmarket/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>
#include <type_traits>

#include "certmarket/equilibrium.hpp"
#include "certmarket/error.hpp"
#include "certmarket/pricing.hpp"
#include "certmarket/profit.hpp"

namespace certmarket {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::size_t kBlockSize = 256;

std::uint64_t Mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// SplitMix64 stream. Uniforms are built from the top 53 bits by hand so the
// draws do not depend on the standard library's distributions.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : state_(seed) {}
  std::uint64_t Next() {
    state_ += kGolden;
    return Mix(state_);
  }
  double Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }
  std::size_t Below(std::size_t n) {
    return static_cast<std::size_t>(Uniform() * static_cast<double>(n));
  }

 private:
  std::uint64_t state_;
};

std::size_t Draw(std::span<const double> probs, double u) {
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  // Rounding left u above the last partial sum: take the last positive entry.
  for (std::size_t i = probs.size(); i-- > 0;) {
    if (probs[i] > 0.0) return i;
  }
  return probs.size() - 1;
}

struct Decision {
  bool certify = false;
  bool disclose = false;
};

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool FollowsProfile(const ThresholdProfile& p, std::size_t type) {
  return p.Certifies(type);
}

bool WantsCertification(const SellerPolicy& policy, const BeliefTable& table,
                        std::size_t type) {
  const MarketParams& market = table.market();
  if (!market.certification_available()) return false;
  return std::visit(
      Overloaded{
          [&](const EquilibriumThreshold& p) {
            return FollowsProfile(p.profile.value_or(table.profile()), type);
          },
          [](const AlwaysCertifyDiscloseAll&) { return true; },
          [](const NeverCertify&) { return false; },
          [&](const FixedMarkup&) {
            return FollowsProfile(table.profile(), type);
          },
          [&](const CustomPolicy& p) {
            return p.certify ? p.certify(type, market) : false;
          },
      },
      policy);
}

bool WantsDisclosure(const SellerPolicy& policy, const BeliefTable& table,
                     std::size_t type, std::size_t outcome) {
  return std::visit(
      Overloaded{
          [&](const EquilibriumThreshold& p) {
            return p.profile.value_or(table.profile()).Discloses(outcome);
          },
          [](const AlwaysCertifyDiscloseAll&) { return true; },
          [](const NeverCertify&) { return false; },
          [&](const FixedMarkup&) {
            return table.profile().Discloses(outcome);
          },
          [&](const CustomPolicy& p) {
            return p.disclose ? p.disclose(type, outcome, table.market())
                              : true;
          },
      },
      policy);
}

double PolicyPrice(const SellerPolicy& policy, const BeliefTable& table,
                   std::size_t type, const Message& own,
                   const Message& opponent, double bertrand) {
  const double price = std::visit(
      Overloaded{
          [&](const FixedMarkup& p) {
            const double raw = bertrand + p.markup;
            return p.round_to_integer ? std::round(raw) : raw;
          },
          [&](const CustomPolicy& p) {
            return p.price ? p.price(type, own, opponent, table) : bertrand;
          },
          [&](const auto&) { return bertrand; },
      },
      policy);
  return std::max(price, 0.0);
}

struct Accumulator {
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void Add(double x) {
    n += 1.0;
    const double delta = x - mean;
    mean += delta / n;
    m2 += delta * (x - mean);
  }
  void Merge(const Accumulator& o) {
    if (o.n == 0.0) return;
    if (n == 0.0) {
      *this = o;
      return;
    }
    const double total = n + o.n;
    const double delta = o.mean - mean;
    mean += delta * o.n / total;
    m2 += o.m2 + delta * delta * n * o.n / total;
    n = total;
  }
  double StdError() const {
    if (n < 2.0) return 0.0;
    return std::sqrt(m2 / (n - 1.0) / n);
  }
};

struct CellStats {
  Accumulator seller_net;
  Accumulator seller_gross;
  Accumulator buyer;
  Accumulator welfare;
  std::uint64_t purchases = 0;
  std::uint64_t certifications = 0;
  std::vector<std::uint64_t> messages;

  void Add(const RoundRecord& r) {
    seller_net.Add(0.5 * (r.seller_net[0] + r.seller_net[1]));
    seller_gross.Add(0.5 * (r.seller_gross[0] + r.seller_gross[1]));
    buyer.Add(0.5 * (r.buyer_profit[0] + r.buyer_profit[1]));
    welfare.Add(0.25 * (r.seller_net[0] + r.seller_net[1] +
                        r.buyer_profit[0] + r.buyer_profit[1]));
    for (int s = 0; s < 2; ++s) {
      purchases += r.purchases[s] != BuyerChoice::kNone;
      certifications += r.certified[s];
      ++messages[r.messages[s].slot()];
    }
  }
  void Merge(const CellStats& o) {
    seller_net.Merge(o.seller_net);
    seller_gross.Merge(o.seller_gross);
    buyer.Merge(o.buyer);
    welfare.Merge(o.welfare);
    purchases += o.purchases;
    certifications += o.certifications;
    for (std::size_t i = 0; i < messages.size(); ++i) {
      messages[i] += o.messages[i];
    }
  }
};

}  // namespace

std::uint64_t RoundSeed(std::uint64_t master_seed, std::uint64_t replication,
                        std::uint64_t round) {
  std::uint64_t h = Mix(master_seed + kGolden);
  h = Mix(h ^ (replication + kGolden));
  return Mix(h ^ (round + 2 * kGolden));
}

RoundRecord SimulateRound(const RoundContext& context,
                          const std::array<SellerPolicy, 2>& policies,
                          std::uint64_t round_seed) {
  if (context.beliefs == nullptr) {
    throw Error(ErrorCode::kInvalidConfig, "round needs buyer beliefs");
  }
  const BeliefTable& table = *context.beliefs;
  const MarketParams& market = table.market();
  const QualitySupport& support = market.support();
  Stream stream(round_seed);
  // Fixed draw positions: two qualities, then two outcomes.
  const std::array<double, 4> u{stream.Uniform(), stream.Uniform(),
                                stream.Uniform(), stream.Uniform()};

  RoundRecord r;
  for (int s = 0; s < 2; ++s) {
    const std::size_t type = Draw(support.priors(), u[s]);
    r.qualities[s] = type;
    r.certified[s] = WantsCertification(policies[s], table, type);
    if (r.certified[s]) {
      const auto dist =
          CertOutcomeDistribution(support, market.alpha(), type);
      const std::size_t outcome = Draw(dist, u[2 + s]);
      r.outcomes[s] = outcome;
      if (WantsDisclosure(policies[s], table, type, outcome)) {
        r.messages[s] = Message::Disclosed(outcome);
      }
    }
    if (context.cheap_talk) {
      r.cheap_talk[s] = static_cast<int>(std::lround(support.value(type)));
    }
  }

  const std::array<double, 2> wtp{table.Wtp(r.messages[0]),
                                  table.Wtp(r.messages[1])};
  const SubgameResult game = BertrandSubgame(wtp[0], wtp[1], context.tie_tol);
  const std::array<double, 2> bertrand{game.price_i, game.price_j};
  for (int s = 0; s < 2; ++s) {
    r.prices[s] = PolicyPrice(policies[s], table, r.qualities[s],
                              r.messages[s], r.messages[1 - s], bertrand[s]);
  }

  // Both buyers share the same beliefs, so they make the same choice.
  const std::array<double, 2> surplus{wtp[0] - r.prices[0],
                                      wtp[1] - r.prices[1]};
  BuyerChoice choice;
  int pick;
  if (std::abs(surplus[0] - surplus[1]) <= context.tie_tol) {
    pick = wtp[1] > wtp[0] + context.tie_tol ? 1 : 0;
  } else {
    pick = surplus[1] > surplus[0] ? 1 : 0;
  }
  if (surplus[pick] < -context.tie_tol) {
    choice = BuyerChoice::kNone;
  } else {
    choice = pick == 0 ? BuyerChoice::kSellerI : BuyerChoice::kSellerJ;
  }
  r.purchases = {choice, choice};

  std::array<int, 2> sold{0, 0};
  for (int buyer = 0; buyer < 2; ++buyer) {
    if (r.purchases[buyer] == BuyerChoice::kNone) continue;
    const int s = r.purchases[buyer] == BuyerChoice::kSellerI ? 0 : 1;
    ++sold[s];
    r.buyer_profit[buyer] =
        context.unit_weight * (support.value(r.qualities[s]) - r.prices[s]);
  }
  for (int s = 0; s < 2; ++s) {
    r.seller_gross[s] = context.unit_weight * sold[s] * r.prices[s];
    r.seller_net[s] = r.seller_gross[s] - (r.certified[s] ? market.c() : 0.0);
  }
  return r;
}

ThresholdProfile ResolveCellProfile(const MarketParams& market,
                                    OffEqPolicy policy) {
  if (!market.certification_available()) return ThresholdProfile::Empty();
  // Candidates: nobody certifying, then every cert = disclose threshold.
  std::vector<EquilibriumReport> reports{
      VerifyThresholdEquilibrium(market, ThresholdProfile::Empty(), policy)};
  for (std::size_t l = 0; l < market.size(); ++l) {
    reports.push_back(
        VerifyThresholdEquilibrium(market, ThresholdProfile::Same(l), policy));
  }
  const EquilibriumReport* best = nullptr;
  for (const EquilibriumReport& r : reports) {
    if (!r.is_equilibrium || r.profile.IsEmpty()) continue;
    if (!best || r.ex_ante_net > best->ex_ante_net + kTolerance) best = &r;
  }
  if (best) return best->profile;
  if (reports.front().is_equilibrium) return ThresholdProfile::Empty();
  // No pure threshold equilibrium on this grid: play the profile where the
  // most tempted type gains least from deviating.
  best = &reports.front();
  for (const EquilibriumReport& r : reports) {
    if (r.max_violation < best->max_violation - kTolerance) best = &r;
  }
  return best->profile;
}

std::size_t ResolveThreadCount(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CERTMARKET_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<std::size_t>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

std::vector<TreatmentMetrics> RunTreatment(const TreatmentConfig& config) {
  std::vector<double> c_values = config.c_values;
  std::vector<double> alpha_values = config.alpha_values;
  if (config.env == Environment::kNoCert && c_values.empty()) {
    c_values = {0.0};
  }
  if (config.env != Environment::kNoisy && alpha_values.empty()) {
    alpha_values = {config.env == Environment::kAccurate ? 1.0 : 0.0};
  }
  if (c_values.empty() || alpha_values.empty()) {
    throw Error(ErrorCode::kEmptyGrid, "treatment needs c and alpha values");
  }
  if (config.rounds == 0 || config.replications == 0) {
    throw Error(ErrorCode::kInvalidConfig,
                "rounds and replications must be positive");
  }
  const std::size_t cells = c_values.size() * alpha_values.size();
  if (config.rounds % cells != 0) {
    throw Error(ErrorCode::kUnbalancedRounds,
                std::to_string(config.rounds) + " rounds over " +
                    std::to_string(cells) + " cells");
  }
  if (!(config.unit_weight > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "unit_weight must be positive");
  }

  const OffEqPolicy requested =
      config.off_eq.value_or(DefaultOffEqPolicy(config.env));
  std::vector<MarketParams> markets;
  std::vector<BeliefTable> tables;
  markets.reserve(cells);
  tables.reserve(cells);
  for (double c : c_values) {
    for (double alpha : alpha_values) {
      RawMarket raw;
      raw.values.assign(config.support.values().begin(),
                        config.support.values().end());
      raw.priors.assign(config.support.priors().begin(),
                        config.support.priors().end());
      raw.b = config.b;
      raw.env = config.env;
      if (config.env != Environment::kNoCert || c > 0.0) raw.c = c;
      if (config.env != Environment::kAccurate) raw.alpha = alpha;
      markets.push_back(ValidateMarket(raw));
      const OffEqPolicy policy = EffectiveOffEqPolicy(config.env, requested);
      const ThresholdProfile profile = config.belief_profile.value_or(
          ResolveCellProfile(markets.back(), policy));
      ValidateProfile(markets.back(), profile);
      tables.emplace_back(markets.back(), profile, policy);
    }
  }
  std::vector<RoundContext> contexts(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    contexts[i].beliefs = &tables[i];
    contexts[i].unit_weight = config.unit_weight;
    contexts[i].cheap_talk = config.cheap_talk;
  }

  const std::size_t slots = config.support.size() + 1;
  const std::size_t blocks =
      (config.replications + kBlockSize - 1) / kBlockSize;
  std::vector<std::vector<CellStats>> block_stats(blocks);
  auto run_block = [&](std::size_t b) {
    std::vector<CellStats> stats(cells);
    for (auto& s : stats) s.messages.assign(slots, 0);
    std::vector<std::size_t> schedule(config.rounds);
    const std::size_t end =
        std::min(config.replications, (b + 1) * kBlockSize);
    for (std::size_t rep = b * kBlockSize; rep < end; ++rep) {
      for (std::size_t t = 0; t < config.rounds; ++t) schedule[t] = t % cells;
      // Balanced visitation, shuffled per replication.
      Stream shuffle(RoundSeed(config.seed, rep,
                               std::numeric_limits<std::uint64_t>::max()));
      for (std::size_t t = config.rounds; t > 1; --t) {
        std::swap(schedule[t - 1], schedule[shuffle.Below(t)]);
      }
      for (std::size_t t = 0; t < config.rounds; ++t) {
        const std::size_t cell = schedule[t];
        stats[cell].Add(SimulateRound(contexts[cell], config.policies,
                                      RoundSeed(config.seed, rep, t)));
      }
    }
    block_stats[b] = std::move(stats);
  };

  const std::size_t threads =
      std::min(ResolveThreadCount(config.threads), blocks);
  if (threads <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t b = next++; b < blocks; b = next++) run_block(b);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Merge in block order so the result does not depend on scheduling.
  std::vector<CellStats> total(cells);
  for (auto& s : total) s.messages.assign(slots, 0);
  for (const auto& stats : block_stats) {
    for (std::size_t i = 0; i < cells; ++i) total[i].Merge(stats[i]);
  }

  std::vector<TreatmentMetrics> rows;
  rows.reserve(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const CellStats& s = total[i];
    TreatmentMetrics m;
    m.name = config.name;
    m.lo = config.support.values().front();
    m.hi = config.support.values().back();
    m.env = config.env;
    m.c = markets[i].c();
    m.alpha = markets[i].alpha();
    m.profile = tables[i].profile();
    m.replications = config.replications;
    m.observations = static_cast<std::size_t>(s.seller_net.n);
    m.seed = config.seed;
    m.seller_net_mean = s.seller_net.mean;
    m.seller_net_se = s.seller_net.StdError();
    m.seller_gross_mean = s.seller_gross.mean;
    m.buyer_mean = s.buyer.mean;
    m.buyer_se = s.buyer.StdError();
    m.welfare_mean = s.welfare.mean;
    const double denom = m.seller_net_mean + m.buyer_mean;
    m.profit_share = denom > 0.0 ? m.seller_net_mean / denom
                                 : std::numeric_limits<double>::quiet_NaN();
    const double sides = 2.0 * s.seller_net.n;
    m.purchase_rate = sides > 0.0 ? s.purchases / sides : 0.0;
    m.cert_rate = sides > 0.0 ? s.certifications / sides : 0.0;
    m.message_counts = s.messages;
    rows.push_back(std::move(m));
  }
  return rows;
}

}  // namespace certmarket
