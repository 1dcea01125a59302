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

// Domain types for a duopoly where each seller may buy a noisy quality
// certificate. Quality levels are indexed 0..n-1 in ascending order; the
// CLI and CSV outputs report them 1-based.

#ifndef CERTMARKET_MARKET_HPP_
#define CERTMARKET_MARKET_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace certmarket {

// Absolute tolerance for floating point equality checks across the engine.
inline constexpr double kTolerance = 1e-9;
// Priors may be off by this much before renormalization.
inline constexpr double kPriorSumTolerance = 1e-9;

// Ordered quality levels v_1 < ... < v_n with prior probabilities.
class QualitySupport {
 public:
  // Throws Error(kNonAscendingSupport | kInvalidProbabilityVector).
  static QualitySupport Create(std::vector<double> values,
                               std::vector<double> priors);

  std::span<const double> values() const { return values_; }
  std::span<const double> priors() const { return priors_; }
  std::size_t size() const { return values_.size(); }
  double value(std::size_t i) const { return values_.at(i); }
  double prior(std::size_t i) const { return priors_.at(i); }
  // Ev = sum_i q_i v_i.
  double Mean() const;

  friend bool operator==(const QualitySupport&,
                         const QualitySupport&) = default;

 private:
  QualitySupport(std::vector<double> values, std::vector<double> priors)
      : values_(std::move(values)), priors_(std::move(priors)) {}

  std::vector<double> values_;
  std::vector<double> priors_;
};

// Discrete uniform support {lo, lo+1, ..., hi}.
QualitySupport UniformSupport(long lo, long hi);

enum class Environment { kNoCert, kAccurate, kNoisy };

std::string_view EnvironmentName(Environment env);
// Accepts "nocert", "accurate", "noisy" (also the treatment labels D1/D2/D3).
std::optional<Environment> ParseEnvironment(std::string_view name);

// Unvalidated market description, as read from a config file.
struct RawMarket {
  std::vector<double> values;
  std::vector<double> priors;
  double b = 0.0;
  std::optional<double> c;
  std::optional<double> alpha;
  Environment env = Environment::kNoisy;
};

// Validated market: support, loss aversion b, certification fee c and
// precision alpha. Immutable; obtain through ValidateMarket or the With*
// helpers, which re-run validation.
class MarketParams {
 public:
  const QualitySupport& support() const { return support_; }
  double b() const { return b_; }
  // Certification fee. Zero only in the no-certification environment.
  double c() const { return c_; }
  double alpha() const { return alpha_; }
  Environment env() const { return env_; }
  bool certification_available() const {
    return env_ != Environment::kNoCert;
  }
  std::size_t size() const { return support_.size(); }

  MarketParams WithAlpha(double alpha) const;
  MarketParams WithB(double b) const;
  MarketParams WithC(double c) const;
  MarketParams WithEnv(Environment env, std::optional<double> alpha) const;

  RawMarket ToRaw() const;

 private:
  friend MarketParams ValidateMarket(const RawMarket& raw);
  MarketParams(QualitySupport support, double b, double c, double alpha,
               Environment env)
      : support_(std::move(support)), b_(b), c_(c), alpha_(alpha), env_(env) {}

  QualitySupport support_;
  double b_;
  double c_;
  double alpha_;
  Environment env_;
};

// Rules:
//  - values strictly ascending and positive, priors in (0,1) summing to 1
//    within kPriorSumTolerance (renormalized afterwards);
//  - b >= 0;
//  - c > 0 whenever certification is available; NoCert stores c = 0 when
//    no fee is given;
//  - Accurate forces alpha = 1 (an explicit alpha != 1 is rejected);
//    Noisy requires alpha in [0, 1]; NoCert ignores alpha.
MarketParams ValidateMarket(const RawMarket& raw);

// Certification and disclosure thresholds. Types with index >= cert certify;
// outcomes with index >= disclose are disclosed. An absent disclose index
// with a present cert index means certifiers never disclose.
struct ThresholdProfile {
  std::optional<std::size_t> cert;
  std::optional<std::size_t> disclose;

  static ThresholdProfile Empty() { return {}; }
  static ThresholdProfile Same(std::size_t level) { return {level, level}; }

  bool Certifies(std::size_t type) const { return cert && type >= *cert; }
  bool Discloses(std::size_t outcome) const {
    return disclose && outcome >= *disclose;
  }
  bool IsEmpty() const { return !cert; }

  friend bool operator==(const ThresholdProfile&,
                         const ThresholdProfile&) = default;
};

// Throws Error(kInvalidProfile) if the profile does not fit the market.
void ValidateProfile(const MarketParams& market,
                     const ThresholdProfile& profile);

// Pr(s = v_j | v = v_true) for every outcome j:
//   alpha + (1 - alpha) q_j when j == true_index, (1 - alpha) q_j otherwise.
std::vector<double> CertOutcomeDistribution(const QualitySupport& support,
                                            double alpha,
                                            std::size_t true_index);

}  // namespace certmarket

#endif  // CERTMARKET_MARKET_HPP_
