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

#include "certmarket/market.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "certmarket/error.hpp"

namespace certmarket {

QualitySupport QualitySupport::Create(std::vector<double> values,
                                      std::vector<double> priors) {
  if (values.empty()) {
    throw Error(ErrorCode::kNonAscendingSupport, "support is empty");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] <= 0.0) {
      throw Error(ErrorCode::kNonAscendingSupport,
                  "quality levels must be positive and finite");
    }
    if (i > 0 && !(values[i] > values[i - 1])) {
      throw Error(ErrorCode::kNonAscendingSupport,
                  "quality levels must be strictly ascending (index " +
                      std::to_string(i + 1) + ")");
    }
  }
  if (priors.size() != values.size()) {
    throw Error(ErrorCode::kInvalidProbabilityVector,
                "expected " + std::to_string(values.size()) + " priors, got " +
                    std::to_string(priors.size()));
  }
  double sum = 0.0;
  for (double q : priors) {
    if (!std::isfinite(q) || q <= 0.0 || q > 1.0) {
      throw Error(ErrorCode::kInvalidProbabilityVector,
                  "each prior must lie in (0, 1]");
    }
    sum += q;
  }
  if (std::abs(sum - 1.0) > kPriorSumTolerance) {
    throw Error(ErrorCode::kInvalidProbabilityVector,
                "priors sum to " + std::to_string(sum));
  }
  for (double& q : priors) q /= sum;
  return QualitySupport(std::move(values), std::move(priors));
}

double QualitySupport::Mean() const {
  return std::inner_product(values_.begin(), values_.end(), priors_.begin(),
                            0.0);
}

QualitySupport UniformSupport(long lo, long hi) {
  if (lo <= 0 || lo > hi) {
    throw Error(ErrorCode::kInvalidRange,
                "need 0 < lo <= hi, got lo=" + std::to_string(lo) +
                    " hi=" + std::to_string(hi));
  }
  const auto n = static_cast<std::size_t>(hi - lo + 1);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = static_cast<double>(lo + static_cast<long>(i));
  }
  return QualitySupport::Create(std::move(values),
                                std::vector<double>(n, 1.0 / n));
}

std::string_view EnvironmentName(Environment env) {
  switch (env) {
    case Environment::kNoCert: return "nocert";
    case Environment::kAccurate: return "accurate";
    case Environment::kNoisy: return "noisy";
  }
  return "unknown";
}

std::optional<Environment> ParseEnvironment(std::string_view name) {
  if (name == "nocert" || name == "D1") return Environment::kNoCert;
  if (name == "accurate" || name == "D2") return Environment::kAccurate;
  if (name == "noisy" || name == "D3") return Environment::kNoisy;
  return std::nullopt;
}

MarketParams ValidateMarket(const RawMarket& raw) {
  QualitySupport support = QualitySupport::Create(raw.values, raw.priors);
  if (!std::isfinite(raw.b) || raw.b < 0.0) {
    throw Error(ErrorCode::kNegativeLossAversion,
                "loss aversion b must be >= 0");
  }
  double c = 0.0;
  if (raw.env == Environment::kNoCert) {
    if (raw.c) {
      if (!std::isfinite(*raw.c) || *raw.c <= 0.0) {
        throw Error(ErrorCode::kNonPositiveCost, "fee c must be > 0");
      }
      c = *raw.c;
    }
  } else {
    if (!raw.c || !std::isfinite(*raw.c) || *raw.c <= 0.0) {
      throw Error(ErrorCode::kNonPositiveCost, "fee c must be > 0");
    }
    c = *raw.c;
  }

  double alpha = 0.0;
  switch (raw.env) {
    case Environment::kAccurate:
      if (raw.alpha && *raw.alpha != 1.0) {
        throw Error(ErrorCode::kPrecisionOutOfRange,
                    "accurate certification requires alpha = 1");
      }
      alpha = 1.0;
      break;
    case Environment::kNoisy:
      if (!raw.alpha) {
        throw Error(ErrorCode::kPrecisionOutOfRange,
                    "noisy certification needs a precision alpha");
      }
      [[fallthrough]];
    case Environment::kNoCert:
      if (raw.alpha) {
        if (!std::isfinite(*raw.alpha) || *raw.alpha < 0.0 ||
            *raw.alpha > 1.0) {
          throw Error(ErrorCode::kPrecisionOutOfRange,
                      "alpha must lie in [0, 1]");
        }
        alpha = *raw.alpha;
      }
      break;
  }
  return MarketParams(std::move(support), raw.b, c, alpha, raw.env);
}

RawMarket MarketParams::ToRaw() const {
  RawMarket raw;
  raw.values.assign(support_.values().begin(), support_.values().end());
  raw.priors.assign(support_.priors().begin(), support_.priors().end());
  raw.b = b_;
  if (env_ != Environment::kNoCert || c_ > 0.0) raw.c = c_;
  raw.alpha = alpha_;
  raw.env = env_;
  return raw;
}

MarketParams MarketParams::WithAlpha(double alpha) const {
  RawMarket raw = ToRaw();
  raw.alpha = alpha;
  return ValidateMarket(raw);
}

MarketParams MarketParams::WithB(double b) const {
  RawMarket raw = ToRaw();
  raw.b = b;
  return ValidateMarket(raw);
}

MarketParams MarketParams::WithC(double c) const {
  RawMarket raw = ToRaw();
  raw.c = c;
  return ValidateMarket(raw);
}

MarketParams MarketParams::WithEnv(Environment env,
                                   std::optional<double> alpha) const {
  RawMarket raw = ToRaw();
  raw.env = env;
  raw.alpha = env == Environment::kAccurate ? std::optional<double>() : alpha;
  return ValidateMarket(raw);
}

void ValidateProfile(const MarketParams& market,
                     const ThresholdProfile& profile) {
  const std::size_t n = market.size();
  if (!profile.cert && profile.disclose) {
    throw Error(ErrorCode::kInvalidProfile,
                "a disclosure threshold needs a certification threshold");
  }
  if (profile.cert && !market.certification_available()) {
    throw Error(ErrorCode::kInvalidProfile,
                "certification is unavailable in this environment");
  }
  if ((profile.cert && *profile.cert >= n) ||
      (profile.disclose && *profile.disclose >= n)) {
    throw Error(ErrorCode::kInvalidProfile, "threshold outside the support");
  }
}

std::vector<double> CertOutcomeDistribution(const QualitySupport& support,
                                            double alpha,
                                            std::size_t true_index) {
  if (true_index >= support.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "type index " + std::to_string(true_index) +
                    " outside support of size " +
                    std::to_string(support.size()));
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::kPrecisionOutOfRange, "alpha must lie in [0, 1]");
  }
  std::vector<double> dist(support.size());
  for (std::size_t j = 0; j < support.size(); ++j) {
    dist[j] = (1.0 - alpha) * support.prior(j);
  }
  dist[true_index] += alpha;
  return dist;
}

}  // namespace certmarket
