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

#include <doctest.h>

#include <cmath>

#include "certmarket/equilibrium.hpp"
#include "certmarket/error.hpp"
#include "certmarket/profit.hpp"
#include "support/generators.hpp"

using namespace certmarket;

namespace {

const testgen::SupportData kTwo{{1.0, 3.0}, {1.0 / 3.0, 2.0 / 3.0}};

MarketParams Example(double alpha, double b = 1.0, double c = 0.5) {
  if (alpha == 1.0) {
    return testgen::MakeMarket(kTwo, b, c, 1.0, Environment::kAccurate);
  }
  return testgen::MakeMarket(kTwo, b, c, alpha);
}

MarketParams Uniform(int n, double c, Environment env, double alpha = 1.0) {
  testgen::SupportData s;
  for (int i = 1; i <= n; ++i) {
    s.values.push_back(i);
    s.priors.push_back(1.0 / n);
  }
  return testgen::MakeMarket(s, 0.0, c, alpha, env);
}

const ThresholdProfile kTop = ThresholdProfile::Same(1);
const OffEqPolicy kPm = OffEqPolicy::kPointMassAtOutcome;

}  // namespace

TEST_CASE("two-type profile at half precision is an equilibrium") {
  const EquilibriumReport r = VerifyThresholdEquilibrium(Example(0.5), kTop, kPm);
  CHECK(r.is_equilibrium);
  CHECK(r.wtp_order_ok);
  CHECK(r.cert_gaps[1] >= 0.0);
  CHECK(r.cert_gaps[0] < 0.0);
  CHECK(std::abs(r.ex_ante_net - 7.0 / 54.0) < 1e-15);
}

TEST_CASE("fee above the accurate gain breaks the profile") {
  const EquilibriumReport r =
      VerifyThresholdEquilibrium(Example(1.0, 1.0, 0.7), kTop, kPm);
  CHECK_FALSE(r.is_equilibrium);
  CHECK(std::abs(r.cert_gaps[1] - (2.0 / 3.0 - 0.7)) < 1e-12);
}

TEST_CASE("no certification is trivially an equilibrium") {
  RawMarket raw;
  raw.values = {1.0, 2.0, 3.0};
  raw.priors = {0.2, 0.3, 0.5};
  raw.env = Environment::kNoCert;
  const MarketParams m = ValidateMarket(raw);
  const auto r = VerifyThresholdEquilibrium(m, ThresholdProfile::Empty(), kPm);
  CHECK(r.is_equilibrium);
  CHECK(r.ex_ante_net == 0.0);
  const auto all = EnumerateThresholdEquilibria(m);
  REQUIRE(all.size() == 1);
  CHECK(all[0].profile.IsEmpty());
}

TEST_CASE("enumeration matches the two-type region") {
  int compared = 0;
  for (int ci = 0; ci <= 20; ++ci) {
    for (int ai = 0; ai <= 6; ++ai) {
      const double c = 0.45 + 0.01 * ci;
      const double alpha = 0.3 + 0.1 * ai;
      const MarketParams m = Example(alpha, 1.0, c);
      const TwoTypeRegion region = TwoTypeExistence(m);
      if (std::abs(region.normalized_fee - region.noisy_low) <= 1e-6 ||
          std::abs(region.normalized_fee - region.noisy_high) <= 1e-6) {
        continue;
      }
      const auto reports = EnumerateThresholdEquilibria(m);
      REQUIRE(reports.size() == 3);
      CHECK(reports[2].profile == kTop);
      CHECK(reports[2].is_equilibrium == region.in_noisy_region);
      ++compared;
    }
  }
  CHECK(compared > 100);
}

TEST_CASE("prohibitive fee leaves only the empty profile") {
  testgen::Gen g(5001);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = g.Int(1, 5);
    const auto s = testgen::RandomSupport(g, n);
    const double c = s.values.back() + g.Uniform(0.01, 2.0);
    const MarketParams m = testgen::MakeMarket(s, g.Uniform(0, 2), c, g.Uniform(0, 1));
    for (const auto& r : EnumerateThresholdEquilibria(m)) {
      CHECK(r.is_equilibrium == r.profile.IsEmpty());
    }
  }
}

TEST_CASE("accurate certification has one certifying equilibrium") {
  const MarketParams m = Uniform(3, 0.3, Environment::kAccurate);
  CHECK(AccurateUniqueEquilibrium(m) == std::optional<std::size_t>(1));
  const auto reports = EnumerateThresholdEquilibria(m);
  for (const auto& r : reports) {
    CHECK(r.is_equilibrium == (r.profile == ThresholdProfile::Same(1)));
  }

  CHECK_FALSE(AccurateUniqueEquilibrium(Uniform(3, 1.01, Environment::kAccurate)));
  CHECK(AccurateUniqueEquilibrium(Example(1.0)) == std::optional<std::size_t>(1));
}

// The characterization assumes risk-neutral buyers.
TEST_CASE("uniqueness under accurate certification on random markets") {
  testgen::Gen g(5002);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = g.Int(1, 6);
    const auto s = testgen::RandomSupport(g, n);
    const MarketParams m = testgen::MakeMarket(s, 0.0, g.Uniform(0.01, 3.0),
                                               1.0, Environment::kAccurate);
    const auto level = AccurateUniqueEquilibrium(m);
    int certifying = 0;
    for (const auto& r : EnumerateThresholdEquilibria(m)) {
      if (!r.is_equilibrium) continue;
      if (r.profile.IsEmpty()) {
        CHECK_FALSE(level);
      } else {
        ++certifying;
        CHECK(r.profile == ThresholdProfile::Same(*level));
      }
    }
    CHECK(certifying == (level ? 1 : 0));
  }
}

TEST_CASE("two-type region values") {
  const TwoTypeRegion acc = TwoTypeExistence(Example(1.0));
  CHECK(std::abs(acc.normalized_fee - 0.75) < 1e-15);
  CHECK(acc.in_accurate_region);

  const TwoTypeRegion half = TwoTypeExistence(Example(0.5));
  CHECK(std::abs(half.noisy_low - 5.0 / 12.0) < 1e-15);
  CHECK(std::abs(half.noisy_high - 25.0 / 24.0) < 1e-15);
  CHECK(half.in_noisy_region);

  const TwoTypeRegion zero = TwoTypeExistence(Example(0.0));
  CHECK(zero.noisy_low == zero.noisy_high);
  CHECK_FALSE(zero.in_noisy_region);

  CHECK_THROWS_AS(TwoTypeExistence(Uniform(3, 0.3, Environment::kAccurate)), Error);
}

TEST_CASE("zero precision has no certifying two-type equilibrium") {
  for (double c : {0.3, 0.45, 0.5, 0.6, 0.66}) {
    const auto r = VerifyThresholdEquilibrium(Example(0.0, 1.0, c), kTop, kPm);
    CHECK_FALSE(r.is_equilibrium);
    CHECK(std::abs(r.cert_gaps[0] - r.cert_gaps[1]) < 1e-12);
  }
}

TEST_CASE("noisy versus accurate in the two-type example") {
  const NoisyVsAccurate half = TwoTypeNoisyVsAccurate(Example(0.5));
  CHECK(std::abs(half.lhs - 4.0 / 3.0) < 1e-15);
  CHECK(std::abs(half.rhs - 1.2) < 1e-15);
  CHECK(half.noisy_more_profitable);
  CHECK(std::abs(half.profit_gap - 1.0 / 54.0) < 1e-15);

  const NoisyVsAccurate quarter = TwoTypeNoisyVsAccurate(Example(0.25));
  CHECK(std::abs(quarter.profit_gap) < 1e-12);
  CHECK(std::abs(quarter.lhs - quarter.rhs) < 1e-12);

  testgen::Gen g(5003);
  for (int trial = 0; trial < 100; ++trial) {
    const double q_h = g.Uniform(0.05, 0.95);
    const testgen::SupportData s{{1.0, 1.0 + g.Uniform(0.1, 5)}, {1 - q_h, q_h}};
    const auto r = TwoTypeNoisyVsAccurate(testgen::MakeMarket(s, 0.0, 0.1, g.Uniform(0, 0.999)));
    CHECK_FALSE(r.noisy_more_profitable);
  }

  CHECK_THROWS_AS(TwoTypeNoisyVsAccurate(Example(1.0)), Error);
  CHECK_THROWS_AS(TwoTypeNoisyVsAccurate(Uniform(3, 0.3, Environment::kNoisy, 0.5)),
                  Error);
}

TEST_CASE("support bound") {
  const MarketParams m = Uniform(5, 0.3, Environment::kNoisy, 0.5);
  EnumerateOptions o;
  o.max_support = 4;
  CHECK_THROWS_AS(EnumerateThresholdEquilibria(m, o), Error);
}

TEST_CASE("split threshold scan") {
  EnumerateOptions o;
  o.split_thresholds = true;
  const auto reports = EnumerateThresholdEquilibria(Example(0.5), o);
  // Empty, then for each cert level: never disclose and every disclose level.
  CHECK(reports.size() == 1 + 2 * 3);
  CHECK(reports[1].profile == ThresholdProfile{0, std::nullopt});
}

TEST_CASE("verification agrees with the deviation oracle") {
  testgen::Gen g(5004);
  const OffEqPolicy policies[] = {OffEqPolicy::kPointMassAtOutcome,
                                  OffEqPolicy::kBayesGivenCertSet,
                                  OffEqPolicy::kWorstType};
  const oracle::OffPath oracle_policies[] = {oracle::OffPath::kPointMass,
                                             oracle::OffPath::kBayes,
                                             oracle::OffPath::kWorst};
  int compared = 0, equilibria = 0;
  for (int trial = 0; trial < 1500; ++trial) {
    const int n = g.Int(1, 5);
    const auto s = testgen::RandomSupport(g, n);
    const double alpha = trial % 5 == 0 ? 1.0 : g.Uniform(0.0, 1.0);
    const MarketParams m = testgen::MakeMarket(
        s, g.Uniform(0, 2), g.Uniform(0.01, 1.5), alpha,
        alpha == 1.0 ? Environment::kAccurate : Environment::kNoisy);
    ThresholdProfile p;
    if (g.Int(0, 5) > 0) {
      p.cert = g.Int(0, n - 1);
      if (g.Int(0, 3) > 0) {
        p.disclose = p.cert;
      } else if (g.Coin()) {
        p.disclose = g.Int(0, n - 1);
      }
    }
    const int which = alpha == 1.0 ? 0 : g.Int(0, 2);
    const auto r = VerifyThresholdEquilibrium(m, p, policies[which]);
    const auto v = oracle::CheckEquilibrium(testgen::ToOracle(m), testgen::ToOracle(p),
                                            oracle_policies[which]);
    if (v.margin < 1e-7) continue;
    ++compared;
    equilibria += v.equilibrium;
    CHECK(r.is_equilibrium == v.equilibrium);
    if (r.is_equilibrium) {
      for (int i = 0; i < n; ++i) {
        if (p.Certifies(i)) CHECK(r.cert_gaps[i] >= -1e-9);
        else CHECK(r.cert_gaps[i] < -1e-9);
      }
    }
  }
  CHECK(compared > 1000);
  CHECK(equilibria > 50);
}
