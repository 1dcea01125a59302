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

#include "certmarket/beliefs.hpp"
#include "certmarket/error.hpp"
#include "support/generators.hpp"

using namespace certmarket;

namespace {

MarketParams Example(double alpha, double b = 1.0) {
  return testgen::MakeMarket({{1.0, 3.0}, {1.0 / 3.0, 2.0 / 3.0}}, b, 0.5,
                             alpha);
}

MarketParams Uniform(int n, double alpha, double b = 0.0, double c = 0.3,
                     Environment env = Environment::kNoisy) {
  testgen::SupportData s;
  for (int i = 1; i <= n; ++i) {
    s.values.push_back(i);
    s.priors.push_back(1.0 / n);
  }
  return testgen::MakeMarket(s, b, c, alpha, env);
}

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvariantViolation;
}

}  // namespace

TEST_CASE("message names and slots") {
  CHECK(Message::NonDisclosure().ToString() == "ND");
  CHECK(Message::Disclosed(1).ToString() == "s2");
  CHECK(Message::Disclosed(1).slot() == 2);
  CHECK(Message::FromSlot(0).is_nd());
  CHECK(Message::NonDisclosure() < Message::Disclosed(0));
}

TEST_CASE("message space") {
  testgen::SupportData s{{1.0, 3.0}, {1.0 / 3.0, 2.0 / 3.0}};
  RawMarket raw;
  raw.values = s.values;
  raw.priors = s.priors;
  raw.env = Environment::kNoCert;
  const auto nocert = MessageSpace(ValidateMarket(raw), ThresholdProfile::Empty());
  REQUIRE(nocert.size() == 1);
  CHECK(nocert[0].is_nd());

  const auto ex = MessageSpace(Example(0.5), ThresholdProfile::Same(1));
  REQUIRE(ex.size() == 2);
  CHECK(ex[0].is_nd());
  CHECK(ex[1] == Message::Disclosed(1));

  const MarketParams acc = Uniform(4, 1.0, 0.0, 0.3, Environment::kAccurate);
  const auto all = MessageSpace(acc, ThresholdProfile::Same(0));
  REQUIRE(all.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) CHECK(all[k] == Message::Disclosed(k));
}

TEST_CASE("message probabilities") {
  const auto ex = MessageProbabilities(Example(0.5), ThresholdProfile::Same(1));
  CHECK(std::abs(ex.nd - 4.0 / 9.0) < 1e-15);
  CHECK(std::abs(ex.disclosed[1] - 5.0 / 9.0) < 1e-15);
  CHECK(ex.disclosed[0] == 0.0);

  const MarketParams acc = Uniform(5, 1.0, 0.0, 0.3, Environment::kAccurate);
  const auto d = MessageProbabilities(acc, ThresholdProfile::Same(2));
  CHECK(std::abs(d.nd - 0.4) < 1e-15);
  for (std::size_t k = 2; k < 5; ++k) CHECK(std::abs(d.disclosed[k] - 0.2) < 1e-15);

  const MarketParams u3 = Uniform(3, 0.7);
  const auto got = MessageProbabilities(u3, ThresholdProfile::Same(1));
  const auto want = oracle::BuildBeliefs(testgen::ToOracle(u3),
                                         testgen::ToOracle(ThresholdProfile::Same(1)));
  CHECK(std::abs(got.nd - want.rho[0]) < 1e-15);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(std::abs(got.disclosed[k] - want.rho[k + 1]) < 1e-15);
  }
}

TEST_CASE("posterior examples") {
  const MarketParams acc = Uniform(4, 1.0, 1.0, 0.3, Environment::kAccurate);
  const auto rec = Posterior(acc, ThresholdProfile::Same(1), Message::Disclosed(2));
  CHECK(rec.probs[2] == 1.0);
  CHECK(rec.mean == 3.0);
  CHECK(rec.exp_loss == 0.0);

  const auto nd = Posterior(Example(0.5), ThresholdProfile::Same(1),
                            Message::NonDisclosure());
  CHECK(std::abs(nd.probs[0] - 0.75) < 1e-15);
  CHECK(std::abs(nd.mean - 1.5) < 1e-15);
  CHECK(std::abs(nd.exp_loss + 0.375) < 1e-15);
  CHECK(std::abs(nd.wtp - 1.125) < 1e-15);
  CHECK(std::abs(nd.path_prob - 4.0 / 9.0) < 1e-15);
  CHECK(nd.on_path);

  const auto nd0 = Posterior(Example(0.5, 0.0), ThresholdProfile::Same(1),
                             Message::NonDisclosure());
  CHECK(std::abs(nd0.wtp - 1.5) < 1e-15);

  CHECK(CodeOf([&] {
          Posterior(Example(0.5), ThresholdProfile::Same(1), Message::Disclosed(0));
        }) == ErrorCode::kOffPathMessage);
}

TEST_CASE("expected loss and willingness to pay") {
  const std::vector<double> v{1.0, 3.0};
  CHECK(ExpectedLoss(v, std::vector<double>{0.0, 1.0}, 3.0) == 0.0);
  CHECK(ExpectedLoss(v, std::vector<double>{0.75, 0.25}, 1.5) == -0.375);
  const std::vector<double> w{0.0, 2.0};
  CHECK(ExpectedLoss(w, std::vector<double>{0.5, 0.5}, 1.0) == -0.5);
  CHECK(WillingnessToPay(1.5, -0.375, 0.0) == 1.5);
  CHECK(WillingnessToPay(1.5, -0.375, 1.0) == 1.125);
  CHECK(3.0 - WillingnessToPay(1.5, -0.375, 1.0) == 1.875);
}

TEST_CASE("off-path beliefs") {
  const MarketParams acc = Uniform(3, 1.0, 1.0, 0.3, Environment::kAccurate);
  const auto pm = OffEquilibriumPosterior(acc, ThresholdProfile::Same(1),
                                          Message::Disclosed(0),
                                          OffEqPolicy::kPointMassAtOutcome);
  CHECK(pm.probs[0] == 1.0);
  CHECK_FALSE(pm.on_path);

  const MarketParams noisy = Uniform(3, 0.8, 1.0);
  const auto worst = OffEquilibriumPosterior(noisy, ThresholdProfile::Same(2),
                                             Message::Disclosed(1),
                                             OffEqPolicy::kWorstType);
  CHECK(worst.probs[0] == 1.0);
  CHECK(worst.mean == 1.0);

  const auto bayes = OffEquilibriumPosterior(noisy, ThresholdProfile::Same(1),
                                             Message::Disclosed(0),
                                             OffEqPolicy::kBayesGivenCertSet);
  const auto want = oracle::BuildBeliefs(testgen::ToOracle(noisy),
                                         testgen::ToOracle(ThresholdProfile::Same(1)),
                                         oracle::OffPath::kBayes);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(bayes.probs[i] - want.post[1][i]) < 1e-15);
  }
  CHECK(bayes.probs[0] == 0.0);
  CHECK(std::abs(bayes.probs[1] - 0.5) < 1e-15);

  // Full certification leaves ND off path; it is read with the prior.
  const auto nd = OffEquilibriumPosterior(acc, ThresholdProfile::Same(0),
                                          Message::NonDisclosure(),
                                          OffEqPolicy::kWorstType);
  CHECK(std::abs(nd.mean - 2.0) < 1e-15);

  CHECK(CodeOf([&] {
          OffEquilibriumPosterior(noisy, ThresholdProfile::Same(1),
                                  Message::Disclosed(2), OffEqPolicy::kWorstType);
        }) == ErrorCode::kOnPathMessage);
}

TEST_CASE("policy defaults") {
  CHECK(DefaultOffEqPolicy(Environment::kAccurate) ==
        OffEqPolicy::kPointMassAtOutcome);
  CHECK(DefaultOffEqPolicy(Environment::kNoisy) ==
        OffEqPolicy::kPointMassAtOutcome);
  CHECK(EffectiveOffEqPolicy(Environment::kAccurate, OffEqPolicy::kWorstType) ==
        OffEqPolicy::kPointMassAtOutcome);
  CHECK(EffectiveOffEqPolicy(Environment::kNoisy, OffEqPolicy::kWorstType) ==
        OffEqPolicy::kWorstType);
  CHECK(ParseOffEqPolicy("bayes") == OffEqPolicy::kBayesGivenCertSet);
  CHECK_FALSE(ParseOffEqPolicy("kind"));
}

TEST_CASE("belief table against enumeration on random markets") {
  testgen::Gen g(2002);
  const OffEqPolicy policies[] = {OffEqPolicy::kPointMassAtOutcome,
                                  OffEqPolicy::kBayesGivenCertSet,
                                  OffEqPolicy::kWorstType};
  const oracle::OffPath oracle_policies[] = {oracle::OffPath::kPointMass,
                                             oracle::OffPath::kBayes,
                                             oracle::OffPath::kWorst};
  for (int trial = 0; trial < 400; ++trial) {
    const int n = g.Int(1, 6);
    const auto data = testgen::RandomSupport(g, n);
    const double alpha = trial % 7 == 0 ? 1.0 : g.Uniform(0.0, 1.0);
    const double b = trial % 5 == 0 ? 0.0 : g.Uniform(0.0, 3.0);
    const MarketParams m = testgen::MakeMarket(data, b, 0.4, alpha);
    ThresholdProfile p;
    if (g.Int(0, 4) > 0) {
      p.cert = g.Int(0, n - 1);
      const int d = g.Int(-1, n - 1);
      if (d >= 0) p.disclose = d;
    }
    const int which = g.Int(0, 2);
    const BeliefTable table(m, p, policies[which]);
    const auto want = oracle::BuildBeliefs(testgen::ToOracle(m), testgen::ToOracle(p),
                                           oracle_policies[which]);
    double lie = 0.0;
    double total = 0.0;
    for (std::size_t slot = 0; slot <= m.size(); ++slot) {
      const PosteriorRecord& rec = table.Record(Message::FromSlot(slot));
      CHECK(rec.on_path == want.on[slot]);
      CHECK(std::abs(rec.path_prob - want.rho[slot]) < 1e-12);
      double sum = 0.0;
      for (std::size_t i = 0; i < m.size(); ++i) {
        CHECK(std::abs(rec.probs[i] - want.post[slot][i]) < 1e-12);
        sum += rec.probs[i];
      }
      CHECK(std::abs(sum - 1.0) < 1e-12);
      CHECK(std::abs(rec.mean - want.mean[slot]) < 1e-12);
      CHECK(std::abs(rec.exp_loss - want.el[slot]) < 1e-12);
      CHECK(std::abs(rec.wtp - want.wtp[slot]) < 1e-12);
      CHECK(rec.exp_loss <= 0.0);
      CHECK(rec.mean >= m.support().value(0) - 1e-12);
      CHECK(rec.mean <= m.support().value(m.size() - 1) + 1e-12);
      CHECK(rec.wtp <= rec.mean + 1e-15);
      bool point_mass = false;
      for (double x : rec.probs) point_mass = point_mass || x > 1.0 - 1e-15;
      if (b > 0.0 && !point_mass) CHECK(rec.wtp < rec.mean);
      if (rec.on_path) {
        lie += rec.path_prob * rec.mean;
        total += rec.path_prob;
      }
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
    CHECK(std::abs(lie - m.support().Mean()) < 1e-10);
  }
}

TEST_CASE("accurate disclosure carries no expected loss") {
  testgen::Gen g(2003);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = g.Int(2, 6);
    const MarketParams m = testgen::MakeMarket(testgen::RandomSupport(g, n),
                                               g.Uniform(0, 3), 0.2, 1.0,
                                               Environment::kAccurate);
    const BeliefTable t(m, ThresholdProfile::Same(g.Int(0, n - 1)));
    for (const Message& msg : t.on_path()) {
      if (msg.is_nd()) continue;
      CHECK(t.Record(msg).exp_loss == 0.0);
      CHECK(t.Record(msg).mean == m.support().value(msg.outcome()));
    }
  }
}
