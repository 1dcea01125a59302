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

// Command-line surface and config ingestion.
//
// Market configs are JSON objects with the keys
//   values, priors | lo, hi     quality support (uniform shorthand lo..hi)
//   b, c, alpha, env            env is "nocert", "accurate" or "noisy"
// Sweep configs accept a list for c, alpha and b. Treatment configs add
//   treatment, rounds, replications, seed, policy, markup, round_prices,
//   unit_weight, cheap_talk, offeq, belief_level
// and take lists for c and alpha. Unknown keys are rejected.

#ifndef CERTMARKET_CLI_HPP_
#define CERTMARKET_CLI_HPP_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "certmarket/market.hpp"
#include "certmarket/montecarlo.hpp"

namespace certmarket {

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 2,
  kExitInternalError = 3,
};

// Parse from JSON text. Throw Error(kInvalidConfig) on schema problems and
// the market-core errors on invalid values.
MarketParams ParseMarketConfig(std::string_view json_text);
TreatmentConfig ParseTreatmentConfig(std::string_view json_text);

struct SweepGrid {
  RawMarket base;
  std::vector<double> c_values;
  std::vector<double> alpha_values;
  std::vector<double> b_values;
};
SweepGrid ParseSweepConfig(std::string_view json_text);

// 17 significant digits, so the text parses back to the same double.
std::string FormatDouble(double x);

// Entry point shared by the executable and the tests. args excludes argv[0].
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace certmarket

#endif  // CERTMARKET_CLI_HPP_
