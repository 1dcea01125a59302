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

#ifndef CERTMARKET_PRICING_HPP_
#define CERTMARKET_PRICING_HPP_

#include "certmarket/market.hpp"

namespace certmarket {

enum class Winner { kI, kJ, kTie };

// Outcome of the Bertrand pricing game after both messages are observed.
// The seller with the higher willingness to pay prices at the gap and serves
// every buyer; the rival prices at zero.
struct SubgameResult {
  double price_i = 0.0;
  double price_j = 0.0;
  double profit_i = 0.0;
  double profit_j = 0.0;
  Winner winner = Winner::kTie;
};

// WTPs within `tol` of each other are a tie with all prices and profits 0.
SubgameResult BertrandSubgame(double wtp_i, double wtp_j,
                              double tol = kTolerance);

}  // namespace certmarket

#endif  // CERTMARKET_PRICING_HPP_
