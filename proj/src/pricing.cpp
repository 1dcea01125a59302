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

#include "certmarket/pricing.hpp"

#include <cmath>

namespace certmarket {

SubgameResult BertrandSubgame(double wtp_i, double wtp_j, double tol) {
  SubgameResult r;
  const double gap = wtp_i - wtp_j;
  if (std::abs(gap) <= tol) return r;
  if (gap > 0.0) {
    r.winner = Winner::kI;
    r.price_i = gap;
    r.profit_i = gap;
  } else {
    r.winner = Winner::kJ;
    r.price_j = -gap;
    r.profit_j = -gap;
  }
  return r;
}

}  // namespace certmarket
