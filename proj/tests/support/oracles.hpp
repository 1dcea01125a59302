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

// Brute-force reference computations used by the tests. Nothing here calls
// into the library: every quantity is rebuilt by enumerating types, success
// and failure branches of the certification draw, and message pairs.

#ifndef CERTMARKET_TESTS_ORACLES_HPP_
#define CERTMARKET_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace oracle {

struct Market {
  std::vector<double> v;
  std::vector<double> q;
  double b = 0.0;
  double c = 0.0;
  double alpha = 1.0;
  bool cert_available = true;
};

// -1 means absent.
struct Profile {
  int cert = -1;
  int disclose = -1;
};

enum class OffPath { kPointMass, kBayes, kWorst };

inline bool Certifies(const Market& m, const Profile& p, std::size_t i) {
  return m.cert_available && p.cert >= 0 && static_cast<int>(i) >= p.cert;
}

// Message index: 0 is ND, k + 1 is outcome k disclosed.
inline std::size_t MessageOf(const Profile& p, std::size_t outcome) {
  return p.disclose >= 0 && static_cast<int>(outcome) >= p.disclose
             ? outcome + 1
             : 0;
}

// One branch of a seller's certification draw.
struct Branch {
  double prob;
  std::size_t outcome;
};

inline std::vector<Branch> Branches(const Market& m, std::size_t type) {
  std::vector<Branch> out;
  out.push_back({m.alpha, type});  // the test reports the truth
  for (std::size_t j = 0; j < m.v.size(); ++j) {
    out.push_back({(1.0 - m.alpha) * m.q[j], j});  // a fresh prior draw
  }
  return out;
}

struct Beliefs {
  std::vector<std::vector<double>> joint;  // [type][message]
  std::vector<double> rho;
  std::vector<std::vector<double>> post;  // [message][type]
  std::vector<double> mean;
  std::vector<double> el;
  std::vector<double> wtp;
  std::vector<bool> on;
};

inline Beliefs BuildBeliefs(const Market& m, const Profile& p,
                            OffPath policy = OffPath::kPointMass) {
  const std::size_t n = m.v.size();
  Beliefs r;
  r.joint.assign(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    if (!Certifies(m, p, i)) {
      r.joint[i][0] += m.q[i];
      continue;
    }
    for (const Branch& br : Branches(m, i)) {
      r.joint[i][MessageOf(p, br.outcome)] += m.q[i] * br.prob;
    }
  }
  r.rho.assign(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t s = 0; s <= n; ++s) r.rho[s] += r.joint[i][s];
  }
  r.post.assign(n + 1, std::vector<double>(n, 0.0));
  r.on.assign(n + 1, false);
  for (std::size_t s = 0; s <= n; ++s) {
    r.on[s] = r.rho[s] > 1e-15;
    if (r.on[s]) {
      for (std::size_t i = 0; i < n; ++i) r.post[s][i] = r.joint[i][s] / r.rho[s];
    } else if (s == 0) {
      r.post[s] = m.q;
    } else {
      const std::size_t k = s - 1;
      std::vector<double> w(n, 0.0);
      if (policy == OffPath::kPointMass) {
        w[k] = 1.0;
      } else if (policy == OffPath::kWorst) {
        w[0] = 1.0;
      } else {
        bool any = false;
        for (std::size_t i = 0; i < n; ++i) any = any || Certifies(m, p, i);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          if (any && !Certifies(m, p, i)) continue;
          const double lik = (i == k ? m.alpha : 0.0) + (1.0 - m.alpha) * m.q[k];
          w[i] = m.q[i] * lik;
          total += w[i];
        }
        if (total > 1e-15) {
          for (double& x : w) x /= total;
        } else {
          std::fill(w.begin(), w.end(), 0.0);
          w[k] = 1.0;
        }
      }
      r.post[s] = w;
    }
  }
  r.mean.assign(n + 1, 0.0);
  r.el.assign(n + 1, 0.0);
  r.wtp.assign(n + 1, 0.0);
  for (std::size_t s = 0; s <= n; ++s) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += r.post[s][i] * m.v[i];
    double el = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (m.v[i] < mean) el += r.post[s][i] * (m.v[i] - mean);
    }
    r.mean[s] = mean;
    r.el[s] = el;
    r.wtp[s] = mean + m.b * el;
  }
  return r;
}

inline double SubgameProfit(double own, double other) {
  const double gap = own - other;
  return gap > 1e-9 ? gap : 0.0;
}

// Expected Bertrand profit of showing `wtp` against the on-path messages.
inline double ProfitAgainst(const Beliefs& b, double wtp) {
  double total = 0.0;
  for (std::size_t s = 0; s < b.rho.size(); ++s) {
    if (b.on[s]) total += b.rho[s] * SubgameProfit(wtp, b.wtp[s]);
  }
  return total;
}

inline double TypePayoff(const Market& m, const Profile& p, const Beliefs& b,
                         std::size_t type) {
  if (!Certifies(m, p, type)) return ProfitAgainst(b, b.wtp[0]);
  double total = -m.c;
  for (const Branch& br : Branches(m, type)) {
    total += br.prob * ProfitAgainst(b, b.wtp[MessageOf(p, br.outcome)]);
  }
  return total;
}

struct Profits {
  double net = 0.0;
  double gross = 0.0;
  double joint_pairs = 0.0;  // both sellers, summed over message pairs
  double cert_prob = 0.0;
};

inline Profits ExAnte(const Market& m, const Profile& p,
                      OffPath policy = OffPath::kPointMass) {
  const Beliefs b = BuildBeliefs(m, p, policy);
  Profits r;
  for (std::size_t i = 0; i < m.v.size(); ++i) {
    r.net += m.q[i] * TypePayoff(m, p, b, i);
    if (Certifies(m, p, i)) r.cert_prob += m.q[i];
  }
  r.gross = r.net + m.c * r.cert_prob;
  for (std::size_t s = 0; s < b.rho.size(); ++s) {
    for (std::size_t t = 0; t < b.rho.size(); ++t) {
      if (!b.on[s] || !b.on[t]) continue;
      const double gap = std::abs(b.wtp[s] - b.wtp[t]);
      r.joint_pairs += b.rho[s] * b.rho[t] * (gap > 1e-9 ? gap : 0.0);
    }
  }
  return r;
}

struct Verdict {
  bool equilibrium = false;
  // Distance of the closest decision to its indifference point.
  double margin = std::numeric_limits<double>::infinity();
};

// Each type compares the prescribed strategy with every alternative: staying
// silent, or certifying and then disclosing outcome by outcome at will.
inline Verdict CheckEquilibrium(const Market& m, const Profile& p,
                                OffPath policy = OffPath::kPointMass,
                                double tol = 1e-9) {
  Verdict out;
  if (!m.cert_available) {
    out.equilibrium = true;
    return out;
  }
  const Beliefs b = BuildBeliefs(m, p, policy);
  const std::size_t n = m.v.size();
  const double silent = ProfitAgainst(b, b.wtp[0]);
  std::vector<double> shown(n);
  for (std::size_t k = 0; k < n; ++k) shown[k] = ProfitAgainst(b, b.wtp[k + 1]);

  bool ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    double best = -m.c;
    double follow = -m.c;
    for (const Branch& br : Branches(m, i)) {
      if (br.prob == 0.0) continue;
      const double e = shown[br.outcome];
      best += br.prob * std::max(e, silent);
      follow += br.prob * (MessageOf(p, br.outcome) ? e : silent);
    }
    if (Certifies(m, p, i)) {
      ok = ok && follow >= silent - tol && follow >= best - tol;
      out.margin = std::min(out.margin, std::abs(follow - silent));
      if (best - follow > 1e-12) out.margin = std::min(out.margin, best - follow);
    } else {
      ok = ok && best < silent - tol;
      out.margin = std::min(out.margin, std::abs(best - silent));
    }
  }
  out.equilibrium = ok;
  return out;
}

}  // namespace oracle

#endif  // CERTMARKET_TESTS_ORACLES_HPP_
