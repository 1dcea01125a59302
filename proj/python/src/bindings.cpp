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

// Python bindings. Levels and outcome indices are 0-based, as in C++.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "certmarket/beliefs.hpp"
#include "certmarket/cli.hpp"
#include "certmarket/equilibrium.hpp"
#include "certmarket/error.hpp"
#include "certmarket/market.hpp"
#include "certmarket/montecarlo.hpp"
#include "certmarket/pricing.hpp"
#include "certmarket/profit.hpp"
#include "certmarket/propositions.hpp"

namespace py = pybind11;
using namespace certmarket;

namespace {

MarketParams MakeMarket(std::vector<double> values, std::vector<double> priors,
                        double b, std::optional<double> c,
                        std::optional<double> alpha, Environment env) {
  RawMarket raw;
  raw.values = std::move(values);
  raw.priors = std::move(priors);
  raw.b = b;
  raw.c = c;
  raw.alpha = alpha;
  raw.env = env;
  return ValidateMarket(raw);
}

py::dict BeliefSummary(const BeliefTable& t) {
  py::list rows;
  for (const Message& m : t.on_path()) {
    const PosteriorRecord& r = t.Record(m);
    py::dict row;
    row["message"] = m.ToString();
    row["prob"] = r.path_prob;
    row["mean"] = r.mean;
    row["exp_loss"] = r.exp_loss;
    row["wtp"] = r.wtp;
    row["posterior"] = r.probs;
    rows.append(row);
  }
  py::dict out;
  out["messages"] = rows;
  out["nd_wtp"] = t.Wtp(Message::NonDisclosure());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Certification markets with noisy tests";

  static py::exception<Error> error(m, "CertmarketError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(ErrorName(e.code())) + ": " + e.what())
                               .c_str());
    }
  });

  py::enum_<Environment>(m, "Environment")
      .value("NOCERT", Environment::kNoCert)
      .value("ACCURATE", Environment::kAccurate)
      .value("NOISY", Environment::kNoisy);

  py::enum_<OffEqPolicy>(m, "OffEqPolicy")
      .value("POINT_MASS", OffEqPolicy::kPointMassAtOutcome)
      .value("BAYES", OffEqPolicy::kBayesGivenCertSet)
      .value("WORST", OffEqPolicy::kWorstType);

  py::class_<ThresholdProfile>(m, "ThresholdProfile")
      .def(py::init<>())
      .def(py::init([](std::optional<std::size_t> cert,
                       std::optional<std::size_t> disclose) {
             return ThresholdProfile{cert, disclose};
           }),
           py::arg("cert"), py::arg("disclose"))
      .def_static("empty", &ThresholdProfile::Empty)
      .def_static("same", &ThresholdProfile::Same, py::arg("level"))
      .def_readwrite("cert", &ThresholdProfile::cert)
      .def_readwrite("disclose", &ThresholdProfile::disclose)
      .def("__eq__", [](const ThresholdProfile& a, const ThresholdProfile& b) {
        return a == b;
      })
      .def("__repr__", [](const ThresholdProfile& p) {
        auto show = [](const std::optional<std::size_t>& x) {
          return x ? std::to_string(*x) : std::string("None");
        };
        return "ThresholdProfile(cert=" + show(p.cert) +
               ", disclose=" + show(p.disclose) + ")";
      });

  py::class_<MarketParams>(m, "Market")
      .def(py::init(&MakeMarket), py::arg("values"), py::arg("priors"),
           py::arg("b") = 0.0, py::arg("c") = std::nullopt,
           py::arg("alpha") = std::nullopt,
           py::arg("env") = Environment::kNoisy)
      .def_property_readonly("values", [](const MarketParams& p) {
        const auto v = p.support().values();
        return std::vector<double>(v.begin(), v.end());
      })
      .def_property_readonly("priors", [](const MarketParams& p) {
        const auto q = p.support().priors();
        return std::vector<double>(q.begin(), q.end());
      })
      .def_property_readonly("b", &MarketParams::b)
      .def_property_readonly("c", &MarketParams::c)
      .def_property_readonly("alpha", &MarketParams::alpha)
      .def_property_readonly("env", &MarketParams::env)
      .def("with_alpha", &MarketParams::WithAlpha)
      .def("with_b", &MarketParams::WithB)
      .def("with_c", &MarketParams::WithC)
      .def("with_env", &MarketParams::WithEnv, py::arg("env"),
           py::arg("alpha") = std::nullopt);

  py::class_<EquilibriumReport>(m, "EquilibriumReport")
      .def_readonly("profile", &EquilibriumReport::profile)
      .def_readonly("is_equilibrium", &EquilibriumReport::is_equilibrium)
      .def_readonly("cert_gaps", &EquilibriumReport::cert_gaps)
      .def_readonly("disclose_gaps", &EquilibriumReport::disclose_gaps)
      .def_readonly("disclose_checked", &EquilibriumReport::disclose_checked)
      .def_readonly("max_violation", &EquilibriumReport::max_violation)
      .def_readonly("wtp_order_ok", &EquilibriumReport::wtp_order_ok)
      .def_readonly("ex_ante_net", &EquilibriumReport::ex_ante_net)
      .def_readonly("ex_ante_gross", &EquilibriumReport::ex_ante_gross);

  py::class_<TwoTypeRegion>(m, "TwoTypeRegion")
      .def_readonly("normalized_fee", &TwoTypeRegion::normalized_fee)
      .def_readonly("noisy_low", &TwoTypeRegion::noisy_low)
      .def_readonly("noisy_high", &TwoTypeRegion::noisy_high)
      .def_readonly("in_accurate_region", &TwoTypeRegion::in_accurate_region)
      .def_readonly("in_noisy_region", &TwoTypeRegion::in_noisy_region);

  py::class_<NoisyVsAccurate>(m, "NoisyVsAccurate")
      .def_readonly("noisy_more_profitable",
                    &NoisyVsAccurate::noisy_more_profitable)
      .def_readonly("lhs", &NoisyVsAccurate::lhs)
      .def_readonly("rhs", &NoisyVsAccurate::rhs)
      .def_readonly("profit_gap", &NoisyVsAccurate::profit_gap);

  py::class_<SlopeReport>(m, "SlopeReport")
      .def_readonly("level", &SlopeReport::level)
      .def_readonly("outcome_slopes", &SlopeReport::outcome_slopes)
      .def_readonly("nd_slope", &SlopeReport::nd_slope)
      .def_readonly("disclosed_pairs", &SlopeReport::disclosed_pairs)
      .def_readonly("silent_pairs", &SlopeReport::silent_pairs)
      .def_property_readonly("total", &SlopeReport::Total);

  m.def("beliefs",
        [](const MarketParams& market, const ThresholdProfile& profile,
           std::optional<OffEqPolicy> policy) {
          return BeliefSummary(BeliefTable(
              market, profile,
              policy.value_or(DefaultOffEqPolicy(market.env()))));
        },
        py::arg("market"), py::arg("profile"), py::arg("policy") = std::nullopt,
        "On-path messages with their probability, mean, loss and WTP.");

  m.def("bertrand",
        [](double wtp_i, double wtp_j) {
          const SubgameResult r = BertrandSubgame(wtp_i, wtp_j);
          return py::make_tuple(r.price_i, r.price_j, r.profit_i, r.profit_j);
        },
        py::arg("wtp_i"), py::arg("wtp_j"),
        "Prices and profits (price_i, price_j, profit_i, profit_j).");

  m.def("ex_ante_profit",
        [](const MarketParams& market, const ThresholdProfile& profile) {
          const ExAnteProfit p = ExAnteProfitOf(market, profile);
          return py::make_tuple(p.net, p.gross);
        },
        py::arg("market"), py::arg("profile"), "Per-seller (net, gross).");

  m.def("joint_gross_profit",
        py::overload_cast<const MarketParams&, const ThresholdProfile&>(
            &JointGrossProfit),
        py::arg("market"), py::arg("profile"));

  m.def("verify",
        [](const MarketParams& market, const ThresholdProfile& profile,
           std::optional<OffEqPolicy> policy, double tol) {
          return VerifyThresholdEquilibrium(
              market, profile,
              policy.value_or(DefaultOffEqPolicy(market.env())), tol);
        },
        py::arg("market"), py::arg("profile"), py::arg("policy") = std::nullopt,
        py::arg("tol") = kTolerance);

  m.def("equilibria",
        [](const MarketParams& market, bool split,
           std::optional<OffEqPolicy> policy) {
          EnumerateOptions o;
          o.split_thresholds = split;
          o.policy = policy.value_or(DefaultOffEqPolicy(market.env()));
          std::vector<EquilibriumReport> out;
          for (auto& r : EnumerateThresholdEquilibria(market, o)) {
            if (r.is_equilibrium) out.push_back(std::move(r));
          }
          return out;
        },
        py::arg("market"), py::arg("split") = false,
        py::arg("policy") = std::nullopt);

  m.def("accurate_level", &AccurateUniqueEquilibrium, py::arg("market"),
        py::arg("tol") = kTolerance);
  m.def("two_type_region", &TwoTypeExistence, py::arg("market"));
  m.def("noisy_vs_accurate", &TwoTypeNoisyVsAccurate, py::arg("market"));

  m.def("loss_term_slope",
        [](const std::vector<double>& values, const std::vector<double>& priors,
           std::size_t level) {
          return LossTermSlope(QualitySupport::Create(values, priors), level);
        },
        py::arg("values"), py::arg("priors"), py::arg("level"));
  m.def("loss_term_slope_fd", &LossTermSlopeFd, py::arg("market"),
        py::arg("profile"), py::arg("h") = 1e-3);
  m.def("estimate_loss_aversion", &EstimateLossAversion, py::arg("theta_x"),
        py::arg("theta_y"));

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out;
          std::ostringstream err;
          int code = 0;
          {
            py::gil_scoped_release release;
            code = RunCli(args, out, err);
          }
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command line; returns (code, stdout, stderr).");
}
