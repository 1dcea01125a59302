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

#include "certmarket/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "certmarket/equilibrium.hpp"
#include "certmarket/error.hpp"
#include "certmarket/profit.hpp"
#include "certmarket/propositions.hpp"

namespace certmarket {

using Json = nlohmann::json;

namespace {

// ---- config parsing -------------------------------------------------------

Json ParseJson(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kInvalidConfig, e.what());
  }
}

void RejectUnknownKeys(const Json& j, std::initializer_list<const char*> keys) {
  if (!j.is_object()) {
    throw Error(ErrorCode::kInvalidConfig, "config must be a JSON object");
  }
  for (const auto& item : j.items()) {
    const bool known = std::any_of(keys.begin(), keys.end(), [&](const char* k) {
      return item.key() == k;
    });
    if (!known) {
      throw Error(ErrorCode::kInvalidConfig, "unknown key '" + item.key() + "'");
    }
  }
}

double GetNumber(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (!v.is_number()) {
    throw Error(ErrorCode::kInvalidConfig,
                std::string("'") + key + "' must be a number");
  }
  return v.get<double>();
}

std::vector<double> GetNumbers(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) {
    throw Error(ErrorCode::kInvalidConfig,
                std::string("'") + key + "' must be a number or a list");
  }
  std::vector<double> out;
  for (const Json& x : v) {
    if (!x.is_number()) {
      throw Error(ErrorCode::kInvalidConfig,
                  std::string("'") + key + "' must hold numbers");
    }
    out.push_back(x.get<double>());
  }
  return out;
}

std::uint64_t GetUnsigned(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (!v.is_number_unsigned()) {
    throw Error(ErrorCode::kInvalidConfig,
                std::string("'") + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

bool GetBool(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (!v.is_boolean()) {
    throw Error(ErrorCode::kInvalidConfig,
                std::string("'") + key + "' must be true or false");
  }
  return v.get<bool>();
}

std::string GetString(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (!v.is_string()) {
    throw Error(ErrorCode::kInvalidConfig,
                std::string("'") + key + "' must be a string");
  }
  return v.get<std::string>();
}

long GetInteger(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (!v.is_number_integer()) {
    throw Error(ErrorCode::kInvalidConfig,
                std::string("'") + key + "' must be an integer");
  }
  return v.get<long>();
}

Environment GetEnv(const Json& j) {
  if (!j.contains("env")) return Environment::kNoisy;
  const auto env = ParseEnvironment(GetString(j, "env"));
  if (!env) {
    throw Error(ErrorCode::kInvalidConfig,
                "env must be nocert, accurate or noisy");
  }
  return *env;
}

// Fills values and priors from either values/priors or lo/hi.
void ReadSupport(const Json& j, RawMarket& raw) {
  const bool explicit_values = j.contains("values");
  const bool range = j.contains("lo") || j.contains("hi");
  if (explicit_values == range) {
    throw Error(ErrorCode::kInvalidConfig,
                "give either 'values' (with optional 'priors') or 'lo'/'hi'");
  }
  if (range) {
    if (j.contains("priors")) {
      throw Error(ErrorCode::kInvalidConfig, "'priors' needs 'values'");
    }
    if (!j.contains("lo") || !j.contains("hi")) {
      throw Error(ErrorCode::kInvalidConfig, "'lo' and 'hi' go together");
    }
    const QualitySupport s =
        UniformSupport(GetInteger(j, "lo"), GetInteger(j, "hi"));
    raw.values.assign(s.values().begin(), s.values().end());
    raw.priors.assign(s.priors().begin(), s.priors().end());
    return;
  }
  const Json& values = j.at("values");
  if (!values.is_array()) {
    throw Error(ErrorCode::kInvalidConfig, "'values' must be a list");
  }
  raw.values = GetNumbers(j, "values");
  if (j.contains("priors")) {
    if (!j.at("priors").is_array()) {
      throw Error(ErrorCode::kInvalidConfig, "'priors' must be a list");
    }
    raw.priors = GetNumbers(j, "priors");
  } else {
    raw.priors.assign(raw.values.size(),
                      raw.values.empty() ? 0.0 : 1.0 / raw.values.size());
  }
}

OffEqPolicy ParsePolicyName(const std::string& name) {
  const auto policy = ParseOffEqPolicy(name);
  if (!policy) {
    throw Error(ErrorCode::kInvalidConfig,
                "offeq must be pointmass, bayes or worst");
  }
  return *policy;
}

// ---- tabular output -------------------------------------------------------

using Cell = std::variant<std::monostate, double, std::int64_t, std::uint64_t,
                          bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string CsvField(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, double>) {
          return FormatDouble(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string quoted = "\"";
          for (char ch : v) {
            if (ch == '"') quoted += '"';
            quoted += ch;
          }
          return quoted + "\"";
        } else {
          return std::to_string(v);
        }
      },
      cell);
}

Json JsonField(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
          return v;
        } else {
          return v;
        }
      },
      cell);
}

void WriteTable(const Table& table, const std::string& format,
                std::ostream& out) {
  if (format == "json") {
    Json rows = Json::array();
    for (const auto& row : table.rows) {
      Json obj = Json::object();
      for (std::size_t i = 0; i < table.columns.size(); ++i) {
        obj[table.columns[i]] = JsonField(row[i]);
      }
      rows.push_back(std::move(obj));
    }
    // Doubles in the dump round-trip exactly.
    out << rows.dump(2) << "\n";
    return;
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << CsvField(row[i]);
    }
    out << "\n";
  }
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidConfig, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Cell Level(std::optional<std::size_t> index) {
  if (!index) return std::monostate{};
  return static_cast<std::int64_t>(*index + 1);
}

Cell LevelValue(const MarketParams& m, std::optional<std::size_t> index) {
  if (!index) return std::monostate{};
  return m.support().value(*index);
}

// ---- commands -------------------------------------------------------------

struct CommonOptions {
  std::string config;
  std::string out;
  std::string format = "csv";
  std::string offeq;
  double tol = kTolerance;
};

OffEqPolicy ChoosePolicy(const CommonOptions& o, const MarketParams& m) {
  if (o.offeq.empty()) return DefaultOffEqPolicy(m.env());
  return ParsePolicyName(o.offeq);
}

std::vector<Cell> ReportRow(const MarketParams& market,
                            const EquilibriumReport& r) {
  std::vector<Cell> row{Level(r.profile.cert),
                        Level(r.profile.disclose),
                        LevelValue(market, r.profile.cert),
                        LevelValue(market, r.profile.disclose),
                        r.is_equilibrium,
                        r.ex_ante_net,
                        r.ex_ante_gross,
                        r.wtp_order_ok,
                        std::string(OffEqPolicyName(r.policy))};
  for (double g : r.cert_gaps) row.emplace_back(g);
  for (std::size_t k = 0; k < r.disclose_gaps.size(); ++k) {
    row.emplace_back(r.disclose_checked[k] ? Cell{r.disclose_gaps[k]}
                                           : Cell{std::monostate{}});
  }
  return row;
}

std::vector<std::string> ReportColumns(std::size_t n) {
  std::vector<std::string> cols{"l_c",        "l_d",           "v_c",
                                "v_d",        "is_equilibrium", "ex_ante_net",
                                "ex_ante_gross", "wtp_order_ok", "offeq"};
  for (std::size_t i = 1; i <= n; ++i) {
    cols.push_back("cert_gap_" + std::to_string(i));
  }
  for (std::size_t i = 1; i <= n; ++i) {
    cols.push_back("disclose_gap_" + std::to_string(i));
  }
  return cols;
}

Table Solve(const CommonOptions& o, bool split) {
  const MarketParams market = ParseMarketConfig(ReadFile(o.config));
  EnumerateOptions options;
  options.policy = ChoosePolicy(o, market);
  options.tol = o.tol;
  options.split_thresholds = split;
  Table t;
  t.columns = ReportColumns(market.size());
  for (const auto& r : EnumerateThresholdEquilibria(market, options)) {
    t.rows.push_back(ReportRow(market, r));
  }
  return t;
}

Table Verify(const CommonOptions& o, std::optional<long> lc,
             std::optional<long> ld) {
  const MarketParams market = ParseMarketConfig(ReadFile(o.config));
  ThresholdProfile profile;
  auto to_index = [&](long level, const char* flag) -> std::size_t {
    if (level < 1 || static_cast<std::size_t>(level) > market.size()) {
      throw Error(ErrorCode::kInvalidProfile,
                  std::string(flag) + " must lie in 1.." +
                      std::to_string(market.size()));
    }
    return static_cast<std::size_t>(level - 1);
  };
  if (lc) profile.cert = to_index(*lc, "--lc");
  // --ld defaults to --lc; 0 means certifiers never disclose.
  if (ld) {
    if (*ld != 0) profile.disclose = to_index(*ld, "--ld");
  } else {
    profile.disclose = profile.cert;
  }
  const auto r =
      VerifyThresholdEquilibrium(market, profile, ChoosePolicy(o, market), o.tol);
  Table t;
  t.columns = ReportColumns(market.size());
  t.rows.push_back(ReportRow(market, r));
  return t;
}

std::vector<double> SortedUnique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Table Sweep(const CommonOptions& o) {
  const SweepGrid grid = ParseSweepConfig(ReadFile(o.config));
  const bool two_type = grid.base.values.size() == 2;
  auto axis = [](const std::vector<double>& v) {
    std::vector<std::optional<double>> out;
    for (double x : SortedUnique(v)) out.emplace_back(x);
    if (out.empty()) out.emplace_back(std::nullopt);
    return out;
  };
  const auto cs = axis(grid.c_values);
  const auto alphas = axis(grid.alpha_values);
  const auto bs = axis(grid.b_values);

  Table t;
  t.columns = {"c",
               "alpha",
               "b",
               "env",
               "eq_levels",
               "best_level",
               "best_net",
               "best_gross",
               "accurate_level",
               "accurate_net",
               "normalized_fee",
               "accurate_region",
               "noisy_region",
               "noisy_condition_lhs",
               "noisy_condition_rhs",
               "noisy_better",
               "profit_gap"};
  for (const auto& c : cs) {
    for (const auto& alpha : alphas) {
      for (const auto& b : bs) {
        RawMarket raw = grid.base;
        if (c) raw.c = *c;
        if (alpha) raw.alpha = *alpha;
        if (b) raw.b = *b;
        const MarketParams market = ValidateMarket(raw);
        EnumerateOptions options;
        options.policy = ChoosePolicy(o, market);
        options.tol = o.tol;
        std::string levels;
        std::optional<std::size_t> best;
        double best_net = 0.0, best_gross = 0.0;
        for (const auto& r : EnumerateThresholdEquilibria(market, options)) {
          if (!r.is_equilibrium || !r.profile.cert) continue;
          if (!levels.empty()) levels += ";";
          levels += std::to_string(*r.profile.cert + 1);
          if (!best || r.ex_ante_net > best_net + o.tol) {
            best = r.profile.cert;
            best_net = r.ex_ante_net;
            best_gross = r.ex_ante_gross;
          }
        }
        std::vector<Cell> row{market.c(), market.alpha(), market.b(),
                              std::string(EnvironmentName(market.env())),
                              levels, Level(best),
                              best ? Cell{best_net} : Cell{},
                              best ? Cell{best_gross} : Cell{}};
        if (market.certification_available()) {
          const auto vm = AccurateUniqueEquilibrium(market, o.tol);
          row.push_back(Level(vm));
          const MarketParams acc = market.WithEnv(Environment::kAccurate, {});
          row.push_back(vm ? Cell{ExAnteProfitOf(acc, ThresholdProfile::Same(
                                                          *vm))
                                      .net}
                           : Cell{0.0});
        } else {
          row.insert(row.end(), {Cell{}, Cell{}});
        }
        if (two_type && market.certification_available()) {
          const TwoTypeRegion region = TwoTypeExistence(market);
          row.insert(row.end(),
                     {region.normalized_fee, region.in_accurate_region, region.in_noisy_region});
          if (market.alpha() < 1.0) {
            const NoisyVsAccurate cmp = TwoTypeNoisyVsAccurate(market);
            row.insert(row.end(), {cmp.lhs, cmp.rhs, cmp.noisy_more_profitable,
                                   cmp.profit_gap});
          } else {
            row.insert(row.end(), 4, Cell{});
          }
        } else {
          row.insert(row.end(), 7, Cell{});
        }
        t.rows.push_back(std::move(row));
      }
    }
  }
  return t;
}

Table Simulate(const CommonOptions& o, std::optional<std::uint64_t> seed) {
  TreatmentConfig config = ParseTreatmentConfig(ReadFile(o.config));
  if (seed) config.seed = *seed;
  if (!o.offeq.empty()) config.off_eq = ParsePolicyName(o.offeq);
  Table t;
  t.columns = {"treatment",      "lo",           "hi",
               "env",            "c",            "alpha",
               "replications",   "seller_net_mean", "seller_net_se",
               "seller_gross_mean", "buyer_mean", "welfare_mean",
               "profit_share",   "purchase_rate", "cert_rate",
               "seed"};
  for (const TreatmentMetrics& m : RunTreatment(config)) {
    t.rows.push_back({m.name, m.lo, m.hi,
                      std::string(EnvironmentName(m.env)), m.c, m.alpha,
                      static_cast<std::uint64_t>(m.replications),
                      m.seller_net_mean, m.seller_net_se, m.seller_gross_mean,
                      m.buyer_mean, m.welfare_mean, m.profit_share,
                      m.purchase_rate, m.cert_rate, m.seed});
  }
  return t;
}

Table Reproduce(double step, double c, double b) {
  if (!(step > 0.0 && step <= 0.1)) {
    throw Error(ErrorCode::kInvalidRange, "--grid-step must lie in (0, 0.1]");
  }
  std::vector<double> grid;
  for (long k = 0;; ++k) {
    const double alpha = static_cast<double>(k) * step;
    if (alpha >= 1.0 - 1e-12) break;
    grid.push_back(alpha);
  }
  Table t;
  t.columns = {"alpha",          "pr_non_bertrand", "pr_non_bertrand_accurate",
               "wtp_gap_b0",     "wtp_gap_b",       "wtp_gap_accurate",
               "profit_noisy",   "profit_accurate"};
  for (const TwoTypeCurveRow& r : TwoTypeCurves(grid, c, b)) {
    t.rows.push_back({r.alpha, r.pr_non_bertrand, r.pr_non_bertrand_accurate,
                      r.wtp_gap_b0, r.wtp_gap_b, r.wtp_gap_accurate,
                      r.profit_noisy, r.profit_accurate});
  }
  return t;
}

bool IsInputError(ErrorCode code) {
  return code != ErrorCode::kInvariantViolation;
}

}  // namespace

MarketParams ParseMarketConfig(std::string_view json_text) {
  const Json j = ParseJson(json_text);
  RejectUnknownKeys(j, {"values", "priors", "lo", "hi", "b", "c", "alpha",
                        "env"});
  RawMarket raw;
  ReadSupport(j, raw);
  raw.env = GetEnv(j);
  if (j.contains("b")) raw.b = GetNumber(j, "b");
  if (j.contains("c")) raw.c = GetNumber(j, "c");
  if (j.contains("alpha")) raw.alpha = GetNumber(j, "alpha");
  return ValidateMarket(raw);
}

SweepGrid ParseSweepConfig(std::string_view json_text) {
  const Json j = ParseJson(json_text);
  RejectUnknownKeys(j, {"values", "priors", "lo", "hi", "b", "c", "alpha",
                        "env"});
  SweepGrid grid;
  ReadSupport(j, grid.base);
  grid.base.env = GetEnv(j);
  if (j.contains("c")) grid.c_values = GetNumbers(j, "c");
  if (j.contains("alpha")) grid.alpha_values = GetNumbers(j, "alpha");
  if (j.contains("b")) grid.b_values = GetNumbers(j, "b");
  for (const char* key : {"c", "alpha", "b"}) {
    if (j.contains(key) && j.at(key).is_array() && j.at(key).empty()) {
      throw Error(ErrorCode::kEmptyGrid, std::string("'") + key + "' is empty");
    }
  }
  return grid;
}

TreatmentConfig ParseTreatmentConfig(std::string_view json_text) {
  const Json j = ParseJson(json_text);
  RejectUnknownKeys(
      j, {"treatment", "values", "priors", "lo", "hi", "env", "b", "c",
          "alpha", "rounds", "replications", "seed", "policy", "markup",
          "round_prices", "unit_weight", "cheap_talk", "offeq",
          "belief_level", "threads"});
  RawMarket raw;
  ReadSupport(j, raw);
  TreatmentConfig config;
  config.support = QualitySupport::Create(raw.values, raw.priors);
  config.env = GetEnv(j);
  if (j.contains("treatment")) config.name = GetString(j, "treatment");
  if (j.contains("b")) config.b = GetNumber(j, "b");
  if (j.contains("c")) config.c_values = GetNumbers(j, "c");
  if (j.contains("alpha")) config.alpha_values = GetNumbers(j, "alpha");
  if (j.contains("rounds")) config.rounds = GetUnsigned(j, "rounds");
  if (j.contains("replications")) {
    config.replications = GetUnsigned(j, "replications");
  }
  if (j.contains("seed")) config.seed = GetUnsigned(j, "seed");
  if (j.contains("unit_weight")) {
    config.unit_weight = GetNumber(j, "unit_weight");
  }
  if (j.contains("cheap_talk")) config.cheap_talk = GetBool(j, "cheap_talk");
  if (j.contains("offeq")) {
    config.off_eq = ParsePolicyName(GetString(j, "offeq"));
  }
  if (j.contains("threads")) config.threads = GetUnsigned(j, "threads");
  if (j.contains("belief_level")) {
    const long level = GetInteger(j, "belief_level");
    if (level < 0 || static_cast<std::size_t>(level) > raw.values.size()) {
      throw Error(ErrorCode::kInvalidConfig,
                  "belief_level must lie in 0.." +
                      std::to_string(raw.values.size()));
    }
    config.belief_profile = level == 0
                                ? ThresholdProfile::Empty()
                                : ThresholdProfile::Same(level - 1);
  }

  const std::string policy =
      j.contains("policy") ? GetString(j, "policy") : "equilibrium";
  if ((j.contains("markup") || j.contains("round_prices")) &&
      policy != "markup") {
    throw Error(ErrorCode::kInvalidConfig,
                "'markup' and 'round_prices' need policy \"markup\"");
  }
  SellerPolicy seller;
  if (policy == "equilibrium") {
    seller = EquilibriumThreshold{};
  } else if (policy == "always") {
    seller = AlwaysCertifyDiscloseAll{};
  } else if (policy == "never") {
    seller = NeverCertify{};
  } else if (policy == "markup") {
    FixedMarkup m;
    if (j.contains("markup")) m.markup = GetNumber(j, "markup");
    if (j.contains("round_prices")) {
      m.round_to_integer = GetBool(j, "round_prices");
    }
    seller = m;
  } else {
    throw Error(ErrorCode::kInvalidConfig,
                "policy must be equilibrium, always, never or markup");
  }
  config.policies = {seller, seller};
  return config;
}

std::string FormatDouble(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Quality certification market solver and simulator",
               "certmarket"};
  app.require_subcommand(1);

  CommonOptions o;
  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", o.config, "JSON config file");
    if (config_required) opt->required();
    sub->add_option("--out", o.out, "Write output here instead of stdout");
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--tol", o.tol, "Indifference tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--offeq", o.offeq, "Off-path beliefs")
        ->check(CLI::IsMember({"pointmass", "bayes", "worst"}));
  };

  bool split = false;
  auto* solve = app.add_subcommand("solve", "List threshold equilibria");
  add_common(solve, true);
  solve->add_flag("--split", split, "Also scan cert != disclose thresholds");

  std::optional<long> lc, ld;
  auto* verify = app.add_subcommand("verify", "Check one threshold profile");
  add_common(verify, true);
  verify->add_option("--lc", lc, "Certification threshold (1-based)");
  verify->add_option("--ld", ld,
                     "Disclosure threshold (1-based, 0 = never disclose)");

  auto* sweep = app.add_subcommand("sweep", "Equilibria over a c/alpha/b grid");
  add_common(sweep, true);

  std::optional<std::uint64_t> seed;
  auto* simulate = app.add_subcommand("simulate", "Run a treatment");
  add_common(simulate, true);
  simulate->add_option("--seed", seed, "Override the config seed");

  double step = 0.01, c = 0.5, b = 1.0;
  auto* reproduce =
      app.add_subcommand("reproduce", "Two-type example curves over alpha");
  add_common(reproduce, false);
  reproduce->add_option("--grid-step", step, "Alpha grid step in (0, 0.1]");
  reproduce->add_option("--c", c, "Certification fee");
  reproduce->add_option("--b", b, "Loss aversion");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    Table table;
    if (*solve) {
      table = Solve(o, split);
    } else if (*verify) {
      table = Verify(o, lc, ld);
    } else if (*sweep) {
      table = Sweep(o);
    } else if (*simulate) {
      table = Simulate(o, seed);
    } else {
      table = Reproduce(step, c, b);
    }
    if (o.out.empty()) {
      WriteTable(table, o.format, out);
    } else {
      std::ofstream file(o.out, std::ios::binary);
      if (!file) {
        err << "error: cannot write " << o.out << "\n";
        return kExitInputError;
      }
      WriteTable(table, o.format, file);
      if (!file) {
        err << "error: cannot write " << o.out << "\n";
        return kExitInputError;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return IsInputError(e.code()) ? kExitInputError : kExitInternalError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
  return kExitOk;
}

}  // namespace certmarket
