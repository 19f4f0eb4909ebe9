// Command-line front end: analyze a market config, allocate users for one
// price profile, run a region sweep to CSV, or run the self-test suites.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "duopoly/allocation.hpp"
#include "duopoly/config.hpp"
#include "duopoly/errors.hpp"
#include "duopoly/games.hpp"
#include "duopoly/selftest.hpp"
#include "duopoly/sweep.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvariantFailure = 1;
constexpr int kExitBadConfig = 2;

std::array<bool, 4> flags_of(const duopoly::NESet& ne) { return ne.member; }

void print_matrix(const duopoly::PayoffMatrix& m) {
  std::printf("  %-12s %20s %20s\n", duopoly::to_string(m.objective).c_str(),
              "P2: L", "P2: H");
  std::printf("    P1: L    (%12.6g, %12.6g) (%12.6g, %12.6g)\n",
              m.pay1[duopoly::kLL], m.pay2[duopoly::kLL],
              m.pay1[duopoly::kLH], m.pay2[duopoly::kLH]);
  std::printf("    P1: H    (%12.6g, %12.6g) (%12.6g, %12.6g)\n",
              m.pay1[duopoly::kHL], m.pay2[duopoly::kHL],
              m.pay1[duopoly::kHH], m.pay2[duopoly::kHH]);
}

json ne_to_json(const duopoly::NESet& ne) {
  json j = json::array();
  for (const duopoly::Profile& p : ne.profiles())
    j.push_back(duopoly::to_string(p));
  return j;
}

int cmd_analyze(const std::string& config_path, const std::string& format,
                double eps) {
  duopoly::IniFile ini = duopoly::IniFile::parse_file(config_path);
  duopoly::MarketConfig cfg = duopoly::load_market_config(ini);
  duopoly::LoyaltyModel loyalty = duopoly::load_loyalty(ini);
  duopoly::DerivedRatios ratios = duopoly::derived_ratios(cfg);

  duopoly::PayoffMatrix tm = duopoly::throughput_payoffs(cfg, loyalty);
  duopoly::PayoffMatrix rm = duopoly::revenue_payoffs(cfg, loyalty);
  double eps_t = eps > 0.0 ? eps : duopoly::default_ne_eps(tm);
  double eps_r = eps > 0.0 ? eps : duopoly::default_ne_eps(rm);
  duopoly::NESet tn = duopoly::pure_nash(tm, eps_t);
  duopoly::NESet rn = duopoly::pure_nash(rm, eps_r);

  bool have_prediction = loyalty.is_fixed();
  duopoly::NESet tp, rp;
  if (have_prediction) {
    tp = duopoly::predicted_ne(duopoly::Objective::Throughput, cfg, loyalty);
    rp = duopoly::predicted_ne(duopoly::Objective::Revenue, cfg, loyalty);
  }

  if (format == "json") {
    json j;
    j["regime"] = duopoly::to_string(cfg.regime());
    j["p_bal"] = cfg.p_bal();
    j["loyalty"] = loyalty.describe();
    j["ratios"] = {{"rho", ratios.rho},       {"f", ratios.f},
                   {"rho_w", ratios.rho_w},   {"rho_c", ratios.rho_c},
                   {"revenue_ratio", ratios.revenue_ratio}};
    j["throughput"] = {{"pay1", tm.pay1},
                       {"pay2", tm.pay2},
                       {"nash_enumerated", ne_to_json(tn)}};
    j["revenue"] = {{"pay1", rm.pay1},
                    {"pay2", rm.pay2},
                    {"nash_enumerated", ne_to_json(rn)}};
    if (have_prediction) {
      j["throughput"]["nash_predicted"] = ne_to_json(tp);
      j["revenue"]["nash_predicted"] = ne_to_json(rp);
    }
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }

  std::printf("market: demand %s, supply %s\n", cfg.demand().describe().c_str(),
              cfg.supply().describe().c_str());
  std::printf("gamma = %g, ladder = {%g, %g}, loyalty = %s\n", cfg.gamma(),
              cfg.p_low(), cfg.p_high(), loyalty.describe().c_str());
  std::printf("clearing price p_bal = %.10g -> %s regime\n", cfg.p_bal(),
              duopoly::to_string(cfg.regime()).c_str());
  std::printf("ratios: rho = %.10g, f = %.10g, rho_w = %.10g, rho_c = %.10g, "
              "revenue high/low = %.10g\n",
              ratios.rho, ratios.f, ratios.rho_w, ratios.rho_c,
              ratios.revenue_ratio);
  std::printf("payoffs:\n");
  print_matrix(tm);
  print_matrix(rm);
  std::printf("pure Nash equilibria (enumerated):\n");
  std::printf("  throughput: %s\n", tn.str().c_str());
  std::printf("  revenue:    %s\n", rn.str().c_str());
  if (have_prediction) {
    std::printf("pure Nash equilibria (closed form):\n");
    std::printf("  throughput: %s\n", tp.str().c_str());
    std::printf("  revenue:    %s\n", rp.str().c_str());
    if (!(tn == tp) || !(rn == rp)) {
      std::printf("warning: enumeration and closed form disagree (likely a "
                  "weak-inequality boundary; see README on adjudication)\n");
    }
  } else {
    std::printf("closed-form prediction: n/a for %s loyalty\n",
                loyalty.describe().c_str());
  }
  return kExitOk;
}

int cmd_allocate(const std::string& config_path, double p1, double p2,
                 double beta, int resolution) {
  duopoly::IniFile ini = duopoly::IniFile::parse_file(config_path);
  duopoly::MarketConfig cfg = duopoly::load_market_config(ini);
  duopoly::UtilityOverrides overrides = duopoly::load_utility_overrides(ini);

  if (beta == 0.0 || beta == 1.0) {
    duopoly::Allocation a = duopoly::degenerate_allocation(cfg, p1, p2, beta);
    std::printf("degenerate split (beta = %g):\n", beta);
    std::printf("  platform 1: c1 = w1 = %.10g\n", a.c1);
    std::printf("  platform 2: c2 = w2 = %.10g\n", a.c2);
    return kExitOk;
  }

  duopoly::UtilityParams params =
      duopoly::resolve_utility(overrides, cfg.gamma(), p1, p2, beta);
  duopoly::PerTransactionUtility u =
      duopoly::per_transaction_utility(params, cfg.gamma(), p1, p2);
  bool a3 = duopoly::validate_assumption3(u, params.d_customer, beta);

  duopoly::Allocation a = duopoly::optimal_allocation(cfg, p1, p2, beta);
  double w_closed = duopoly::welfare(a, u, params.d_worker, params.d_customer);
  duopoly::OracleResult brute = duopoly::brute_force_allocation(
      cfg, p1, p2, beta, u, params.d_worker, params.d_customer, resolution);

  std::printf("welfare-optimal allocation (beta = %g):\n", beta);
  std::printf("  platform 1: c1 = w1 = %.10g\n", a.c1);
  std::printf("  platform 2: c2 = w2 = %.10g\n", a.c2);
  std::printf("per-transaction utilities: u1 = %.10g, u2 = %.10g "
              "(disutility bound %s)\n",
              u.u1, u.u2, a3 ? "holds" : "VIOLATED");
  std::printf("welfare: closed form %.10g, grid oracle %.10g "
              "(resolution %d, gap %.3g)\n",
              w_closed, brute.best_welfare, resolution,
              w_closed - brute.best_welfare);
  std::printf("oracle allocation: w1 = %.10g, w2 = %.10g, c1 = %.10g, "
              "c2 = %.10g\n",
              brute.best.w1, brute.best.w2, brute.best.c1, brute.best.c2);
  return kExitOk;
}

int cmd_sweep(const std::string& spec_path, std::string out_path) {
  duopoly::IniFile ini = duopoly::IniFile::parse_file(spec_path);
  duopoly::SweepSpec spec = duopoly::load_sweep_spec(ini);
  if (!out_path.empty()) spec.output_path = out_path;
  if (spec.output_path.empty())
    throw duopoly::ConfigError(
        "no output path: set 'out' in [sweep] or pass --out");

  std::vector<duopoly::RegionRecord> records = duopoly::run_sweep(spec);
  duopoly::write_csv(records, spec.output_path);

  int total = 0, errors = 0, disagreements = 0, adjudicated = 0;
  for (const duopoly::RegionRecord& r : records) {
    ++total;
    if (!r.realizable) ++errors;
    else if (!r.agree) ++disagreements;
    if (r.adjudicated) ++adjudicated;
  }
  std::printf("%d records -> %s\n", total, spec.output_path.c_str());
  std::printf("unrealizable points: %d, boundary ties settled exactly: %d, "
              "disagreements: %d\n",
              errors, adjudicated, disagreements);
  return disagreements == 0 ? kExitOk : kExitInvariantFailure;
}

int cmd_selftest(unsigned seed, int configs, int resolution, int games) {
  duopoly::SelftestOptions options;
  options.seed = seed;
  options.random_configs = configs;
  options.oracle_resolution = resolution;
  options.random_games = games;
  int failures = 0;
  for (const duopoly::CheckResult& res : duopoly::run_selftest(options)) {
    std::printf("[%s] %s%s%s\n", res.passed ? "PASS" : "FAIL",
                res.name.c_str(), res.detail.empty() ? "" : ": ",
                res.detail.c_str());
    failures += res.passed ? 0 : 1;
  }
  if (failures > 0) std::printf("%d check(s) failed\n", failures);
  return failures == 0 ? kExitOk : kExitInvariantFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium engine for duopolistic two-sided price "
               "competition"};
  app.require_subcommand(1);

  std::string config_path, format = "text", out_path;
  double eps = 0.0, p1 = 0.0, p2 = 0.0, beta = 0.5;
  int resolution = 200, games = 1000, configs = 60;
  unsigned seed = 20240902;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "regime, ratios, payoffs and equilibria of one market");
  analyze->add_option("config,--config", config_path, "market config file")
      ->required();
  analyze->add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  analyze->add_option("--eps", eps, "best-response tolerance (default auto)");

  CLI::App* allocate = app.add_subcommand(
      "allocate", "welfare-optimal user allocation for one price profile");
  allocate->add_option("config,--config", config_path, "market config file")
      ->required();
  allocate->add_option("--p1", p1, "platform 1 price")->required();
  allocate->add_option("--p2", p2, "platform 2 price")->required();
  allocate->add_option("--beta", beta, "customer split in [0,1]");
  allocate->add_option("--resolution", resolution, "oracle grid resolution");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "region sweep over (ratio, f, beta) to CSV");
  sweep->add_option("spec,--config", config_path, "sweep spec file")
      ->required();
  sweep->add_option("--out", out_path, "output CSV path");

  CLI::App* selftest =
      app.add_subcommand("selftest", "run the invariant suites");
  selftest->add_option("--seed", seed, "random seed");
  selftest->add_option("--configs", configs, "random markets per suite");
  selftest->add_option("--resolution", resolution,
                       "oracle grid resolution");
  selftest->add_option("--games", games, "random bimatrix games");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return cmd_analyze(config_path, format, eps);
    if (allocate->parsed())
      return cmd_allocate(config_path, p1, p2, beta, resolution);
    if (sweep->parsed()) return cmd_sweep(config_path, out_path);
    return cmd_selftest(seed, configs, resolution, games);
  } catch (const duopoly::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitBadConfig;
  } catch (const duopoly::DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInvariantFailure;
  }
}
