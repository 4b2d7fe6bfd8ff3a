#include "bfhire/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "bfhire/error.hpp"
#include "bfhire/io.hpp"
#include "bfhire/sim.hpp"
#include "bfhire/tbc.hpp"
#include "bfhire/verify.hpp"

namespace bfhire {
namespace {

using nlohmann::ordered_json;

struct Options {
  std::string instance;
  std::string bids;
  std::string mechanism = "tbc";
  std::vector<std::string> mechanisms;
  std::uint64_t seed = 1;
  std::optional<std::string> hospital_budget;
  std::optional<std::string> patient_budget;
  std::size_t n = 200;
  std::string min_degree = "0.01";
  std::string max_degree = "0.1";
  std::string budgets = "100:1000:100";
  std::size_t seeds = 30;
  std::string out;
  std::string summary;
  bool trace = false;
  std::string suite;
  std::size_t trials = 100;
  std::size_t max_size = 8;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Writes to --out when given, else to the output stream.
void emit(const Options& opts, std::ostream& out, const std::string& text) {
  if (opts.out.empty()) out << text;
  else write_text_file(opts.out, text);
}

Money parse_money_flag(const std::string& flag, const std::string& text) {
  try {
    return Money::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

ordered_json point_to_json(const PricingPoint& p) {
  ordered_json j;
  j["position"] = p.position;
  j["rival"] = p.rival ? ordered_json(p.rival->value) : ordered_json(nullptr);
  j["agent_marginal"] = p.agent_marginal;
  j["rival_marginal"] = p.rival_marginal;
  j["ratio_bound"] = p.ratio_bound ? ordered_json(format_exact(p.ratio_bound->value())) : ordered_json("inf");
  j["share_bound"] = format_exact(p.share_bound.value());
  j["bound"] = format_exact(p.bound.value());
  return j;
}

ordered_json trace_to_json(const PricingTrace& t) {
  ordered_json j;
  j["agent"] = t.agent.value;
  j["selected_without_agent"] = t.selected_without_agent;
  j["points"] = ordered_json::array();
  for (const auto& p : t.points) j["points"].push_back(point_to_json(p));
  j["payment"] = format_exact(t.payment.value());
  return j;
}

int cmd_gen(const Options& opts, std::ostream& out) {
  GeneratorConfig cfg;
  cfg.n = opts.n;
  cfg.seed = opts.seed;
  cfg.min_degree_frac = parse_rational(opts.min_degree);
  cfg.max_degree_frac = parse_rational(opts.max_degree);
  if (opts.hospital_budget) cfg.hospital_budget = parse_money_flag("--hospital-budget", *opts.hospital_budget);
  if (opts.patient_budget) cfg.patient_budget = parse_money_flag("--patient-budget", *opts.patient_budget);
  emit(opts, out, dump_instance(generate_instance(cfg)));
  return kExitOk;
}

int cmd_run(const Options& opts, std::ostream& out) {
  Instance instance = load_instance(opts.instance);
  if (opts.hospital_budget) instance.hospital_budget = parse_money_flag("--hospital-budget", *opts.hospital_budget);
  if (opts.patient_budget) instance.patient_budget = parse_money_flag("--patient-budget", *opts.patient_budget);
  const BidProfile bids = opts.bids.empty() ? BidProfile::truthful(instance) : load_bids(opts.bids, instance);
  const MechanismSpec spec{parse_mechanism(opts.mechanism), opts.seed};

  ordered_json j;
  j["mechanism"] = std::string(mechanism_name(spec.kind));
  if (spec.kind == MechanismKind::Random) j["seed"] = spec.seed;
  j["hospital_budget"] = format_decimal(instance.hospital_budget.value());
  j["patient_budget"] = format_decimal(instance.patient_budget.value());
  if (spec.kind == MechanismKind::Tbc) {
    const TbcOutcome result = run_tbc(instance, bids);
    j["leader_identification"] = outcome_to_json(result.leaders, true);
    j["doctor_selection"] = outcome_to_json(result.hires, false);
    if (opts.trace) {
      ordered_json traces = ordered_json::array();
      for (const auto& [id, t] : result.leader_traces) traces.push_back(trace_to_json(t));
      j["leader_traces"] = traces;
      ordered_json order = ordered_json::array();
      for (EcId id : result.selection_order) order.push_back(id.value);
      j["selection_order"] = order;
    }
  } else {
    const TwoFoldOutcome result = run_mechanism(spec, instance, bids);
    j["leader_identification"] = outcome_to_json(result.leaders, true);
    j["doctor_selection"] = outcome_to_json(result.hires, false);
  }
  emit(opts, out, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_sweep(const Options& opts, std::ostream& out) {
  GeneratorConfig cfg;
  cfg.n = opts.n;
  cfg.min_degree_frac = parse_rational(opts.min_degree);
  cfg.max_degree_frac = parse_rational(opts.max_degree);
  std::vector<Money> budgets;
  try {
    budgets = parse_budget_range(opts.budgets);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--budgets: ") + e.what());
  }
  if (opts.seeds == 0) throw UsageError("--seeds must be positive");
  std::vector<std::uint64_t> seeds;
  for (std::size_t k = 0; k < opts.seeds; ++k) seeds.push_back(opts.seed + k);
  std::vector<MechanismKind> kinds;
  if (opts.mechanisms.empty()) kinds = {MechanismKind::NoTbc, MechanismKind::Tbc, MechanismKind::Random};
  for (const auto& name : opts.mechanisms) kinds.push_back(parse_mechanism(name));
  std::sort(kinds.begin(), kinds.end());
  kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());

  const auto rows = run_sweep(cfg, budgets, seeds, kinds);
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  emit(opts, out, csv.str());
  if (!opts.summary.empty()) {
    std::ostringstream agg;
    write_aggregate_csv(agg, aggregate_metrics(rows));
    write_text_file(opts.summary, agg.str());
  }
  return kExitOk;
}

int cmd_verify(const Options& opts, std::ostream& out) {
  const SuiteConfig cfg{opts.trials, opts.seed, opts.max_size};
  if (cfg.trials == 0) throw UsageError("--trials must be positive");
  SuiteReport report;
  if (opts.suite == "outcome") report = run_outcome_suite(cfg);
  else if (opts.suite == "setfn") report = run_setfn_suite(cfg);
  else if (opts.suite == "deviation") report = run_deviation_suite(cfg);
  else throw UsageError("unknown suite '" + opts.suite + "'");
  out << suite_summary(report);
  if (!opts.out.empty()) write_text_file(opts.out, suite_to_json(report).dump(2) + "\n");
  return report.passed() ? kExitOk : kExitViolations;
}

}  // namespace

int execute_command(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Options opts;
  CLI::App app{"Budget-feasible doctor hiring mechanisms", "bfhire"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Generate a random instance file");
  gen->add_option("--n", opts.n, "Number of doctors")->check(CLI::PositiveNumber);
  gen->add_option("--seed", opts.seed, "Generator seed");
  gen->add_option("--min-degree", opts.min_degree, "Minimum degree as a fraction of n");
  gen->add_option("--max-degree", opts.max_degree, "Maximum degree as a fraction of n");
  gen->add_option("--hospital-budget", opts.hospital_budget, "Hospital budget B");
  gen->add_option("--patient-budget", opts.patient_budget, "Patient budget B'");
  gen->add_option("--out", opts.out, "Output file (default stdout)");

  auto* run = app.add_subcommand("run", "Run a mechanism on an instance");
  run->add_option("--instance", opts.instance, "Instance JSON")->required();
  run->add_option("--bids", opts.bids, "Bid override JSON");
  run->add_option("--mechanism", opts.mechanism, "notbc, tbc or random");
  run->add_option("--seed", opts.seed, "Seed for the random mechanism");
  run->add_option("--hospital-budget", opts.hospital_budget, "Override B");
  run->add_option("--patient-budget", opts.patient_budget, "Override B'");
  run->add_option("--out", opts.out, "Output file (default stdout)");
  run->add_flag("--trace", opts.trace, "Include TBC pricing traces");

  auto* sweep = app.add_subcommand("sweep", "Budget sweep experiment");
  sweep->add_option("--n", opts.n, "Number of doctors")->check(CLI::PositiveNumber);
  sweep->add_option("--seeds", opts.seeds, "Number of seeds");
  sweep->add_option("--seed", opts.seed, "First seed");
  sweep->add_option("--budgets", opts.budgets, "lo:hi:step");
  sweep->add_option("--mechanism", opts.mechanisms, "Restrict to these mechanisms");
  sweep->add_option("--min-degree", opts.min_degree, "Minimum degree as a fraction of n");
  sweep->add_option("--max-degree", opts.max_degree, "Maximum degree as a fraction of n");
  sweep->add_option("--out", opts.out, "CSV output (default stdout)");
  sweep->add_option("--summary", opts.summary, "Per-(mechanism, budget) mean/stddev CSV");

  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("--suite", opts.suite, "outcome, setfn or deviation")->required();
  verify->add_option("--trials", opts.trials, "Generated instances");
  verify->add_option("--seed", opts.seed, "Suite seed");
  verify->add_option("--max-size", opts.max_size, "Largest instance size");
  verify->add_option("--out", opts.out, "JSON report");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(opts, out);
    if (run->parsed()) return cmd_run(opts, out);
    if (sweep->parsed()) return cmd_sweep(opts, out);
    return cmd_verify(opts, out);
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace bfhire
