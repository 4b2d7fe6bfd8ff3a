#include "bfhire/verify.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "bfhire/io.hpp"
#include "bfhire/rng.hpp"
#include "bfhire/sim.hpp"
#include "bfhire/tbc.hpp"

namespace bfhire {
namespace {

using nlohmann::ordered_json;

constexpr std::size_t kSetFunctionTriples = 500;

std::string fold_label(Fold fold) {
  return fold == Fold::LeaderIdentification ? "leader" : "selection";
}

const Money& declared(const BidProfile& bids, EcId id, Fold fold) {
  return fold == Fold::LeaderIdentification ? bids.adapter(id) : bids.consult(id);
}

const Money& true_cost(const Instance& instance, EcId id, Fold fold) {
  const auto& p = instance.profile(id);
  return fold == Fold::LeaderIdentification ? p.adapter_cost : p.consult_cost;
}

const Money& fold_budget(const Instance& instance, Fold fold) {
  return fold == Fold::LeaderIdentification ? instance.hospital_budget : instance.patient_budget;
}

ordered_json ids_json(std::span<const EcId> ids) {
  ordered_json out = ordered_json::array();
  for (EcId id : ids) out.push_back(id.value);
  return out;
}

ordered_json mechanism_json(const MechanismSpec& spec) {
  return {{"kind", std::string(mechanism_name(spec.kind))}, {"seed", spec.seed}};
}

MechanismSpec mechanism_from_json(const ordered_json& j) {
  return {parse_mechanism(j.at("kind").get<std::string>()), j.at("seed").get<std::uint64_t>()};
}

Outcome outcome_from_json(const ordered_json& j) {
  Outcome out;
  for (const auto& id : j.at("winners")) out.winners.push_back(EcId{id.get<std::uint32_t>()});
  for (const auto& [key, value] : j.at("payments_exact").items())
    out.payments.emplace(EcId{static_cast<std::uint32_t>(std::stoul(key))},
                         Money::parse(value.get<std::string>()));
  out.total_payment = Money::parse(j.at("total_payment_exact").get<std::string>());
  return out;
}

Rational utility(const Outcome& outcome, EcId agent, const Money& cost) {
  const auto it = outcome.payments.find(agent);
  if (it == outcome.payments.end()) return 0;
  return Rational(it->second.value() - cost.value());
}

BidProfile with_bid(BidProfile bids, EcId agent, Fold fold, const Money& bid) {
  if (fold == Fold::LeaderIdentification) bids.set_adapter(agent, bid);
  else bids.set_consult(agent, bid);
  return bids;
}

void add_positive(std::vector<Money>& out, const Rational& value) {
  if (sgn(value) > 0) out.emplace_back(value);
}

// Points where the doctor-selection allocation of `agent` can flip: ties with
// each rival's quality ratio and the share bound at each insertion point of
// the run without the agent.
void harvest_selection_bounds(const Instance& instance, const BidProfile& bids,
                              const IdSet& candidates, EcId agent, std::vector<Money>& out) {
  IdSet others = candidates;
  others.erase(agent);
  const auto without = tbc_ds_allocate(others, instance, bids);
  const Rational& q = instance.quality(agent);
  const Rational& budget = instance.patient_budget.value();
  Rational accepted = 0;
  for (EcId rival : without.sorted_order) {
    add_positive(out, Rational(budget * q / (q + accepted)));
    const Rational& rq = instance.quality(rival);
    if (sgn(rq) > 0) add_positive(out, Rational(q * bids.consult(rival).value() / rq));
    if (without.outcome.won(rival)) accepted += rq;
  }
  if (sgn(q + accepted) > 0) add_positive(out, Rational(budget * q / (q + accepted)));
}

template <typename T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

void PropertyReport::add_violation(std::string description, ordered_json witness) {
  ++violation_count;
  if (violations.size() < kStoredViolations)
    violations.push_back({std::move(description), std::move(witness)});
}

void PropertyReport::merge(PropertyReport other) {
  instances_tested += other.instances_tested;
  violation_count += other.violation_count;
  for (auto& v : other.violations) {
    if (violations.size() >= kStoredViolations) break;
    violations.push_back(std::move(v));
  }
}

ordered_json report_to_json(const PropertyReport& report) {
  ordered_json j;
  j["property"] = report.property;
  j["instances_tested"] = report.instances_tested;
  j["violation_count"] = report.violation_count;
  j["violations"] = ordered_json::array();
  for (const auto& v : report.violations)
    j["violations"].push_back({{"description", v.description}, {"witness", v.witness}});
  return j;
}

// ---------------------------------------------------------------------------

PropertyReport check_outcome_properties(const Instance& instance, const BidProfile& bids,
                                        const Outcome& outcome, const Money& budget, Fold fold) {
  PropertyReport report;
  report.property = "outcome/" + fold_label(fold);
  report.instances_tested = 1;

  auto witness = [&] {
    ordered_json w;
    w["instance"] = instance_to_json(instance);
    w["bids"] = bids_to_json(bids);
    w["fold"] = static_cast<int>(fold);
    w["budget"] = format_exact(budget.value());
    w["outcome"] = outcome_to_json(outcome, fold == Fold::LeaderIdentification);
    return w;
  };

  IdSet winners(outcome.winners.begin(), outcome.winners.end());
  if (winners.size() != outcome.winners.size())
    report.add_violation("a winner appears twice", witness());
  IdSet paid;
  for (const auto& [id, amount] : outcome.payments) paid.insert(id);
  if (paid != winners) report.add_violation("payments are not keyed exactly by the winners", witness());

  Money total;
  for (const auto& [id, amount] : outcome.payments) total += amount;
  if (total != outcome.total_payment)
    report.add_violation("total_payment " + format_exact(outcome.total_payment.value()) +
                             " differs from the sum " + format_exact(total.value()),
                         witness());
  if (total > budget)
    report.add_violation("budget exceeded: paid " + format_exact(total.value()) + " > " +
                             format_exact(budget.value()),
                         witness());
  for (const auto& [id, amount] : outcome.payments) {
    if (!instance.contains(id)) continue;
    const Money& bid = declared(bids, id, fold);
    if (amount < bid)
      report.add_violation("individual rationality: EC " + std::to_string(id.value) + " paid " +
                               format_exact(amount.value()) + " below its bid " +
                               format_exact(bid.value()),
                           witness());
  }
  return report;
}

PropertyReport check_mechanism_outcomes(const MechanismSpec& spec, const Instance& instance,
                                        const BidProfile& bids) {
  const auto outcome = run_mechanism(spec, instance, bids);
  PropertyReport report;
  report.property = "outcome/" + std::string(mechanism_name(spec.kind));
  report.instances_tested = 1;
  for (Fold fold : {Fold::LeaderIdentification, Fold::DoctorSelection}) {
    auto part = check_outcome_properties(instance, bids, outcome.fold(fold),
                                         fold_budget(instance, fold), fold);
    for (auto& v : part.violations) {
      v.witness.erase("outcome");
      v.witness["mechanism"] = mechanism_json(spec);
      report.add_violation(std::move(v.description), std::move(v.witness));
    }
    report.violation_count += part.violation_count - part.violations.size();
  }
  return report;
}

PropertyReport replay_outcome_witness(const ordered_json& witness) {
  const Instance instance = validate_instance(nlohmann::json::parse(witness.at("instance").dump()));
  const BidProfile bids = apply_bid_overrides(nlohmann::json::parse(witness.at("bids").dump()), instance);
  if (witness.contains("mechanism"))
    return check_mechanism_outcomes(mechanism_from_json(witness.at("mechanism")), instance, bids);
  const Fold fold = static_cast<Fold>(witness.at("fold").get<int>());
  return check_outcome_properties(instance, bids, outcome_from_json(witness.at("outcome")),
                                  Money::parse(witness.at("budget").get<std::string>()), fold);
}

// ---------------------------------------------------------------------------

PropertyReport check_set_function_properties(const SetFunction& f, std::size_t universe,
                                             SetFunctionClass expected, std::size_t trials,
                                             std::uint64_t seed, std::string name) {
  if (universe == 0) throw std::invalid_argument("set-function check needs a non-empty universe");
  PropertyReport report;
  report.property = std::move(name);
  report.instances_tested = trials;

  if (const Rational empty = f({}); sgn(empty) != 0)
    report.add_violation("f(empty set) = " + format_exact(empty) + ", not 0", {});

  SplitMix64 rng(seed);
  std::vector<EcId> everyone;
  for (std::size_t k = 0; k < universe; ++k) everyone.push_back(EcId::from_index(k));

  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<EcId> perm = everyone;
    shuffle(perm, rng);
    const EcId outsider = perm.front();
    const auto b_size = static_cast<std::size_t>(rng.below(universe));
    std::vector<EcId> big(perm.begin() + 1, perm.begin() + 1 + static_cast<std::ptrdiff_t>(b_size));
    std::vector<EcId> shuffled = big;
    shuffle(shuffled, rng);
    const auto a_size = static_cast<std::size_t>(rng.below(b_size + 1));
    std::vector<EcId> small(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(a_size));
    std::sort(big.begin(), big.end());
    std::sort(small.begin(), small.end());

    auto plus = [&](std::vector<EcId> s) {
      s.push_back(outsider);
      std::sort(s.begin(), s.end());
      return s;
    };
    const Rational fa = f(small), fb = f(big);
    const Rational gain_a = f(plus(small)) - fa;
    const Rational gain_b = f(plus(big)) - fb;

    auto witness = [&] {
      return ordered_json{{"A", ids_json(small)},       {"B", ids_json(big)},
                          {"i", outsider.value},         {"f(A)", format_exact(fa)},
                          {"f(B)", format_exact(fb)},    {"gain_A", format_exact(gain_a)},
                          {"gain_B", format_exact(gain_b)}};
    };
    if (cmp(fa, fb) > 0) report.add_violation("not monotone: f(A) > f(B) for A in B", witness());
    if (expected == SetFunctionClass::MonotoneSubmodular && cmp(gain_a, gain_b) < 0)
      report.add_violation("not submodular: gain of i on A below its gain on B", witness());
    if (expected == SetFunctionClass::Modular) {
      if (gain_a != gain_b) report.add_violation("not modular: gain of i depends on context", witness());
      std::vector<EcId> other;
      for (EcId id : everyone)
        if ((rng.next() & 1U) != 0) other.push_back(id);
      std::vector<EcId> uni, inter;
      std::set_union(small.begin(), small.end(), other.begin(), other.end(), std::back_inserter(uni));
      std::set_intersection(small.begin(), small.end(), other.begin(), other.end(),
                            std::back_inserter(inter));
      if (f(uni) + f(inter) != fa + f(other)) {
        auto w = witness();
        w["C"] = ids_json(other);
        report.add_violation("not modular: f(A|C) + f(A&C) != f(A) + f(C)", std::move(w));
      }
    }
  }
  return report;
}

PropertyReport check_set_function_properties(const SocialGraph& graph, std::size_t trials,
                                             std::uint64_t seed) {
  return check_set_function_properties(
      [&graph](std::span<const EcId> s) { return Rational(activation_value(s, graph)); },
      graph.node_count(), SetFunctionClass::MonotoneSubmodular, trials, seed, "coverage");
}

PropertyReport check_set_function_properties(const Instance& instance, std::size_t trials,
                                             std::uint64_t seed) {
  return check_set_function_properties(
      [&instance](std::span<const EcId> s) { return quality_value(s, instance); }, instance.size(),
      SetFunctionClass::Modular, trials, seed, "quality");
}

// ---------------------------------------------------------------------------

namespace {

struct DeviationContext {
  const Instance& instance;
  MechanismSpec spec;
  BidProfile truthful;
  TwoFoldOutcome baseline;
};

DeviationReport evaluate(const DeviationContext& ctx, EcId agent, Fold fold, const Money& bid,
                         bool& won_deviating) {
  const Money& cost = true_cost(ctx.instance, agent, fold);
  DeviationReport r;
  r.agent = agent;
  r.fold = fold;
  r.true_bid = declared(ctx.truthful, agent, fold);
  r.deviant_bid = bid;
  r.truthful_utility = utility(ctx.baseline.fold(fold), agent, cost);
  const auto deviant = run_mechanism(ctx.spec, ctx.instance, with_bid(ctx.truthful, agent, fold, bid));
  won_deviating = deviant.fold(fold).won(agent);
  r.deviant_utility = utility(deviant.fold(fold), agent, cost);
  r.gain = r.deviant_utility - r.truthful_utility;
  return r;
}

std::vector<Money> grid_bids(const DeviationContext& ctx, EcId agent, Fold fold,
                             const DeviationGrid& grid) {
  const Money& truth = declared(ctx.truthful, agent, fold);
  std::vector<Money> out{truth};
  if (grid.steps == 1) {
    add_positive(out, Rational(truth.value() * grid.low_factor));
  } else {
    for (std::size_t k = 0; k < grid.steps; ++k) {
      const Rational factor = grid.low_factor + (grid.high_factor - grid.low_factor) *
                                                    Rational(static_cast<unsigned long>(k)) /
                                                    Rational(static_cast<unsigned long>(grid.steps - 1));
      add_positive(out, Rational(truth.value() * factor));
    }
  }
  if (grid.harvest_thresholds) {
    const Outcome& base = ctx.baseline.fold(fold);
    if (const auto it = base.payments.find(agent); it != base.payments.end()) {
      add_positive(out, it->second.value());
      // pay-your-bid slack: the highest bid the remaining budget still covers
      const Money& budget = fold_budget(ctx.instance, fold);
      if (base.total_payment <= budget)
        add_positive(out, Rational(it->second.value() + (budget - base.total_payment).value()));
    }
    if (ctx.spec.kind == MechanismKind::Tbc && fold == Fold::LeaderIdentification) {
      const auto trace = tbc_li_threshold(ctx.instance, ctx.truthful, agent);
      add_positive(out, trace.payment.value());
      for (const auto& p : trace.points) {
        if (p.ratio_bound) add_positive(out, p.ratio_bound->value());
        add_positive(out, p.share_bound.value());
        add_positive(out, Rational(p.share_bound.value() / 2));
        add_positive(out, p.bound.value());
      }
    }
    if (ctx.spec.kind == MechanismKind::Tbc && fold == Fold::DoctorSelection)
      harvest_selection_bounds(ctx.instance, ctx.truthful, ctx.baseline.leaders.candidate_set,
                               agent, out);
  }
  sort_unique(out);
  return out;
}

DeviationContext make_context(const Instance& instance, const MechanismSpec& spec) {
  BidProfile truthful = BidProfile::truthful(instance);
  auto baseline = run_mechanism(spec, instance, truthful);
  return {instance, spec, std::move(truthful), std::move(baseline)};
}

bool participates(const DeviationContext& ctx, EcId agent, Fold fold) {
  return fold == Fold::LeaderIdentification || ctx.baseline.leaders.candidate_set.contains(agent);
}

}  // namespace

DeviationReport evaluate_deviation(const Instance& instance, const MechanismSpec& spec, EcId agent,
                                   Fold fold, const Money& deviant_bid) {
  if (!instance.contains(agent)) throw std::invalid_argument("unknown EC id " + std::to_string(agent.value));
  const auto ctx = make_context(instance, spec);
  bool won = false;
  return evaluate(ctx, agent, fold, deviant_bid, won);
}

std::vector<Money> deviation_bids(const Instance& instance, const MechanismSpec& spec, EcId agent,
                                  Fold fold, const DeviationGrid& grid) {
  if (!instance.contains(agent)) throw std::invalid_argument("unknown EC id " + std::to_string(agent.value));
  const auto ctx = make_context(instance, spec);
  if (!participates(ctx, agent, fold)) return {};
  return grid_bids(ctx, agent, fold, grid);
}

DeviationResult deviation_search(const Instance& instance, const MechanismSpec& spec, EcId agent,
                                 const DeviationGrid& grid) {
  if (!instance.contains(agent)) throw std::invalid_argument("unknown EC id " + std::to_string(agent.value));
  const auto ctx = make_context(instance, spec);
  DeviationResult result;
  for (Fold fold : {Fold::LeaderIdentification, Fold::DoctorSelection}) {
    if (!participates(ctx, agent, fold)) continue;
    const bool won_truthfully = ctx.baseline.fold(fold).won(agent);
    const Money& truth = declared(ctx.truthful, agent, fold);
    for (const Money& bid : grid_bids(ctx, agent, fold, grid)) {
      bool won = false;
      auto report = evaluate(ctx, agent, fold, bid, won);
      ++result.bids_tried;
      if ((bid < truth && won_truthfully && !won) || (bid > truth && !won_truthfully && won))
        result.monotonicity.push_back({agent, fold, truth, bid, won_truthfully, won});
      if (sgn(report.gain) > 0) result.profitable.push_back(std::move(report));
    }
  }
  return result;
}

ordered_json deviation_to_json(const DeviationReport& r) {
  return {{"agent", r.agent.value},
          {"fold", static_cast<int>(r.fold)},
          {"true_bid", format_exact(r.true_bid.value())},
          {"deviant_bid", format_exact(r.deviant_bid.value())},
          {"truthful_utility", format_exact(r.truthful_utility)},
          {"deviant_utility", format_exact(r.deviant_utility)},
          {"gain", format_exact(r.gain)}};
}

ordered_json monotonicity_to_json(const MonotonicityWitness& w) {
  return {{"agent", w.agent.value},
          {"fold", static_cast<int>(w.fold)},
          {"true_bid", format_exact(w.true_bid.value())},
          {"deviant_bid", format_exact(w.deviant_bid.value())},
          {"won_truthfully", w.won_truthfully},
          {"won_deviating", w.won_deviating}};
}

// ---------------------------------------------------------------------------

bool SuiteReport::passed() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyReport& p) { return p.ok(); });
}

ordered_json suite_to_json(const SuiteReport& report) {
  ordered_json j;
  j["suite"] = report.suite;
  j["passed"] = report.passed();
  j["properties"] = ordered_json::array();
  for (const auto& p : report.properties) j["properties"].push_back(report_to_json(p));
  j["details"] = report.details;
  return j;
}

std::string suite_summary(const SuiteReport& report) {
  std::ostringstream os;
  os << "suite " << report.suite << ": " << (report.passed() ? "PASS" : "FAIL") << '\n';
  for (const auto& p : report.properties) {
    os << "  " << (p.ok() ? "ok  " : "FAIL") << "  " << p.property << "  (" << p.instances_tested
       << " tested, " << p.violation_count << " violations)\n";
    if (!p.violations.empty()) os << "        first: " << p.violations.front().description << '\n';
  }
  return os.str();
}

Instance generate_suite_instance(std::uint64_t seed, std::size_t max_size) {
  if (max_size < 4) throw std::invalid_argument("suite instances need max size >= 4");
  SplitMix64 rng(derive_seed(seed, 7));
  GeneratorConfig cfg;
  cfg.n = static_cast<std::size_t>(rng.between(4, max_size));
  cfg.min_degree_frac = Rational(1, 20);
  cfg.max_degree_frac = Rational(1, 2);
  cfg.seed = derive_seed(seed, 8);
  cfg.hospital_budget = Money(Rational(static_cast<unsigned long>(rng.between(5000, 40000)), 100));
  cfg.patient_budget = Money(Rational(static_cast<unsigned long>(rng.between(5000, 40000)), 100));
  return generate_instance(cfg);
}

SuiteReport run_outcome_suite(const SuiteConfig& config) {
  SuiteReport report;
  report.suite = "outcome";
  for (MechanismKind kind : {MechanismKind::NoTbc, MechanismKind::Tbc, MechanismKind::Random}) {
    PropertyReport prop;
    prop.property = "budget_feasible_and_ir/" + std::string(mechanism_name(kind));
    for (std::size_t t = 0; t < config.trials; ++t) {
      const std::uint64_t s = derive_seed(config.seed, t);
      const Instance instance = generate_suite_instance(s, config.max_size);
      prop.merge(check_mechanism_outcomes({kind, s}, instance, BidProfile::truthful(instance)));
    }
    report.properties.push_back(std::move(prop));
  }
  report.details["trials"] = config.trials;
  report.details["max_size"] = config.max_size;
  report.details["seed"] = config.seed;
  return report;
}

SuiteReport run_setfn_suite(const SuiteConfig& config) {
  SuiteReport report;
  report.suite = "setfn";
  PropertyReport coverage, quality;
  coverage.property = "coverage_monotone_submodular";
  quality.property = "quality_modular";
  for (std::size_t t = 0; t < config.trials; ++t) {
    const std::uint64_t s = derive_seed(config.seed, t);
    const Instance instance = generate_suite_instance(s, config.max_size);
    auto c = check_set_function_properties(instance.graph, kSetFunctionTriples, s);
    auto q = check_set_function_properties(instance, kSetFunctionTriples, s);
    for (auto* r : {&c, &q})
      for (auto& v : r->violations) v.witness["instance_seed"] = s;
    coverage.merge(std::move(c));
    quality.merge(std::move(q));
  }
  report.properties.push_back(std::move(coverage));
  report.properties.push_back(std::move(quality));
  report.details["graphs"] = config.trials;
  report.details["triples_per_graph"] = kSetFunctionTriples;
  report.details["seed"] = config.seed;
  return report;
}

SuiteReport run_deviation_suite(const SuiteConfig& config) {
  SuiteReport report;
  report.suite = "deviation";
  PropertyReport tbc_leader, tbc_selection, tbc_monotone, notbc_manipulable;
  tbc_leader.property = "tbc_truthful/leader";
  tbc_selection.property = "tbc_truthful/selection";
  tbc_monotone.property = "tbc_monotone/leader";
  notbc_manipulable.property = "notbc_manipulable";

  std::size_t notbc_profitable = 0, bids_tried = 0, selection_monotonicity = 0;
  ordered_json notbc_example;
  for (std::size_t t = 0; t < config.trials; ++t) {
    const std::uint64_t s = derive_seed(config.seed, t);
    const Instance instance = generate_suite_instance(s, config.max_size);
    for (auto* p : {&tbc_leader, &tbc_selection, &tbc_monotone, &notbc_manipulable})
      ++p->instances_tested;
    for (EcId agent : instance.ids()) {
      const auto tbc = deviation_search(instance, {MechanismKind::Tbc, s}, agent);
      bids_tried += tbc.bids_tried;
      for (const auto& r : tbc.profitable) {
        auto& target = r.fold == Fold::LeaderIdentification ? tbc_leader : tbc_selection;
        ordered_json w{{"instance_seed", s},
                       {"mechanism", "tbc"},
                       {"instance", instance_to_json(instance)},
                       {"deviation", deviation_to_json(r)}};
        target.add_violation("EC " + std::to_string(agent.value) + " gains " +
                                 format_exact(r.gain) + " bidding " +
                                 format_exact(r.deviant_bid.value()),
                             std::move(w));
      }
      for (const auto& m : tbc.monotonicity) {
        if (m.fold != Fold::LeaderIdentification) {
          ++selection_monotonicity;
          continue;
        }
        ordered_json w{{"instance_seed", s},
                       {"mechanism", "tbc"},
                       {"instance", instance_to_json(instance)},
                       {"witness", monotonicity_to_json(m)}};
        tbc_monotone.add_violation("EC " + std::to_string(agent.value) +
                                       (m.won_truthfully ? " ejected by a lower bid"
                                                         : " admitted by a higher bid"),
                                   std::move(w));
      }
      const auto notbc = deviation_search(instance, {MechanismKind::NoTbc, s}, agent);
      bids_tried += notbc.bids_tried;
      if (!notbc.profitable.empty() && notbc_example.is_null()) {
        notbc_example = {{"instance_seed", s},
                         {"instance", instance_to_json(instance)},
                         {"deviation", deviation_to_json(notbc.profitable.front())}};
      }
      notbc_profitable += notbc.profitable.size();
    }
  }
  if (notbc_profitable == 0)
    notbc_manipulable.add_violation("no profitable NoTBC deviation found in the suite", {});

  report.properties = {tbc_leader, tbc_selection, tbc_monotone, notbc_manipulable};
  report.details["trials"] = config.trials;
  report.details["max_size"] = config.max_size;
  report.details["seed"] = config.seed;
  report.details["bids_tried"] = bids_tried;
  report.details["notbc_profitable_deviations"] = notbc_profitable;
  report.details["tbc_selection_monotonicity_witnesses"] = selection_monotonicity;
  if (!notbc_example.is_null()) report.details["notbc_example"] = notbc_example;
  return report;
}

}  // namespace bfhire
