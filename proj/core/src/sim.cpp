#include "bfhire/sim.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace bfhire {
namespace {

constexpr std::uint64_t kGraphStream = 1;
constexpr std::uint64_t kCostStream = 2;
constexpr int kMaxSequenceDraws = 100;

mpz_class floor_of(const Rational& r) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

mpz_class ceil_of(const Rational& r) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

using Edge = std::pair<std::uint32_t, std::uint32_t>;

std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// Realizes the sequence by always saturating the node of highest remaining
// degree against the next-highest ones (ties to the lower index). Empty
// result with ok=false when the sequence is not graphical.
bool havel_hakimi(const std::vector<std::size_t>& degrees, std::vector<Edge>& edges) {
  const std::size_t n = degrees.size();
  std::vector<std::pair<std::size_t, std::uint32_t>> rest;
  rest.reserve(n);
  for (std::size_t i = 0; i < n; ++i) rest.emplace_back(degrees[i], static_cast<std::uint32_t>(i));
  const auto by_degree = [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  };
  edges.clear();
  while (!rest.empty()) {
    std::sort(rest.begin(), rest.end(), by_degree);
    const auto [need, node] = rest.front();
    rest.erase(rest.begin());
    if (need == 0) break;
    if (need > rest.size()) return false;
    for (std::size_t k = 0; k < need; ++k) {
      if (rest[k].first == 0) return false;
      --rest[k].first;
      edges.emplace_back(node, rest[k].second);
    }
  }
  return true;
}

void randomize_edges(std::vector<Edge>& edges, std::size_t attempts, SplitMix64& rng) {
  if (edges.size() < 2) return;
  std::unordered_set<std::uint64_t> present;
  present.reserve(edges.size() * 2);
  for (const auto& [a, b] : edges) present.insert(edge_key(a, b));

  for (std::size_t t = 0; t < attempts; ++t) {
    const auto i = static_cast<std::size_t>(rng.below(edges.size()));
    const auto j = static_cast<std::size_t>(rng.below(edges.size()));
    const bool flip = (rng.next() & 1U) != 0;
    if (i == j) continue;
    auto [a, b] = edges[i];
    auto [c, d] = edges[j];
    if (flip) std::swap(c, d);
    // (a,b),(c,d) -> (a,d),(c,b)
    if (a == d || c == b) continue;
    if (present.contains(edge_key(a, d)) || present.contains(edge_key(c, b))) continue;
    present.erase(edge_key(a, b));
    present.erase(edge_key(c, d));
    present.insert(edge_key(a, d));
    present.insert(edge_key(c, b));
    edges[i] = {a, d};
    edges[j] = {c, b};
  }
}

double to_double(const Money& m) { return m.value().get_d(); }

MetricSummary summarize(const std::vector<double>& values) {
  MetricSummary s;
  const double n = static_cast<double>(values.size());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() > 1) {
    double sq = 0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(sq / (n - 1));
  }
  return s;
}

}  // namespace

void GeneratorConfig::validate() const {
  if (n < 2) throw std::invalid_argument("generator needs n >= 2");
  if (sgn(min_degree_frac) <= 0 || cmp(min_degree_frac, max_degree_frac) > 0 ||
      cmp(max_degree_frac, 1) >= 0)
    throw std::invalid_argument("degree fractions must satisfy 0 < min <= max < 1");
  const auto [lo, hi] = degree_bounds();
  if (lo > hi)
    throw std::invalid_argument("empty degree interval [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "] for n = " + std::to_string(n));
  if (!adapter_cost_lo.is_positive() || !consult_cost_lo.is_positive())
    throw std::invalid_argument("cost ranges need positive lower bounds");
  if (adapter_cost_lo > adapter_cost_hi || consult_cost_lo > consult_cost_hi ||
      cmp(quality_lo, quality_hi) > 0 || sgn(quality_lo) < 0)
    throw std::invalid_argument("empty cost or quality range");
}

std::pair<std::size_t, std::size_t> GeneratorConfig::degree_bounds() const {
  const Rational size(static_cast<unsigned long>(n));
  const mpz_class lo = ceil_of(Rational(min_degree_frac * size));
  const mpz_class hi = floor_of(Rational(max_degree_frac * size));
  return {lo.get_ui(), hi.get_ui()};
}

Rational uniform_decimal(const Rational& lo, const Rational& hi, SplitMix64& rng) {
  static const mpz_class scale = 1000000;
  const mpz_class a = ceil_of(Rational(lo * scale));
  const mpz_class b = floor_of(Rational(hi * scale));
  if (a > b) throw std::invalid_argument("range holds no 6-digit decimal");
  const mpz_class span = b - a;
  const std::uint64_t k = rng.below(span.get_ui() + 1);
  Rational out(mpz_class(a + k), scale);
  out.canonicalize();
  return out;
}

Instance generate_instance(const GeneratorConfig& config) {
  config.validate();
  const auto [lo, hi] = config.degree_bounds();
  SplitMix64 graph_rng(derive_seed(config.seed, kGraphStream));

  std::vector<Edge> edges;
  bool realized = false;
  for (int draw = 0; draw < kMaxSequenceDraws && !realized; ++draw) {
    std::vector<std::size_t> degrees(config.n);
    for (auto& d : degrees) d = static_cast<std::size_t>(graph_rng.between(lo, hi));
    if (std::accumulate(degrees.begin(), degrees.end(), std::size_t{0}) % 2 != 0) {
      auto up = std::find_if(degrees.begin(), degrees.end(), [&](std::size_t d) { return d < hi; });
      if (up != degrees.end()) {
        ++*up;
      } else {
        auto down = std::find_if(degrees.begin(), degrees.end(), [&](std::size_t d) { return d > lo; });
        if (down == degrees.end())
          throw std::invalid_argument("degree bounds force an odd degree sum");
        --*down;
      }
    }
    realized = havel_hakimi(degrees, edges);
  }
  if (!realized) throw std::invalid_argument("could not draw a graphical degree sequence");
  randomize_edges(edges, config.swaps_per_edge * edges.size(), graph_rng);

  std::vector<std::pair<EcId, EcId>> ids;
  ids.reserve(edges.size());
  for (const auto& [a, b] : edges) ids.emplace_back(EcId::from_index(a), EcId::from_index(b));

  Instance instance;
  instance.graph = SocialGraph::from_edges(config.n, ids);
  instance.hospital_budget = config.hospital_budget;
  instance.patient_budget = config.patient_budget;
  SplitMix64 cost_rng(derive_seed(config.seed, kCostStream));
  instance.profiles.reserve(config.n);
  for (std::size_t i = 0; i < config.n; ++i) {
    EcProfile p;
    p.id = EcId::from_index(i);
    p.adapter_cost = Money(uniform_decimal(config.adapter_cost_lo.value(), config.adapter_cost_hi.value(), cost_rng));
    p.consult_cost = Money(uniform_decimal(config.consult_cost_lo.value(), config.consult_cost_hi.value(), cost_rng));
    p.quality = uniform_decimal(config.quality_lo, config.quality_hi, cost_rng);
    instance.profiles.push_back(std::move(p));
  }
  return instance;
}

std::vector<ExperimentRow> run_sweep(const GeneratorConfig& config, const std::vector<Money>& budgets,
                                     const std::vector<std::uint64_t>& seeds,
                                     const std::vector<MechanismKind>& mechanisms) {
  if (budgets.empty() || seeds.empty() || mechanisms.empty())
    throw std::invalid_argument("sweep needs budgets, seeds and mechanisms");

  std::vector<ExperimentRow> rows;
  rows.reserve(budgets.size() * seeds.size() * mechanisms.size());
  for (std::uint64_t seed : seeds) {
    GeneratorConfig cfg = config;
    cfg.seed = seed;
    Instance instance = generate_instance(cfg);
    const BidProfile bids = BidProfile::truthful(instance);
    for (const Money& budget : budgets) {
      instance.hospital_budget = budget;
      instance.patient_budget = budget;
      for (MechanismKind kind : mechanisms) {
        const auto outcome = run_mechanism({kind, seed}, instance, bids);
        ExperimentRow row;
        row.mechanism = kind;
        row.budget = budget;
        row.seed = seed;
        row.interested_set_size = outcome.leaders.candidate_set.size();
        row.hired_count = outcome.hires.winners.size();
        row.li_total_payment = outcome.leaders.total_payment;
        row.ds_total_payment = outcome.hires.total_payment;
        row.li_winners = outcome.leaders.winners.size();
        row.ds_winners = outcome.hires.winners.size();
        rows.push_back(std::move(row));
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ExperimentRow& a, const ExperimentRow& b) {
    if (a.mechanism != b.mechanism) return a.mechanism < b.mechanism;
    if (a.budget != b.budget) return a.budget < b.budget;
    return a.seed < b.seed;
  });
  return rows;
}

std::vector<AggregateRow> aggregate_metrics(const std::vector<ExperimentRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("no rows to aggregate");
  struct Columns {
    std::vector<double> interested, hired, li, ds;
  };
  std::map<std::pair<MechanismKind, Money>, Columns> groups;
  for (const auto& r : rows) {
    auto& g = groups[{r.mechanism, r.budget}];
    g.interested.push_back(static_cast<double>(r.interested_set_size));
    g.hired.push_back(static_cast<double>(r.hired_count));
    g.li.push_back(to_double(r.li_total_payment));
    g.ds.push_back(to_double(r.ds_total_payment));
  }
  std::vector<AggregateRow> out;
  out.reserve(groups.size());
  for (const auto& [key, g] : groups) {
    AggregateRow a;
    a.mechanism = key.first;
    a.budget = key.second;
    a.rows = g.interested.size();
    a.interested_set_size = summarize(g.interested);
    a.hired_count = summarize(g.hired);
    a.li_total_payment = summarize(g.li);
    a.ds_total_payment = summarize(g.ds);
    out.push_back(std::move(a));
  }
  return out;
}

void write_sweep_csv(std::ostream& os, const std::vector<ExperimentRow>& rows) {
  os << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    os << mechanism_name(r.mechanism) << ',' << r.budget.to_string() << ',' << r.seed << ','
       << r.interested_set_size << ',' << r.hired_count << ',' << r.li_total_payment.to_string()
       << ',' << r.ds_total_payment.to_string() << ',' << r.li_winners << ',' << r.ds_winners
       << '\n';
  }
}

void write_aggregate_csv(std::ostream& os, const std::vector<AggregateRow>& rows) {
  os << "mechanism,budget,rows,interested_mean,interested_stddev,hired_mean,hired_stddev,"
        "li_payment_mean,li_payment_stddev,ds_payment_mean,ds_payment_stddev\n";
  const auto flags = os.flags();
  const auto precision = os.precision();
  os << std::fixed << std::setprecision(6);
  for (const auto& a : rows) {
    os << mechanism_name(a.mechanism) << ',' << a.budget.to_string() << ',' << a.rows << ','
       << a.interested_set_size.mean << ',' << a.interested_set_size.stddev << ','
       << a.hired_count.mean << ',' << a.hired_count.stddev << ',' << a.li_total_payment.mean
       << ',' << a.li_total_payment.stddev << ',' << a.ds_total_payment.mean << ','
       << a.ds_total_payment.stddev << '\n';
  }
  os.flags(flags);
  os.precision(precision);
}

std::vector<Money> parse_budget_range(std::string_view spec) {
  const auto first = spec.find(':');
  const auto second = first == std::string_view::npos ? first : spec.find(':', first + 1);
  if (second == std::string_view::npos)
    throw std::invalid_argument("budget range must look like lo:hi:step");
  const Money lo = Money::parse(spec.substr(0, first));
  const Money hi = Money::parse(spec.substr(first + 1, second - first - 1));
  const Money step = Money::parse(spec.substr(second + 1));
  if (!step.is_positive()) throw std::invalid_argument("budget step must be positive");
  if (lo > hi) throw std::invalid_argument("budget range is empty");
  std::vector<Money> out;
  for (Money b = lo; b <= hi; b += step) out.push_back(b);
  return out;
}

}  // namespace bfhire
