#include "cascadelab/engine.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "cascadelab/error.hpp"
#include "dynamics.hpp"

namespace cascadelab {

namespace {

using detail::DistancingRule;
using detail::LazyDecisions;
using detail::RealizedDecisions;

struct Recorder {
  TrajectoryRecord& record;
  void operator()(std::size_t, const std::vector<NodeState>& state) const {
    record.steps.push_back(state);
  }
};

template <class Decisions>
TrajectoryRecord record_run(const ContactNetwork& net, Decisions& decide,
                            const DistancingRule* rule) {
  TrajectoryRecord record;
  std::vector<NodeState> state;
  record.extent = detail::run_epidemic(net, decide, rule, state, Recorder{record});
  return record;
}

void check_realization(const ContactNetwork& net, const OutcomeRealization& o) {
  if (o.seeded.size() != net.node_count() || o.removed.size() != net.node_count() ||
      o.transmits.size() != net.arc_count()) {
    throw Error("realization does not match the network");
  }
}

void check_fleesir(const FleeSirOptions& o) {
  if (o.threshold == 0) throw Error("distancing threshold must be at least 1");
}

constexpr double kZ95 = 1.959963984540054;

struct Tally {
  std::uint64_t sum = 0;
  std::uint64_t sum_sq = 0;
  std::vector<std::uint64_t> node_hits;

  explicit Tally(std::size_t n) : node_hits(n, 0) {}

  void add(const std::vector<NodeState>& state, const std::vector<bool>& counted) {
    std::uint64_t extent = 0;
    for (std::size_t v = 0; v < state.size(); ++v) {
      if (state[v] != NodeState::Removed) continue;
      ++node_hits[v];
      if (counted.empty() || counted[v]) ++extent;
    }
    sum += extent;
    sum_sq += extent * extent;
  }

  void merge(const Tally& other) {
    sum += other.sum;
    sum_sq += other.sum_sq;
    for (std::size_t v = 0; v < node_hits.size(); ++v) node_hits[v] += other.node_hits[v];
  }

  MonteCarloTally finish(std::size_t reps) const {
    MonteCarloTally out;
    const auto n = static_cast<double>(reps);
    out.extent.mean = static_cast<double>(sum) / n;
    out.extent.replications = reps;
    if (reps < 2) {
      out.extent.half_width_95 = std::numeric_limits<double>::infinity();
    } else {
      // Exact integer numerator of the sample variance.
      using i128 = __int128;
      i128 num = static_cast<i128>(reps) * static_cast<i128>(sum_sq) -
                 static_cast<i128>(sum) * static_cast<i128>(sum);
      long double var = static_cast<long double>(num) /
                        (static_cast<long double>(reps) * static_cast<long double>(reps - 1));
      out.extent.half_width_95 = static_cast<double>(kZ95 * std::sqrt(var / reps));
    }
    out.node_frequency.resize(node_hits.size());
    for (std::size_t v = 0; v < node_hits.size(); ++v) {
      out.node_frequency[v] = static_cast<double>(node_hits[v]) / n;
    }
    return out;
  }
};

struct Replicator {
  const ContactNetwork& net;
  const EpidemicParams& params;
  std::uint64_t seed;
  const EstimateOptions& options;
  std::optional<DistancingRule> rule;

  void run(std::size_t r, std::vector<NodeState>& state, Tally& tally) const {
    Rng rng(sub_seed(seed, r));
    LazyDecisions decide(rng, params, options.seeding, net.node_count());
    detail::run_epidemic(net, decide, rule ? &*rule : nullptr, state);
    tally.add(state, options.counted);
  }
};

Replicator make_replicator(Model model, const ContactNetwork& net, const EpidemicParams& params,
                           std::size_t replications, std::uint64_t seed,
                           const EstimateOptions& options) {
  validate(net, params);
  if (replications == 0) throw Error("replications must be at least 1");
  if (!options.counted.empty() && options.counted.size() != net.node_count()) {
    throw Error("counted-node mask does not match the network");
  }
  Replicator rep{net, params, seed, options, std::nullopt};
  if (model == Model::FleeSir) {
    check_fleesir(options.fleesir);
    rep.rule = detail::make_rule(options.fleesir);
  }
  return rep;
}

}  // namespace

std::string to_string(Model m) { return m == Model::Sir ? "sir" : "fleesir"; }

Model parse_model(std::string_view text) {
  if (text == "sir") return Model::Sir;
  if (text == "fleesir") return Model::FleeSir;
  throw Error("unknown model '" + std::string(text) + "' (expected sir or fleesir)");
}

std::string TrajectoryRecord::to_text(const ContactNetwork& net) const {
  std::string out;
  for (std::size_t t = 0; t < steps.size(); ++t) {
    out += std::to_string(t) + ":";
    for (NodeState s : {NodeState::Susceptible, NodeState::Infected, NodeState::Removed,
                        NodeState::Distanced}) {
      out += ' ';
      out += state_letter(s);
      out += "={";
      bool first = true;
      for (NodeId v = 0; v < steps[t].size(); ++v) {
        if (steps[t][v] != s) continue;
        if (!first) out += ',';
        out += net.name(v);
        first = false;
      }
      out += '}';
    }
    out += '\n';
  }
  return out;
}

OutcomeRealization draw_realization(const ContactNetwork& net, const EpidemicParams& params,
                                    std::uint64_t seed, Seeding seeding) {
  validate(net, params);
  const std::size_t n = net.node_count();
  Rng rng(seed);
  OutcomeRealization o;
  o.seeded.assign(n, false);
  if (seeding == Seeding::UniformSingle) {
    if (n > 0) o.seeded[rng.below(n)] = true;
  } else {
    for (NodeId v = 0; v < n; ++v) o.seeded[v] = rng.bernoulli(params.sigma[v]);
  }
  o.removed.resize(n);
  for (NodeId v = 0; v < n; ++v) o.removed[v] = rng.bernoulli(params.gamma[v]);
  o.transmits.resize(net.arc_count());
  for (ArcId e = 0; e < net.arc_count(); ++e) o.transmits[e] = rng.bernoulli(params.tau[e]);
  return o;
}

TrajectoryRecord simulate_sir(const ContactNetwork& net, const EpidemicParams& params,
                              std::uint64_t seed, Seeding seeding) {
  validate(net, params);
  Rng rng(seed);
  LazyDecisions decide(rng, params, seeding, net.node_count());
  return record_run(net, decide, nullptr);
}

TrajectoryRecord simulate_sir(const ContactNetwork& net, const OutcomeRealization& outcome) {
  check_realization(net, outcome);
  RealizedDecisions decide(outcome);
  return record_run(net, decide, nullptr);
}

TrajectoryRecord simulate_fleesir(const ContactNetwork& net, const EpidemicParams& params,
                                  std::uint64_t seed, const FleeSirOptions& options,
                                  Seeding seeding) {
  validate(net, params);
  check_fleesir(options);
  Rng rng(seed);
  LazyDecisions decide(rng, params, seeding, net.node_count());
  auto rule = detail::make_rule(options);
  return record_run(net, decide, &rule);
}

TrajectoryRecord simulate_fleesir(const ContactNetwork& net, const OutcomeRealization& outcome,
                                  const FleeSirOptions& options) {
  check_realization(net, outcome);
  check_fleesir(options);
  RealizedDecisions decide(outcome);
  auto rule = detail::make_rule(options);
  return record_run(net, decide, &rule);
}

std::vector<bool> percolation_infected(const ContactNetwork& net,
                                       const OutcomeRealization& outcome) {
  check_realization(net, outcome);
  std::vector<bool> infected(outcome.seeded);
  std::vector<NodeId> stack;
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (infected[v]) stack.push_back(v);
  }
  while (!stack.empty()) {
    NodeId x = stack.back();
    stack.pop_back();
    if (outcome.removed[x]) continue;
    for (ArcId e : net.out_arcs(x)) {
      NodeId v = net.arc(e).to;
      if (!infected[v] && outcome.transmits[e]) {
        infected[v] = true;
        stack.push_back(v);
      }
    }
  }
  return infected;
}

std::vector<NodeId> sample_sir_percolation(const ContactNetwork& net,
                                           const EpidemicParams& params, std::uint64_t seed,
                                           Seeding seeding) {
  auto infected = percolation_infected(net, draw_realization(net, params, seed, seeding));
  std::vector<NodeId> out;
  for (NodeId v = 0; v < infected.size(); ++v) {
    if (infected[v]) out.push_back(v);
  }
  return out;
}

ExtentEstimate exact_estimate(double mean) { return {mean, 0.0, 0, true}; }

MonteCarloTally monte_carlo(Model model, const ContactNetwork& net, const EpidemicParams& params,
                            std::size_t replications, std::uint64_t seed,
                            const EstimateOptions& options) {
  const Replicator rep = make_replicator(model, net, params, replications, seed, options);
  Tally total(net.node_count());
  const auto reps = static_cast<long long>(replications);
#pragma omp parallel
  {
    Tally local(net.node_count());
    std::vector<NodeState> state;
#pragma omp for schedule(static)
    for (long long r = 0; r < reps; ++r) rep.run(static_cast<std::size_t>(r), state, local);
#pragma omp critical
    total.merge(local);
  }
  return total.finish(replications);
}

MonteCarloTally monte_carlo_serial(Model model, const ContactNetwork& net,
                                   const EpidemicParams& params, std::size_t replications,
                                   std::uint64_t seed, const EstimateOptions& options) {
  const Replicator rep = make_replicator(model, net, params, replications, seed, options);
  Tally total(net.node_count());
  std::vector<NodeState> state;
  for (std::size_t r = 0; r < replications; ++r) rep.run(r, state, total);
  return total.finish(replications);
}

ExtentEstimate estimate_mean_extent(Model model, const ContactNetwork& net,
                                    const EpidemicParams& params, std::size_t replications,
                                    std::uint64_t seed, const EstimateOptions& options) {
  return monte_carlo(model, net, params, replications, seed, options).extent;
}

}  // namespace cascadelab
