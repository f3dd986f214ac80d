#include "cascadelab/oracle.hpp"

#include <algorithm>
#include <cstdint>

#include "cascadelab/error.hpp"
#include "dynamics.hpp"

namespace cascadelab {

namespace {

bool is_free(double p) { return p > 0.0 && p < 1.0; }

enum class Kind : std::uint8_t { Seed, Remove, Transmit };

struct FreeDecision {
  Kind kind;
  std::uint32_t index;
  long double p;
};

std::vector<FreeDecision> free_decisions(const ContactNetwork& net, const EpidemicParams& params) {
  std::vector<FreeDecision> out;
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (is_free(params.sigma[v])) out.push_back({Kind::Seed, v, params.sigma[v]});
  }
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (is_free(params.gamma[v])) out.push_back({Kind::Remove, v, params.gamma[v]});
  }
  for (ArcId e = 0; e < net.arc_count(); ++e) {
    if (is_free(params.tau[e])) out.push_back({Kind::Transmit, e, params.tau[e]});
  }
  return out;
}

/// Long-double accumulator for one slice of the outcome space.
struct Accumulator {
  std::vector<long double> dist;
  std::vector<long double> prob;
  std::size_t outcomes = 0;

  explicit Accumulator(std::size_t n) : dist(n + 1, 0.0L), prob(n, 0.0L) {}

  void add(long double w, const std::vector<bool>& infected) {
    std::size_t k = 0;
    for (std::size_t v = 0; v < infected.size(); ++v) {
      if (infected[v]) {
        prob[v] += w;
        ++k;
      }
    }
    dist[k] += w;
    ++outcomes;
  }

  void merge(const Accumulator& other) {
    for (std::size_t k = 0; k < dist.size(); ++k) dist[k] += other.dist[k];
    for (std::size_t v = 0; v < prob.size(); ++v) prob[v] += other.prob[v];
    outcomes += other.outcomes;
  }

  ExactResult finish() const {
    ExactResult r;
    long double mean = 0.0L;
    r.extent_distribution.resize(dist.size());
    for (std::size_t k = 0; k < dist.size(); ++k) {
      r.extent_distribution[k] = static_cast<double>(dist[k]);
      mean += static_cast<long double>(k) * dist[k];
    }
    r.infect_prob.resize(prob.size());
    for (std::size_t v = 0; v < prob.size(); ++v) r.infect_prob[v] = static_cast<double>(prob[v]);
    r.mean_extent = static_cast<double>(mean);
    r.outcomes = outcomes;
    return r;
  }
};

/// Reachability solver for one realization, with reusable buffers.
class PercolationWorkspace {
 public:
  PercolationWorkspace(const ContactNetwork& net, const EpidemicParams& params)
      : net_(net), seeded_(net.node_count()), removed_(net.node_count()),
        transmits_(net.arc_count()), infected_(net.node_count()) {
    for (NodeId v = 0; v < net.node_count(); ++v) {
      base_seeded_.push_back(params.sigma[v] >= 1.0);
      base_removed_.push_back(params.gamma[v] >= 1.0);
    }
    for (ArcId e = 0; e < net.arc_count(); ++e) base_transmits_.push_back(params.tau[e] >= 1.0);
  }

  /// Applies the outcome bits of `index` and returns the realization weight.
  long double load(std::uint64_t index, const std::vector<FreeDecision>& decisions) {
    seeded_ = base_seeded_;
    removed_ = base_removed_;
    transmits_ = base_transmits_;
    long double w = 1.0L;
    for (std::size_t j = 0; j < decisions.size(); ++j) {
      const bool bit = (index >> j) & 1U;
      const FreeDecision& d = decisions[j];
      w *= bit ? d.p : 1.0L - d.p;
      switch (d.kind) {
        case Kind::Seed: seeded_[d.index] = bit; break;
        case Kind::Remove: removed_[d.index] = bit; break;
        case Kind::Transmit: transmits_[d.index] = bit; break;
      }
    }
    return w;
  }

  const std::vector<bool>& solve() {
    infected_ = seeded_;
    stack_.clear();
    for (NodeId v = 0; v < net_.node_count(); ++v) {
      if (infected_[v]) stack_.push_back(v);
    }
    while (!stack_.empty()) {
      NodeId x = stack_.back();
      stack_.pop_back();
      if (removed_[x]) continue;
      for (ArcId e : net_.out_arcs(x)) {
        NodeId v = net_.arc(e).to;
        if (!infected_[v] && transmits_[e]) {
          infected_[v] = true;
          stack_.push_back(v);
        }
      }
    }
    return infected_;
  }

 private:
  const ContactNetwork& net_;
  std::vector<bool> base_seeded_, base_removed_, base_transmits_;
  std::vector<bool> seeded_, removed_, transmits_, infected_;
  std::vector<NodeId> stack_;
};

constexpr std::uint64_t kMaxBlocks = 256;

struct BlockPlan {
  std::vector<FreeDecision> decisions;
  std::uint64_t blocks;
  std::uint64_t block_size;
};

BlockPlan plan_blocks(const ContactNetwork& net, const EpidemicParams& params) {
  validate(net, params);
  BlockPlan plan;
  plan.decisions = free_decisions(net, params);
  if (plan.decisions.size() > kMaxFreeDecisions) {
    throw BudgetExceeded(plan.decisions.size(), kMaxFreeDecisions);
  }
  const std::uint64_t total = std::uint64_t{1} << plan.decisions.size();
  plan.blocks = std::min(total, kMaxBlocks);
  plan.block_size = total / plan.blocks;
  return plan;
}

void enumerate_block(const BlockPlan& plan, std::uint64_t block, PercolationWorkspace& ws,
                     Accumulator& acc) {
  const std::uint64_t begin = block * plan.block_size;
  for (std::uint64_t i = begin; i < begin + plan.block_size; ++i) {
    long double w = ws.load(i, plan.decisions);
    acc.add(w, ws.solve());
  }
}

ExactResult combine(const std::vector<Accumulator>& blocks, std::size_t n) {
  Accumulator total(n);
  for (const Accumulator& b : blocks) total.merge(b);
  return total.finish();
}

/// Replays a prefix of branch choices and extends it with `false` branches.
class ScriptedDecisions {
 public:
  ScriptedDecisions(const EpidemicParams& params, std::vector<char>& script,
                    std::vector<long double>& probs)
      : params_(params), script_(script), probs_(probs) {}

  bool seeded(NodeId v) { return decide(params_.sigma[v]); }
  bool removed(NodeId v) { return decide(params_.gamma[v]); }
  bool transmits(ArcId e) { return decide(params_.tau[e]); }
  std::size_t used() const { return cursor_; }

 private:
  bool decide(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    if (cursor_ == script_.size()) {
      script_.push_back(0);
      probs_.push_back(p);
    }
    return script_[cursor_++] != 0;
  }

  const EpidemicParams& params_;
  std::vector<char>& script_;
  std::vector<long double>& probs_;
  std::size_t cursor_ = 0;
};

ExactResult enumerate_trajectories(const ContactNetwork& net, const EpidemicParams& params,
                                   const detail::DistancingRule* rule) {
  validate(net, params);
  const std::size_t n = net.node_count();
  Accumulator acc(n);
  std::vector<char> script;
  std::vector<long double> probs;
  std::vector<NodeState> state;
  std::vector<bool> infected(n);
  for (;;) {
    ScriptedDecisions decide(params, script, probs);
    detail::run_epidemic(net, decide, rule, state);
    if (decide.used() != script.size()) throw Error("internal: trajectory replay diverged");

    long double w = 1.0L;
    for (std::size_t j = 0; j < script.size(); ++j) w *= script[j] ? probs[j] : 1.0L - probs[j];
    for (NodeId v = 0; v < n; ++v) infected[v] = state[v] == NodeState::Removed;
    acc.add(w, infected);
    if (acc.outcomes > kMaxTrajectoryLeaves) {
      throw BudgetExceeded("exact 2FleeSIR enumeration exceeds " +
                           std::to_string(kMaxTrajectoryLeaves) + " trajectories");
    }

    // Depth-first successor: flip the deepest `false` branch.
    while (!script.empty() && script.back()) {
      script.pop_back();
      probs.pop_back();
    }
    if (script.empty()) break;
    script.back() = 1;
  }
  return acc.finish();
}

}  // namespace

double ExactResult::mean_over(const std::vector<bool>& counted) const {
  long double sum = 0.0L;
  for (std::size_t v = 0; v < infect_prob.size(); ++v) {
    if (counted.empty() || counted.at(v)) sum += infect_prob[v];
  }
  return static_cast<double>(sum);
}

std::size_t count_free_decisions(const ContactNetwork& net, const EpidemicParams& params) {
  validate(net, params);
  return free_decisions(net, params).size();
}

ExactResult exact_sir(const ContactNetwork& net, const EpidemicParams& params) {
  const BlockPlan plan = plan_blocks(net, params);
  std::vector<Accumulator> blocks(plan.blocks, Accumulator(net.node_count()));
  const auto block_count = static_cast<long long>(plan.blocks);
#pragma omp parallel
  {
    PercolationWorkspace ws(net, params);
#pragma omp for schedule(dynamic)
    for (long long b = 0; b < block_count; ++b) {
      enumerate_block(plan, static_cast<std::uint64_t>(b), ws, blocks[b]);
    }
  }
  return combine(blocks, net.node_count());
}

ExactResult exact_sir_serial(const ContactNetwork& net, const EpidemicParams& params) {
  const BlockPlan plan = plan_blocks(net, params);
  std::vector<Accumulator> blocks(plan.blocks, Accumulator(net.node_count()));
  PercolationWorkspace ws(net, params);
  for (std::uint64_t b = 0; b < plan.blocks; ++b) enumerate_block(plan, b, ws, blocks[b]);
  return combine(blocks, net.node_count());
}

ExactResult exact_sir_dynamic(const ContactNetwork& net, const EpidemicParams& params) {
  return enumerate_trajectories(net, params, nullptr);
}

ExactResult exact_fleesir(const ContactNetwork& net, const EpidemicParams& params,
                          const FleeSirOptions& options) {
  if (options.threshold == 0) throw Error("distancing threshold must be at least 1");
  auto rule = detail::make_rule(options);
  return enumerate_trajectories(net, params, &rule);
}

ExactResult exact_model(Model model, const ContactNetwork& net, const EpidemicParams& params,
                        const FleeSirOptions& options) {
  return model == Model::Sir ? exact_sir(net, params) : exact_fleesir(net, params, options);
}

ExactResult exact_uniform_seed(Model model, const ContactNetwork& net,
                               const EpidemicParams& params, const FleeSirOptions& options) {
  const std::size_t n = net.node_count();
  if (n == 0) throw Error("uniform seeding needs at least one node");
  Accumulator acc(n);
  const long double share = 1.0L / static_cast<long double>(n);
  for (NodeId s = 0; s < n; ++s) {
    EpidemicParams single = params;
    std::fill(single.sigma.begin(), single.sigma.end(), 0.0);
    single.sigma[s] = 1.0;
    ExactResult r = exact_model(model, net, single, options);
    for (std::size_t k = 0; k <= n; ++k) acc.dist[k] += share * r.extent_distribution[k];
    for (NodeId v = 0; v < n; ++v) acc.prob[v] += share * r.infect_prob[v];
    acc.outcomes += r.outcomes;
  }
  return acc.finish();
}

}  // namespace cascadelab
