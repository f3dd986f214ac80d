#pragma once

// Step-synchronous SIR / 2FleeSIR kernel shared by the Monte Carlo engine and
// the trajectory-order exact enumerator. The source of every Bernoulli
// outcome is a policy object, so the same code runs on random draws,
// pre-drawn realizations, and scripted branches.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "cascadelab/engine.hpp"
#include "cascadelab/network.hpp"
#include "cascadelab/rng.hpp"

namespace cascadelab::detail {

struct DistancingRule {
  std::size_t threshold;
  bool ever_infected;
};

inline DistancingRule make_rule(const FleeSirOptions& o) {
  return {o.threshold, o.trigger == DistancingTrigger::EverInfected};
}

struct NoObserver {
  void operator()(std::size_t, const std::vector<NodeState>&) const {}
};

/// Runs one epidemic to extinction and returns |R_T|. `state` holds the final
/// node states afterwards. `observe(t, state)` sees every step t = 0..T after
/// the distancing pass.
template <class Decisions, class Observer = NoObserver>
std::size_t run_epidemic(const ContactNetwork& net, Decisions& decide,
                         const DistancingRule* rule, std::vector<NodeState>& state,
                         Observer&& observe = {}) {
  const std::size_t n = net.node_count();
  state.assign(n, NodeState::Susceptible);
  std::vector<NodeId> current;
  std::vector<NodeId> next;
  for (NodeId v = 0; v < n; ++v) {
    if (decide.seeded(v)) {
      state[v] = NodeState::Infected;
      current.push_back(v);
    }
  }

  // exposure[v]: infected in-neighbours of v under the rule's trigger.
  std::vector<std::uint32_t> exposure;
  if (rule) exposure.assign(n, 0);

  std::size_t extent = 0;
  for (std::size_t t = 0;; ++t) {
    if (rule && !current.empty()) {
      for (NodeId x : current) {
        for (ArcId e : net.out_arcs(x)) ++exposure[net.arc(e).to];
      }
      // Only out-neighbours of I_t can have crossed the threshold this step.
      for (NodeId x : current) {
        for (ArcId e : net.out_arcs(x)) {
          NodeId v = net.arc(e).to;
          if (state[v] == NodeState::Susceptible && exposure[v] >= rule->threshold) {
            state[v] = NodeState::Distanced;
          }
        }
      }
    }
    observe(t, state);
    if (current.empty()) break;

    next.clear();
    for (NodeId x : current) {
      if (decide.removed(x)) continue;
      for (ArcId e : net.out_arcs(x)) {
        NodeId v = net.arc(e).to;
        if (state[v] == NodeState::Susceptible && decide.transmits(e)) {
          state[v] = NodeState::Infected;
          next.push_back(v);
        }
      }
    }
    for (NodeId x : current) {
      state[x] = NodeState::Removed;
      ++extent;
      if (rule && !rule->ever_infected) {
        for (ArcId e : net.out_arcs(x)) --exposure[net.arc(e).to];
      }
    }
    std::sort(next.begin(), next.end());
    current.swap(next);
  }
  return extent;
}

/// Draws outcomes lazily, in the order the process asks for them.
class LazyDecisions {
 public:
  LazyDecisions(Rng& rng, const EpidemicParams& params, Seeding seeding, std::size_t n)
      : rng_(rng), params_(params), uniform_(seeding == Seeding::UniformSingle) {
    if (uniform_ && n > 0) chosen_ = static_cast<NodeId>(rng_.below(n));
  }
  bool seeded(NodeId v) { return uniform_ ? v == chosen_ : rng_.bernoulli(params_.sigma[v]); }
  bool removed(NodeId v) { return rng_.bernoulli(params_.gamma[v]); }
  bool transmits(ArcId e) { return rng_.bernoulli(params_.tau[e]); }

 private:
  Rng& rng_;
  const EpidemicParams& params_;
  bool uniform_;
  NodeId chosen_ = 0;
};

class RealizedDecisions {
 public:
  explicit RealizedDecisions(const OutcomeRealization& o) : o_(o) {}
  bool seeded(NodeId v) const { return o_.seeded[v]; }
  bool removed(NodeId v) const { return o_.removed[v]; }
  bool transmits(ArcId e) const { return o_.transmits[e]; }

 private:
  const OutcomeRealization& o_;
};

}  // namespace cascadelab::detail
