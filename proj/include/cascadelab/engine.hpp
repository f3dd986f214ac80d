#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cascadelab/network.hpp"

namespace cascadelab {

enum class Model { Sir, FleeSir };

std::string to_string(Model m);
/// Accepts "sir" and "fleesir"; throws Error otherwise.
Model parse_model(std::string_view text);

/// Which infected in-neighbours a susceptible counts before distancing.
enum class DistancingTrigger {
  EverInfected,       ///< currently infected or infected earlier (now R)
  CurrentlyInfected,  ///< only members of I_t
};

struct FleeSirOptions {
  std::size_t threshold = 2;
  DistancingTrigger trigger = DistancingTrigger::EverInfected;
};

/// How I_0 is drawn.
enum class Seeding {
  FromSigma,      ///< each node independently with probability sigma(v)
  UniformSingle,  ///< exactly one node, uniformly at random; sigma ignored
};

/// State of every node at t = 0..T, where T is the first time with I_T empty.
struct TrajectoryRecord {
  std::vector<std::vector<NodeState>> steps;
  std::size_t extent = 0;

  std::size_t final_time() const { return steps.empty() ? 0 : steps.size() - 1; }
  const std::vector<NodeState>& final_state() const { return steps.back(); }
  /// One line per step: "t: S={..} I={..} R={..} D={..}".
  std::string to_text(const ContactNetwork& net) const;
};

/// Every Bernoulli outcome of one epidemic decided up front.
struct OutcomeRealization {
  std::vector<bool> seeded;     ///< per node, probability sigma(v)
  std::vector<bool> removed;    ///< per node, probability gamma(v)
  std::vector<bool> transmits;  ///< per arc, probability tau(e)
};

/// Draw order: seeds (or the single uniform seed), removals, transmissions.
OutcomeRealization draw_realization(const ContactNetwork& net, const EpidemicParams& params,
                                    std::uint64_t seed, Seeding seeding = Seeding::FromSigma);

/// Discrete-time SIR. Each step visits I_t in index order: removal with
/// probability gamma(u), otherwise every susceptible out-neighbour is
/// infected with probability tau(u,v); then u moves to R.
TrajectoryRecord simulate_sir(const ContactNetwork& net, const EpidemicParams& params,
                              std::uint64_t seed, Seeding seeding = Seeding::FromSigma);
/// Same dynamics driven by pre-drawn outcomes.
TrajectoryRecord simulate_sir(const ContactNetwork& net, const OutcomeRealization& outcome);

/// SIR with a distancing step before each round: a susceptible whose
/// infected in-neighbour count reaches the threshold becomes Distanced for
/// good and can no longer be infected.
TrajectoryRecord simulate_fleesir(const ContactNetwork& net, const EpidemicParams& params,
                                  std::uint64_t seed, const FleeSirOptions& options = {},
                                  Seeding seeding = Seeding::FromSigma);
TrajectoryRecord simulate_fleesir(const ContactNetwork& net, const OutcomeRealization& outcome,
                                  const FleeSirOptions& options = {});

/// Final infected set of the percolation form: seeded nodes plus everything
/// reachable through transmitting arcs leaving non-removed infected nodes.
std::vector<bool> percolation_infected(const ContactNetwork& net,
                                       const OutcomeRealization& outcome);
/// Sorted node indices of the final infected set for a fresh realization.
std::vector<NodeId> sample_sir_percolation(const ContactNetwork& net,
                                           const EpidemicParams& params, std::uint64_t seed,
                                           Seeding seeding = Seeding::FromSigma);

struct ExtentEstimate {
  double mean = 0.0;
  double half_width_95 = 0.0;  ///< 0 for exact values
  std::size_t replications = 0;
  bool exact = false;

  double lower() const { return mean - half_width_95; }
  double upper() const { return mean + half_width_95; }
};

ExtentEstimate exact_estimate(double mean);

struct EstimateOptions {
  Seeding seeding = Seeding::FromSigma;
  FleeSirOptions fleesir;
  /// Nodes contributing to the extent; empty means all of them.
  std::vector<bool> counted;
};

struct MonteCarloTally {
  ExtentEstimate extent;
  std::vector<double> node_frequency;  ///< fraction of runs infecting each node
};

/// Replication r runs on Rng(sub_seed(seed, r)). Counts are summed as
/// integers, so the result does not depend on thread count or schedule.
MonteCarloTally monte_carlo(Model model, const ContactNetwork& net, const EpidemicParams& params,
                            std::size_t replications, std::uint64_t seed,
                            const EstimateOptions& options = {});
/// Single-threaded reference for monte_carlo; must agree bit for bit.
MonteCarloTally monte_carlo_serial(Model model, const ContactNetwork& net,
                                   const EpidemicParams& params, std::size_t replications,
                                   std::uint64_t seed, const EstimateOptions& options = {});

ExtentEstimate estimate_mean_extent(Model model, const ContactNetwork& net,
                                    const EpidemicParams& params, std::size_t replications,
                                    std::uint64_t seed, const EstimateOptions& options = {});

}  // namespace cascadelab
