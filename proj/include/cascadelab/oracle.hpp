#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cascadelab/engine.hpp"
#include "cascadelab/network.hpp"

namespace cascadelab {

/// Largest number of non-degenerate (probability strictly between 0 and 1)
/// decisions exact_sir will enumerate.
inline constexpr std::size_t kMaxFreeDecisions = 24;
/// Largest number of trajectories the trajectory-order enumerator will visit.
inline constexpr std::size_t kMaxTrajectoryLeaves = std::size_t{1} << 24;

struct ExactResult {
  double mean_extent = 0.0;
  std::vector<double> extent_distribution;  ///< [k] = P(|R_T| = k), k = 0..n
  std::vector<double> infect_prob;          ///< [v] = P(v in R_T)
  std::size_t outcomes = 0;                 ///< realizations or trajectories visited

  /// Sum of infect_prob over the nodes flagged in `counted`.
  double mean_over(const std::vector<bool>& counted) const;
};

/// Seeds, removals and transmissions whose probability is neither 0 nor 1.
std::size_t count_free_decisions(const ContactNetwork& net, const EpidemicParams& params);

/// Enumerates every outcome realization of the free decisions and solves each
/// one by reachability. Throws BudgetExceeded above kMaxFreeDecisions.
/// The outcome space is cut into a fixed number of blocks summed in long
/// double; blocks run in parallel and are combined in index order.
ExactResult exact_sir(const ContactNetwork& net, const EpidemicParams& params);
/// Same block decomposition evaluated on one thread; bit-identical to exact_sir.
ExactResult exact_sir_serial(const ContactNetwork& net, const EpidemicParams& params);

/// Branches on Bernoulli outcomes in the order the dynamic process consumes
/// them. Independent of the reachability route; used to cross-check it.
ExactResult exact_sir_dynamic(const ContactNetwork& net, const EpidemicParams& params);
/// 2FleeSIR is not a percolation process, so only trajectory-order branching
/// applies. Throws BudgetExceeded above kMaxTrajectoryLeaves trajectories.
ExactResult exact_fleesir(const ContactNetwork& net, const EpidemicParams& params,
                          const FleeSirOptions& options = {});

ExactResult exact_model(Model model, const ContactNetwork& net, const EpidemicParams& params,
                        const FleeSirOptions& options = {});
/// Mean over the n single-seed epidemics; params.sigma is ignored.
ExactResult exact_uniform_seed(Model model, const ContactNetwork& net,
                               const EpidemicParams& params, const FleeSirOptions& options = {});

/// True iff every directed s->u path meets `cut`. Cuts hold interior
/// blockers only: s == u, or s or u inside the cut, throws Error.
bool is_su_cut(const ContactNetwork& net, NodeId s, NodeId u, std::span<const NodeId> cut);
/// z in cut, cut is an s-u cut, and cut without z is not.
bool is_z_vital(const ContactNetwork& net, NodeId s, NodeId u, std::span<const NodeId> cut,
                NodeId z);

/// Split of the non-infection probability of u in the single-seed, all-arcs-
/// transmit epidemic from s with removal probabilities `gamma`.
///   p_fz     : the removed set blocks u but stops doing so when z is spared
///   p_fzbar  : the removed set blocks u with or without z
/// A removed source transmits nothing and counts as a blocking set.
struct CutDecomposition {
  double p_fz = 0.0;
  double p_fzbar = 0.0;
  double c1 = 0.0;  ///< p_fz / gamma(z), the probability of a z-vital block given z removed
  double c2 = 0.0;  ///< equals p_fzbar

  double infect_prob() const { return 1.0 - p_fz - p_fzbar; }
};

CutDecomposition cut_decompose(const ContactNetwork& net, NodeId s, NodeId u, NodeId z,
                               std::span<const double> gamma);

}  // namespace cascadelab
