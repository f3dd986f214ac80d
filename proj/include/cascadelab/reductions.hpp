#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cascadelab/engine.hpp"
#include "cascadelab/network.hpp"

namespace cascadelab {

enum class ReductionKind { TauToGamma, SigmaToAlpha };

std::string to_string(ReductionKind kind);
/// Accepts "tau_to_gamma" and "sigma_to_alpha".
ReductionKind parse_reduction(std::string_view text);

/// A transformed instance. Original nodes keep their indices; added nodes
/// follow them.
struct ReductionResult {
  ContactNetwork network;
  EpidemicParams params;
  std::vector<NodeId> helper_nodes;
  std::optional<NodeId> alpha;
  /// Reduced mean extent over counted nodes = original mean + extent_offset.
  double extent_offset = 0.0;
  /// Original step t corresponds to reduced step time_dilation * t (+1 after
  /// the alpha construction, whose seed fires one step early).
  std::size_t time_dilation = 1;

  /// Nodes that count towards the extent relation (all but helpers).
  std::vector<bool> counted() const;
};

/// Replaces every arc e = (v,w) by v -> h -> w with tau = 1 on both halves and
/// gamma(h) = 1 - tau(e). Helpers are named "h:v→w" and are never seeded.
ReductionResult tau_to_gamma(const ContactNetwork& net, const EpidemicParams& params);

/// Adds a source "α" that is always seeded, never removed, and has an arc to
/// every node v with tau = sigma(v). All other sigma become 0.
ReductionResult sigma_to_alpha(const ContactNetwork& net, const EpidemicParams& params);

ReductionResult reduce(ReductionKind kind, const ContactNetwork& net,
                       const EpidemicParams& params);

enum class CheckMode { Exact, MonteCarlo };

struct ReductionVerdict {
  ReductionKind kind;
  CheckMode mode;
  ExtentEstimate original;
  ExtentEstimate reduced;  ///< over the counted nodes of the reduced instance
  double expected_offset = 0.0;
  bool holds = false;
};

struct ReductionCheckOptions {
  std::size_t replications = 20000;
  std::uint64_t seed = 1;
  double tolerance = 1e-12;
};

/// Evaluates both sides of the extent relation. Exact mode requires equality
/// within the tolerance; Monte Carlo mode requires the shifted original CI to
/// overlap the reduced CI.
ReductionVerdict verify_reduction(ReductionKind kind, const ContactNetwork& net,
                                  const EpidemicParams& params, CheckMode mode,
                                  const ReductionCheckOptions& options = {});

}  // namespace cascadelab
