#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cascadelab/engine.hpp"
#include "cascadelab/network.hpp"
#include "cascadelab/reductions.hpp"

namespace cascadelab {

/// Exact comparisons treat differences up to this as ties.
inline constexpr double kExactTolerance = 1e-12;

enum class Verdict { Ordered, Tied, Violation, Inconclusive };
std::string to_string(Verdict v);

struct ComparisonContext {
  Model model = Model::Sir;
  std::string network_id;
  std::string params_digest;  ///< digest of over, then of under
};

struct ComparisonReport {
  ExtentEstimate extent_over;
  ExtentEstimate extent_under;
  std::optional<std::vector<double>> per_node_over;
  std::optional<std::vector<double>> per_node_under;
  Verdict verdict = Verdict::Inconclusive;
  /// Node-wise over >= under - tolerance; exact mode only.
  std::optional<bool> per_node_dominance;
  ComparisonContext context;
};

struct CompareOptions {
  CheckMode mode = CheckMode::Exact;
  std::size_t replications = 20000;
  std::uint64_t seed = 1;
  FleeSirOptions fleesir;
  /// Permits non-dominated pairs (2FleeSIR exploration).
  bool allow_non_dominated = false;
  std::string network_id;
};

/// Mean extent of the two epidemics and a verdict on "over >= under".
/// Exact: violation iff over < under - kExactTolerance. Monte Carlo: ordered
/// or violation only when the 95% intervals are disjoint, else inconclusive.
/// Throws Error when `over` does not dominate `under` without the override.
ComparisonReport compare(Model model, const ContactNetwork& net, const EpidemicParams& over,
                         const EpidemicParams& under, const CompareOptions& options = {});

/// Single seed s, every arc transmits. Compares per-node infection
/// probabilities under gamma_low (as "over") and gamma_high (as "under").
ComparisonReport lemma1_check(const ContactNetwork& net, NodeId s,
                              const std::vector<double>& gamma_low,
                              const std::vector<double>& gamma_high,
                              const CompareOptions& options = {});

struct SeedingSpec {
  enum class Kind { Node, UniformSingle, Sigma };
  Kind kind = Kind::Node;
  NodeId node = 0;
  std::vector<double> sigma;

  static SeedingSpec at(NodeId v) { return {Kind::Node, v, {}}; }
  static SeedingSpec uniform_single() { return {Kind::UniformSingle, 0, {}}; }
  static SeedingSpec from_sigma(std::vector<double> s) { return {Kind::Sigma, 0, std::move(s)}; }
};

enum class SweepMode { Exact, MonteCarlo, Auto };

struct SweepOptions {
  SweepMode mode = SweepMode::Auto;
  std::size_t replications = 20000;
  std::uint64_t seed = 1;
  FleeSirOptions fleesir;
};

struct SweepPoint {
  double tau;
  ExtentEstimate estimate;
};

/// Mean extent as a function of a single tau applied to every arc.
struct SweepCurve {
  std::vector<SweepPoint> points;
  EpidemicParams base;  ///< seeding and gamma; tau is overwritten per point
  std::string scaling_rule = "uniform-tau";
};

/// Auto mode computes a point exactly when the oracle budget allows and
/// falls back to Monte Carlo otherwise. Every Monte Carlo point reuses the
/// same master seed.
SweepCurve sweep(Model model, const ContactNetwork& net, const SeedingSpec& seeding,
                 const std::vector<double>& gamma, const std::vector<double>& tau_grid,
                 const SweepOptions& options = {});

enum class Concordance { Concordant, Discordant };
std::string to_string(Concordance c);

/// Discordant iff a later point lies below an earlier one by more than
/// `tolerance` plus both CI half-widths.
Concordance classify(const SweepCurve& curve, double tolerance = kExactTolerance);

/// gamma = 1, sigma = 0 and every incoming tau = 0 on the treated nodes: they
/// stay in the graph but are never infected, never transmit and never count
/// towards anyone's distancing threshold.
EpidemicParams apply_treatment(const ContactNetwork& net, const EpidemicParams& params,
                               const std::vector<NodeId>& treated);

struct TreatmentOutcome {
  ExtentEstimate before;
  ExtentEstimate after;
};

struct TreatmentOptions {
  CheckMode mode = CheckMode::Exact;
  std::size_t replications = 20000;
  std::uint64_t seed = 1;
  FleeSirOptions fleesir;
};

TreatmentOutcome treatment_experiment(const ContactNetwork& net,
                                      const std::vector<NodeId>& treated, Model model,
                                      const EpidemicParams& params,
                                      const TreatmentOptions& options = {});

struct DominatedPair {
  ContactNetwork network;
  EpidemicParams over;
  EpidemicParams under;
};

/// Random digraph on nodes "v0".."v{n-1}" (each ordered pair is an arc with
/// probability `density`) and a pair of parameter sets with over dominating
/// under. Values sit at 0 or 1 with probability 1/5 each and are uniform
/// otherwise; each delta is 0 with probability 1/2 and uniform otherwise.
DominatedPair random_dominated_pair(std::size_t n, double density, std::uint64_t seed);

}  // namespace cascadelab
