#include "cascadelab/monotonicity.hpp"

#include <algorithm>
#include <cmath>

#include "cascadelab/error.hpp"
#include "cascadelab/oracle.hpp"
#include "cascadelab/rng.hpp"

namespace cascadelab {

namespace {

Verdict exact_verdict(double over, double under) {
  const double d = over - under;
  if (d < -kExactTolerance) return Verdict::Violation;
  if (d <= kExactTolerance) return Verdict::Tied;
  return Verdict::Ordered;
}

Verdict interval_verdict(const ExtentEstimate& over, const ExtentEstimate& under) {
  if (over.mean == under.mean && over.half_width_95 == under.half_width_95) return Verdict::Tied;
  if (over.lower() > under.upper()) return Verdict::Ordered;
  if (over.upper() < under.lower()) return Verdict::Violation;
  return Verdict::Inconclusive;
}

bool node_wise_dominates(const std::vector<double>& over, const std::vector<double>& under) {
  for (std::size_t v = 0; v < over.size(); ++v) {
    if (over[v] < under[v] - kExactTolerance) return false;
  }
  return true;
}

EpidemicParams with_uniform_tau(EpidemicParams p, double tau) {
  std::fill(p.tau.begin(), p.tau.end(), tau);
  return p;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Ordered: return "ordered";
    case Verdict::Tied: return "tied";
    case Verdict::Violation: return "violation";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(Concordance c) {
  return c == Concordance::Concordant ? "concordant" : "discordant";
}

ComparisonReport compare(Model model, const ContactNetwork& net, const EpidemicParams& over,
                         const EpidemicParams& under, const CompareOptions& options) {
  validate(net, over);
  validate(net, under);
  if (!options.allow_non_dominated && !dominates(over, under)) {
    throw Error("params_over does not dominate params_under");
  }
  ComparisonReport report;
  report.context = {model, options.network_id, params_digest(over) + "/" + params_digest(under)};

  if (options.mode == CheckMode::Exact) {
    ExactResult hi = exact_model(model, net, over, options.fleesir);
    ExactResult lo = exact_model(model, net, under, options.fleesir);
    report.extent_over = exact_estimate(hi.mean_extent);
    report.extent_under = exact_estimate(lo.mean_extent);
    report.verdict = exact_verdict(hi.mean_extent, lo.mean_extent);
    report.per_node_dominance = node_wise_dominates(hi.infect_prob, lo.infect_prob);
    report.per_node_over = std::move(hi.infect_prob);
    report.per_node_under = std::move(lo.infect_prob);
    return report;
  }

  EstimateOptions est;
  est.fleesir = options.fleesir;
  MonteCarloTally hi = monte_carlo(model, net, over, options.replications, options.seed, est);
  MonteCarloTally lo = monte_carlo(model, net, under, options.replications, options.seed, est);
  report.extent_over = hi.extent;
  report.extent_under = lo.extent;
  report.verdict = interval_verdict(hi.extent, lo.extent);
  report.per_node_over = std::move(hi.node_frequency);
  report.per_node_under = std::move(lo.node_frequency);
  return report;
}

ComparisonReport lemma1_check(const ContactNetwork& net, NodeId s,
                              const std::vector<double>& gamma_low,
                              const std::vector<double>& gamma_high,
                              const CompareOptions& options) {
  if (s >= net.node_count()) throw Error("source index out of range");
  if (gamma_low.size() != net.node_count() || gamma_high.size() != net.node_count()) {
    throw Error("gamma does not match the network");
  }
  for (std::size_t v = 0; v < gamma_low.size(); ++v) {
    if (gamma_low[v] > gamma_high[v]) {
      throw Error("lemma hypotheses violated: gamma_low exceeds gamma_high at node " +
                  net.name(static_cast<NodeId>(v)));
    }
  }
  EpidemicParams low = EpidemicParams::single_seed(net, s, 0.0, 1.0);
  EpidemicParams high = low;
  low.gamma = gamma_low;
  high.gamma = gamma_high;

  CompareOptions opts = options;
  opts.allow_non_dominated = false;
  ComparisonReport report = compare(Model::Sir, net, low, high, opts);
  if (options.mode == CheckMode::Exact) {
    const auto& a = *report.per_node_over;
    const auto& b = *report.per_node_under;
    bool all_tied = true;
    for (std::size_t v = 0; v < a.size(); ++v) {
      if (std::abs(a[v] - b[v]) > kExactTolerance) all_tied = false;
    }
    report.verdict = !*report.per_node_dominance ? Verdict::Violation
                     : all_tied                  ? Verdict::Tied
                                                 : Verdict::Ordered;
  }
  return report;
}

SweepCurve sweep(Model model, const ContactNetwork& net, const SeedingSpec& seeding,
                 const std::vector<double>& gamma, const std::vector<double>& tau_grid,
                 const SweepOptions& options) {
  if (tau_grid.empty()) throw Error("tau grid is empty");
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    if (!(tau_grid[i] >= 0.0 && tau_grid[i] <= 1.0)) throw Error("tau grid value outside [0,1]");
    if (i > 0 && !(tau_grid[i] > tau_grid[i - 1])) throw Error("tau grid must increase");
  }

  SweepCurve curve;
  curve.base = EpidemicParams::uniform(net, 0.0, 0.0, 0.0);
  curve.base.gamma = gamma;
  switch (seeding.kind) {
    case SeedingSpec::Kind::Node:
      if (seeding.node >= net.node_count()) throw Error("seed node out of range");
      curve.base.sigma[seeding.node] = 1.0;
      break;
    case SeedingSpec::Kind::Sigma: curve.base.sigma = seeding.sigma; break;
    case SeedingSpec::Kind::UniformSingle: break;
  }
  validate(net, curve.base);
  const bool uniform = seeding.kind == SeedingSpec::Kind::UniformSingle;

  auto exact_point = [&](const EpidemicParams& p) {
    ExactResult r = uniform ? exact_uniform_seed(model, net, p, options.fleesir)
                            : exact_model(model, net, p, options.fleesir);
    return exact_estimate(r.mean_extent);
  };
  auto mc_point = [&](const EpidemicParams& p) {
    EstimateOptions est;
    est.fleesir = options.fleesir;
    est.seeding = uniform ? Seeding::UniformSingle : Seeding::FromSigma;
    return estimate_mean_extent(model, net, p, options.replications, options.seed, est);
  };

  for (double tau : tau_grid) {
    const EpidemicParams p = with_uniform_tau(curve.base, tau);
    ExtentEstimate e;
    switch (options.mode) {
      case SweepMode::Exact: e = exact_point(p); break;
      case SweepMode::MonteCarlo: e = mc_point(p); break;
      case SweepMode::Auto:
        try {
          e = exact_point(p);
        } catch (const BudgetExceeded&) {
          e = mc_point(p);
        }
        break;
    }
    curve.points.push_back({tau, e});
  }
  return curve;
}

Concordance classify(const SweepCurve& curve, double tolerance) {
  const auto& pts = curve.points;
  for (std::size_t j = 1; j < pts.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const double slack =
          tolerance + pts[i].estimate.half_width_95 + pts[j].estimate.half_width_95;
      if (pts[j].estimate.mean < pts[i].estimate.mean - slack) return Concordance::Discordant;
    }
  }
  return Concordance::Concordant;
}

EpidemicParams apply_treatment(const ContactNetwork& net, const EpidemicParams& params,
                               const std::vector<NodeId>& treated) {
  validate(net, params);
  EpidemicParams out = params;
  for (NodeId v : treated) {
    if (v >= net.node_count()) throw Error("treated node out of range");
    out.sigma[v] = 0.0;
    out.gamma[v] = 1.0;
    for (ArcId e : net.in_arcs(v)) out.tau[e] = 0.0;
  }
  return out;
}

TreatmentOutcome treatment_experiment(const ContactNetwork& net,
                                      const std::vector<NodeId>& treated, Model model,
                                      const EpidemicParams& params,
                                      const TreatmentOptions& options) {
  const EpidemicParams after = apply_treatment(net, params, treated);
  auto evaluate = [&](const EpidemicParams& p) {
    if (options.mode == CheckMode::Exact) {
      return exact_estimate(exact_model(model, net, p, options.fleesir).mean_extent);
    }
    EstimateOptions est;
    est.fleesir = options.fleesir;
    return estimate_mean_extent(model, net, p, options.replications, options.seed, est);
  };
  return {evaluate(params), evaluate(after)};
}

DominatedPair random_dominated_pair(std::size_t n, double density, std::uint64_t seed) {
  if (n == 0) throw Error("random graph needs at least one node");
  Rng rng(mix64(seed));
  NetworkBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.add_node("v" + std::to_string(i));
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      if (u != v && rng.bernoulli(density)) b.add_arc(u, v);
    }
  }
  DominatedPair pair{std::move(b).build(), {}, {}};

  auto value = [&rng] {
    const double pick = rng.uniform();
    if (pick < 0.2) return 0.0;
    if (pick < 0.4) return 1.0;
    return rng.uniform();
  };
  auto delta = [&rng] { return rng.bernoulli(0.5) ? 0.0 : rng.uniform(); };

  EpidemicParams& under = pair.under;
  EpidemicParams& over = pair.over;
  for (std::size_t v = 0; v < n; ++v) {
    under.sigma.push_back(value());
    under.gamma.push_back(value());
  }
  for (std::size_t e = 0; e < pair.network.arc_count(); ++e) under.tau.push_back(value());
  over = under;
  for (double& x : over.sigma) x = std::min(1.0, x + delta());
  for (double& x : over.gamma) x = std::max(0.0, x - delta());
  for (double& x : over.tau) x = std::min(1.0, x + delta());
  return pair;
}

}  // namespace cascadelab
