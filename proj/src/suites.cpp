#include "cascadelab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "cascadelab/datasets.hpp"
#include "cascadelab/error.hpp"
#include "cascadelab/monotonicity.hpp"
#include "cascadelab/oracle.hpp"
#include "cascadelab/reductions.hpp"
#include "cascadelab/rng.hpp"

namespace cascadelab {

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Dominated pair whose both sides fit the exact oracle.
DominatedPair oracle_sized_pair(std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t s = sub_seed(seed, attempt);
    const std::size_t n = 2 + mix64(s) % 4;
    DominatedPair pair = random_dominated_pair(n, 0.4, s);
    if (count_free_decisions(pair.network, pair.over) <= kMaxFreeDecisions &&
        count_free_decisions(pair.network, pair.under) <= kMaxFreeDecisions) {
      return pair;
    }
  }
}

}  // namespace

std::string CheckResult::line() const {
  return "check=" + name + " status=" + (passed ? "pass" : "fail") +
         (detail.empty() ? "" : " " + detail);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"theorem1", "lemma1", "reductions",
                                              "percolation-equivalence",
                                              "fleesir-complete-graph"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& options) {
  if (name == "theorem1") return verify_theorem1(options);
  if (name == "lemma1") return verify_lemma1(options);
  if (name == "reductions") return verify_reductions(options);
  if (name == "percolation-equivalence") return verify_percolation_equivalence(options);
  if (name == "fleesir-complete-graph") return verify_fleesir_complete_graph(options);
  throw Error("unknown suite '" + name + "'");
}

ContactNetwork random_digraph(std::size_t n, double density, std::uint64_t seed) {
  Rng rng(mix64(seed));
  NetworkBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.add_node("v" + std::to_string(i));
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      if (u != v && rng.bernoulli(density)) b.add_arc(u, v);
    }
  }
  return std::move(b).build();
}

std::vector<ContactNetwork> digraph_classes(std::size_t n) {
  if (n == 0 || n > 4) throw Error("digraph classes are enumerated for 1..4 nodes");
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      if (u != v) pairs.emplace_back(u, v);
    }
  }
  auto pair_index = [&](NodeId u, NodeId v) {
    return static_cast<std::size_t>(
        std::find(pairs.begin(), pairs.end(), std::pair{u, v}) - pairs.begin());
  };
  std::vector<std::vector<NodeId>> perms;
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<ContactNetwork> out;
  const std::uint32_t total = 1U << pairs.size();
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    bool canonical = true;
    for (const auto& p : perms) {
      std::uint32_t image = 0;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (mask >> i & 1U) image |= 1U << pair_index(p[pairs[i].first], p[pairs[i].second]);
      }
      if (image < mask) {
        canonical = false;
        break;
      }
    }
    if (!canonical) continue;
    NetworkBuilder b;
    for (std::size_t i = 0; i < n; ++i) b.add_node(std::to_string(i));
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (mask >> i & 1U) b.add_arc(pairs[i].first, pairs[i].second);
    }
    out.push_back(std::move(b).build());
  }
  return out;
}

Lemma1Instance random_lemma1_instance(std::uint64_t seed) {
  Rng rng(mix64(seed ^ 0x1e3a));
  const std::size_t n = 2 + rng.below(5);
  Lemma1Instance inst{random_digraph(n, 0.45, seed), 0, {}, {}};
  inst.source = static_cast<NodeId>(rng.below(n));
  for (std::size_t v = 0; v < n; ++v) {
    const double high = rng.uniform();
    const double low = rng.bernoulli(0.3) ? high : high * rng.uniform();
    inst.gamma_high.push_back(high);
    inst.gamma_low.push_back(low);
  }
  return inst;
}

EpidemicParams random_grid_params(const ContactNetwork& net, std::uint64_t seed) {
  Rng rng(mix64(seed));
  auto pick = [&rng] { return 0.5 * static_cast<double>(rng.below(3)); };
  EpidemicParams p;
  for (std::size_t v = 0; v < net.node_count(); ++v) p.sigma.push_back(pick());
  for (std::size_t v = 0; v < net.node_count(); ++v) p.gamma.push_back(pick());
  for (std::size_t e = 0; e < net.arc_count(); ++e) p.tau.push_back(pick());
  return p;
}

std::vector<CheckResult> verify_theorem1(const SuiteOptions& options) {
  std::size_t violations = 0;
  std::size_t node_failures = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < options.samples; ++i) {
    DominatedPair pair = oracle_sized_pair(sub_seed(options.seed, i));
    ComparisonReport r = compare(Model::Sir, pair.network, pair.over, pair.under);
    if (r.verdict == Verdict::Violation) ++violations;
    if (!*r.per_node_dominance) ++node_failures;
    worst = std::min(worst, r.extent_over.mean - r.extent_under.mean);
  }
  return {{"theorem1", violations == 0 && node_failures == 0,
           "samples=" + std::to_string(options.samples) +
               " violations=" + std::to_string(violations) +
               " node_failures=" + std::to_string(node_failures) +
               " min_gap=" + sci(worst)}};
}

std::vector<CheckResult> verify_lemma1(const SuiteOptions& options) {
  std::size_t violations = 0;
  for (std::size_t i = 0; i < options.samples; ++i) {
    Lemma1Instance inst = random_lemma1_instance(sub_seed(options.seed, i));
    ComparisonReport r =
        lemma1_check(inst.network, inst.source, inst.gamma_low, inst.gamma_high);
    if (r.verdict == Verdict::Violation) ++violations;
  }
  return {{"lemma1", violations == 0,
           "samples=" + std::to_string(options.samples) +
               " violations=" + std::to_string(violations)}};
}

std::vector<CheckResult> verify_reductions(const SuiteOptions& options) {
  std::vector<CheckResult> out;
  for (ReductionKind kind : {ReductionKind::TauToGamma, ReductionKind::SigmaToAlpha}) {
    std::size_t failures = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < options.samples; ++i) {
      DominatedPair pair = oracle_sized_pair(sub_seed(options.seed, i));
      ReductionResult red = reduce(kind, pair.network, pair.under);
      if (count_free_decisions(red.network, red.params) > kMaxFreeDecisions) continue;
      ReductionVerdict v = verify_reduction(kind, pair.network, pair.under, CheckMode::Exact);
      worst = std::max(worst, std::abs(v.reduced.mean - v.original.mean - v.expected_offset));
      if (!v.holds) ++failures;
    }
    out.push_back({to_string(kind), failures == 0,
                   "samples=" + std::to_string(options.samples) +
                       " failures=" + std::to_string(failures) + " max_error=" + sci(worst)});
  }
  std::size_t lost = 0;
  for (std::size_t i = 0; i < options.samples; ++i) {
    DominatedPair pair = oracle_sized_pair(sub_seed(options.seed ^ 0xd0, i));
    for (ReductionKind kind : {ReductionKind::TauToGamma, ReductionKind::SigmaToAlpha}) {
      if (!dominates(reduce(kind, pair.network, pair.over).params,
                     reduce(kind, pair.network, pair.under).params)) {
        ++lost;
      }
    }
  }
  out.push_back({"dominance-preservation", lost == 0,
                 "samples=" + std::to_string(options.samples) + " lost=" + std::to_string(lost)});
  return out;
}

std::vector<CheckResult> verify_percolation_equivalence(const SuiteOptions& options) {
  std::size_t cases = 0;
  std::size_t mismatches = 0;
  double worst = 0.0;
  const double grid[] = {0.0, 0.5, 1.0};
  for (std::size_t n = 1; n <= 4; ++n) {
    std::uint64_t graph_no = 0;
    for (const ContactNetwork& net : digraph_classes(n)) {
      std::vector<EpidemicParams> params;
      for (double s : grid) {
        for (double g : grid) {
          for (double t : grid) params.push_back(EpidemicParams::uniform(net, s, g, t));
        }
      }
      for (std::uint64_t k = 0; k < 8; ++k) {
        params.push_back(random_grid_params(net, sub_seed(options.seed, n * 100000 + graph_no * 16 + k)));
      }
      for (const EpidemicParams& p : params) {
        ExactResult a = exact_sir(net, p);
        ExactResult b = exact_sir_dynamic(net, p);
        const double err = max_abs_diff(a.extent_distribution, b.extent_distribution);
        worst = std::max(worst, err);
        if (err > kExactTolerance) ++mismatches;
        ++cases;
      }
      ++graph_no;
    }
  }
  return {{"percolation-equivalence", mismatches == 0,
           "cases=" + std::to_string(cases) + " mismatches=" + std::to_string(mismatches) +
               " max_error=" + sci(worst)}};
}

std::vector<CheckResult> verify_fleesir_complete_graph(const SuiteOptions&) {
  double worst = 0.0;
  for (std::size_t n = 2; n <= 6; ++n) {
    const ContactNetwork net = make_complete(n);
    for (double tau : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const auto p = EpidemicParams::single_seed(net, 0, 0.0, tau);
      const double mean = exact_fleesir(net, p).mean_extent;
      worst = std::max(worst, std::abs(mean - (1.0 + tau * static_cast<double>(n - 1))));
    }
  }
  return {{"fleesir-complete-graph", worst < kExactTolerance, "max_abs_error=" + sci(worst)}};
}

}  // namespace cascadelab
