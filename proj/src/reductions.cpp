#include "cascadelab/reductions.hpp"

#include <cmath>

#include "cascadelab/error.hpp"
#include "cascadelab/oracle.hpp"
#include "cascadelab/rng.hpp"

namespace cascadelab {

namespace {

void reserve_name(const ContactNetwork& net, const std::string& name) {
  if (net.find_node(name)) {
    throw Error("node name '" + name + "' collides with a reduction node");
  }
}

}  // namespace

std::string to_string(ReductionKind kind) {
  return kind == ReductionKind::TauToGamma ? "tau_to_gamma" : "sigma_to_alpha";
}

ReductionKind parse_reduction(std::string_view text) {
  if (text == "tau_to_gamma") return ReductionKind::TauToGamma;
  if (text == "sigma_to_alpha") return ReductionKind::SigmaToAlpha;
  throw Error("unknown reduction '" + std::string(text) + "'");
}

std::vector<bool> ReductionResult::counted() const {
  std::vector<bool> mask(network.node_count(), true);
  for (NodeId h : helper_nodes) mask[h] = false;
  return mask;
}

ReductionResult tau_to_gamma(const ContactNetwork& net, const EpidemicParams& params) {
  validate(net, params);
  NetworkBuilder b;
  for (NodeId v = 0; v < net.node_count(); ++v) b.add_node(net.name(v));

  ReductionResult out;
  out.params.sigma = params.sigma;
  out.params.gamma = params.gamma;
  for (ArcId e = 0; e < net.arc_count(); ++e) {
    const Arc& a = net.arc(e);
    std::string name = "h:" + net.name(a.from) + "→" + net.name(a.to);
    reserve_name(net, name);
    NodeId h = b.add_node(name);
    b.add_arc(a.from, h);
    b.add_arc(h, a.to);
    out.helper_nodes.push_back(h);
    out.params.sigma.push_back(0.0);
    out.params.gamma.push_back(1.0 - params.tau[e]);
    out.params.tau.push_back(1.0);
    out.params.tau.push_back(1.0);
  }
  out.network = std::move(b).build();
  out.extent_offset = 0.0;
  out.time_dilation = 2;
  return out;
}

ReductionResult sigma_to_alpha(const ContactNetwork& net, const EpidemicParams& params) {
  validate(net, params);
  const std::string alpha_name = "α";
  reserve_name(net, alpha_name);

  NetworkBuilder b;
  for (NodeId v = 0; v < net.node_count(); ++v) b.add_node(net.name(v));
  for (const Arc& a : net.arcs()) b.add_arc(a.from, a.to);
  const NodeId alpha = b.add_node(alpha_name);

  ReductionResult out;
  out.params.sigma.assign(net.node_count(), 0.0);
  out.params.sigma.push_back(1.0);
  out.params.gamma = params.gamma;
  out.params.gamma.push_back(0.0);
  out.params.tau = params.tau;
  for (NodeId v = 0; v < net.node_count(); ++v) {
    b.add_arc(alpha, v);
    out.params.tau.push_back(params.sigma[v]);
  }
  out.network = std::move(b).build();
  out.alpha = alpha;
  out.extent_offset = 1.0;
  out.time_dilation = 1;
  return out;
}

ReductionResult reduce(ReductionKind kind, const ContactNetwork& net,
                       const EpidemicParams& params) {
  return kind == ReductionKind::TauToGamma ? tau_to_gamma(net, params)
                                           : sigma_to_alpha(net, params);
}

ReductionVerdict verify_reduction(ReductionKind kind, const ContactNetwork& net,
                                  const EpidemicParams& params, CheckMode mode,
                                  const ReductionCheckOptions& options) {
  const ReductionResult reduced = reduce(kind, net, params);
  ReductionVerdict v{kind, mode, {}, {}, reduced.extent_offset, false};
  if (mode == CheckMode::Exact) {
    v.original = exact_estimate(exact_sir(net, params).mean_extent);
    v.reduced = exact_estimate(exact_sir(reduced.network, reduced.params).mean_over(reduced.counted()));
    v.holds = std::abs(v.reduced.mean - v.original.mean - v.expected_offset) <= options.tolerance;
    return v;
  }
  EstimateOptions counted;
  counted.counted = reduced.counted();
  v.original = estimate_mean_extent(Model::Sir, net, params, options.replications, options.seed);
  v.reduced = estimate_mean_extent(Model::Sir, reduced.network, reduced.params,
                                   options.replications, sub_seed(options.seed, ~0ULL), counted);
  const double lo = v.original.lower() + v.expected_offset;
  const double hi = v.original.upper() + v.expected_offset;
  v.holds = lo <= v.reduced.upper() && v.reduced.lower() <= hi;
  return v;
}

}  // namespace cascadelab
