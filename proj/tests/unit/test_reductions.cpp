#include <doctest.h>

#include <cmath>

#include "cascadelab/datasets.hpp"
#include "cascadelab/error.hpp"
#include "cascadelab/io.hpp"
#include "cascadelab/monotonicity.hpp"
#include "cascadelab/oracle.hpp"
#include "cascadelab/reductions.hpp"
#include "cascadelab/rng.hpp"
#include "cascadelab/suites.hpp"

using namespace cascadelab;

namespace {

NetworkDocument doc(const char* text) { return build_from_edge_list(text, true); }

// Deterministic parameters: every value 0 or 1.
EpidemicParams binary_params(const ContactNetwork& net, std::uint64_t seed) {
  Rng rng(seed);
  auto p = EpidemicParams::uniform(net, 0.0, 0.0, 0.0);
  for (double& x : p.sigma) x = rng.uniform() < 0.3 ? 1.0 : 0.0;
  for (double& x : p.gamma) x = rng.uniform() < 0.2 ? 1.0 : 0.0;
  for (double& x : p.tau) x = rng.uniform() < 0.7 ? 1.0 : 0.0;
  return p;
}

}  // namespace

TEST_CASE("tau_to_gamma builds one helper per arc") {
  auto d = doc("s u 0.3");
  const auto r = tau_to_gamma(d.network, d.params);
  CHECK(r.network.node_count() == 3);
  CHECK(r.network.arc_count() == 2);
  REQUIRE(r.helper_nodes.size() == 1);
  const NodeId h = r.helper_nodes[0];
  CHECK(r.network.name(h) == "h:s→u");
  CHECK(r.params.gamma[h] == doctest::Approx(0.7));
  CHECK(r.params.sigma[h] == 0.0);
  CHECK(r.params.tau == std::vector<double>{1.0, 1.0});
  CHECK(r.time_dilation == 2);
  CHECK(r.extent_offset == 0.0);
  CHECK(r.counted() == std::vector<bool>{true, true, false});
  // Original nodes keep their indices and names.
  CHECK(r.network.name(0) == "s");
  CHECK(r.network.name(1) == "u");
}

TEST_CASE("tau_to_gamma preserves the two-hop path mean") {
  auto d = doc("s a 0.5\na u 0.5");
  d.params.sigma = {1.0, 0.0, 0.0};
  const auto r = tau_to_gamma(d.network, d.params);
  const auto exact = exact_sir(r.network, r.params);
  CHECK(exact.mean_over(r.counted()) == doctest::Approx(1.75).epsilon(1e-15));
  CHECK(exact.mean_extent > 1.75);  // helpers are infected too
}

TEST_CASE("sigma_to_alpha adds a certain source") {
  auto d = doc("a b 0.5");
  d.params.sigma = {0.25, 1.0};
  d.params.gamma = {0.1, 0.0};
  const auto r = sigma_to_alpha(d.network, d.params);
  REQUIRE(r.alpha.has_value());
  const NodeId al = *r.alpha;
  CHECK(r.network.name(al) == "α");
  CHECK(r.network.node_count() == 3);
  CHECK(r.params.sigma == std::vector<double>{0.0, 0.0, 1.0});
  CHECK(r.params.gamma[al] == 0.0);
  CHECK(r.params.gamma[0] == 0.1);
  CHECK(r.params.tau[*r.network.find_arc(al, 0)] == 0.25);
  CHECK(r.params.tau[*r.network.find_arc(al, 1)] == 1.0);
  CHECK(r.params.tau[*r.network.find_arc(0, 1)] == 0.5);
  CHECK(r.extent_offset == 1.0);
  CHECK(r.helper_nodes.empty());
}

TEST_CASE("sigma_to_alpha shifts deterministic trajectories by one step") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto net = random_digraph(3 + seed % 5, 0.4, seed);
    const auto params = binary_params(net, seed + 10);
    const auto r = sigma_to_alpha(net, params);
    const auto orig = simulate_sir(net, params, 1);
    const auto red = simulate_sir(r.network, r.params, 1);
    CHECK(red.extent == orig.extent + 1);
    CHECK(red.steps[0][*r.alpha] == NodeState::Infected);
    for (std::size_t t = 0; t < orig.steps.size(); ++t) {
      REQUIRE(t + 1 < red.steps.size());
      for (NodeId v = 0; v < net.node_count(); ++v) CHECK(red.steps[t + 1][v] == orig.steps[t][v]);
    }
  }
}

TEST_CASE("tau_to_gamma doubles time on deterministic trajectories") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto net = random_digraph(3 + seed % 5, 0.4, seed + 100);
    const auto params = binary_params(net, seed + 200);
    const auto r = tau_to_gamma(net, params);
    const auto orig = simulate_sir(net, params, 1);
    const auto red = simulate_sir(r.network, r.params, 1);
    CHECK(red.final_time() <= 2 * orig.final_time());
    for (std::size_t t = 0; 2 * t < red.steps.size(); ++t) {
      const auto& o = orig.steps[std::min(t, orig.final_time())];
      for (NodeId v = 0; v < net.node_count(); ++v) CHECK(red.steps[2 * t][v] == o[v]);
    }
  }
}

TEST_CASE("exact check on the diamond with random transmission") {
  const auto net = make_diamond();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    auto params = EpidemicParams::single_seed(net, net.node("a"), 0.0, 1.0);
    for (double& t : params.tau) t = rng.uniform();
    params.gamma[net.node("b")] = 0.25;
    params.gamma[net.node("e")] = 0.5;
    CHECK(count_free_decisions(net, params) == 18);
    for (ReductionKind kind : {ReductionKind::TauToGamma, ReductionKind::SigmaToAlpha}) {
      const auto v = verify_reduction(kind, net, params, CheckMode::Exact);
      CHECK(v.holds);
      CHECK(std::abs(v.reduced.mean - v.original.mean - v.expected_offset) < 1e-12);
    }
  }
}

TEST_CASE("exact check on K3 with random induction") {
  const auto net = make_complete(3);
  const auto params = EpidemicParams::uniform(net, 0.5, 0.2, 0.5);
  const auto v = verify_reduction(ReductionKind::SigmaToAlpha, net, params, CheckMode::Exact);
  CHECK(v.holds);
  CHECK(v.expected_offset == 1.0);
  CHECK(v.reduced.exact);

  const auto quiet = EpidemicParams::uniform(net, 0.5, 0.0, 0.0);
  const auto r = sigma_to_alpha(net, quiet);
  CHECK(exact_sir(r.network, r.params).mean_extent == doctest::Approx(1.0 + 1.5));
}

TEST_CASE("monte carlo check") {
  const auto net = make_diamond();
  const auto params = EpidemicParams::uniform(net, 0.2, 0.1, 0.4);
  ReductionCheckOptions opts;
  opts.replications = 20000;
  opts.seed = 5;
  for (ReductionKind kind : {ReductionKind::TauToGamma, ReductionKind::SigmaToAlpha}) {
    const auto v = verify_reduction(kind, net, params, CheckMode::MonteCarlo, opts);
    CHECK(v.holds);
    CHECK_FALSE(v.reduced.exact);
    CHECK(v.reduced.half_width_95 > 0.0);
  }
}

TEST_CASE("reductions preserve dominance") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto pair = random_dominated_pair(2 + seed % 5, 0.4, seed);
    for (ReductionKind kind : {ReductionKind::TauToGamma, ReductionKind::SigmaToAlpha}) {
      const auto over = reduce(kind, pair.network, pair.over);
      const auto under = reduce(kind, pair.network, pair.under);
      CHECK(dominates(over.params, under.params));
    }
  }
}

TEST_CASE("alpha then helpers leaves removal as the only randomness") {
  const auto net = make_complete(3);
  auto params = EpidemicParams::uniform(net, 0.5, 0.2, 0.6);
  params.sigma[2] = 0.0;
  const auto first = sigma_to_alpha(net, params);
  const auto both = tau_to_gamma(first.network, first.params);
  for (double t : both.params.tau) CHECK(t == 1.0);
  for (double s : both.params.sigma) CHECK((s == 0.0 || s == 1.0));
  const NodeId alpha = both.network.node("α");
  CHECK(both.params.sigma[alpha] == 1.0);
  const double got = exact_sir(both.network, both.params).mean_over(both.counted());
  CHECK(std::abs(got - (exact_sir(net, params).mean_extent + 1.0)) < 1e-12);
  // Each original step takes two reduced steps, plus one for the source.
  const std::size_t n = net.node_count();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    CHECK(simulate_sir(both.network, both.params, seed).final_time() <= 2 * (n + 1));
  }
}

TEST_CASE("reserved names collide") {
  auto d = doc("α x");
  CHECK_THROWS_AS(sigma_to_alpha(d.network, d.params), Error);
  auto e = doc("a b\nh:a→b c");
  CHECK_THROWS_AS(tau_to_gamma(e.network, e.params), Error);
}

TEST_CASE("reduction names") {
  CHECK(parse_reduction("tau_to_gamma") == ReductionKind::TauToGamma);
  CHECK(to_string(ReductionKind::SigmaToAlpha) == "sigma_to_alpha");
  CHECK_THROWS_AS(parse_reduction("alpha"), Error);
}
