#include <doctest.h>

#include <omp.h>

#include "cascadelab/datasets.hpp"
#include "cascadelab/engine.hpp"
#include "cascadelab/oracle.hpp"

using namespace cascadelab;

namespace {

struct ThreadCount {
  int saved = omp_get_max_threads();
  explicit ThreadCount(int n) { omp_set_num_threads(n); }
  ~ThreadCount() { omp_set_num_threads(saved); }
};

}  // namespace

TEST_CASE("parallel monte carlo matches the serial reference bit for bit") {
  ThreadCount threads(4);
  const auto net = load_karate();
  const auto params = EpidemicParams::uniform(net, 0.0, 0.1, 0.3);
  EstimateOptions opts;
  opts.seeding = Seeding::UniformSingle;
  for (Model model : {Model::Sir, Model::FleeSir}) {
    for (std::size_t reps : {1u, 7u, 3001u}) {
      const auto par = monte_carlo(model, net, params, reps, 17, opts);
      const auto ser = monte_carlo_serial(model, net, params, reps, 17, opts);
      CHECK(par.extent.mean == ser.extent.mean);
      CHECK(par.extent.half_width_95 == ser.extent.half_width_95);
      CHECK(par.extent.replications == ser.extent.replications);
      CHECK(par.node_frequency == ser.node_frequency);
    }
  }
}

TEST_CASE("parallel enumeration matches the serial reference bit for bit") {
  ThreadCount threads(4);
  for (std::size_t n : {2u, 3u, 4u}) {
    const auto net = make_complete(n);
    const auto params = EpidemicParams::uniform(net, 0.5, 0.25, 0.5);
    const auto par = exact_sir(net, params);
    const auto ser = exact_sir_serial(net, params);
    CHECK(par.mean_extent == ser.mean_extent);
    CHECK(par.extent_distribution == ser.extent_distribution);
    CHECK(par.infect_prob == ser.infect_prob);
    CHECK(par.outcomes == ser.outcomes);
  }
}

TEST_CASE("results do not depend on the thread count") {
  const auto net = make_diamond();
  const auto params = EpidemicParams::uniform(net, 0.2, 0.1, 0.6);
  MonteCarloTally one;
  ExactResult exact_one;
  {
    ThreadCount t(1);
    one = monte_carlo(Model::FleeSir, net, params, 5000, 9);
    exact_one = exact_sir(net, EpidemicParams::single_seed(net, 0, 0.1, 0.6));
  }
  ThreadCount t(3);
  const auto three = monte_carlo(Model::FleeSir, net, params, 5000, 9);
  CHECK(one.extent.mean == three.extent.mean);
  CHECK(one.node_frequency == three.node_frequency);
  CHECK(exact_sir(net, EpidemicParams::single_seed(net, 0, 0.1, 0.6)).infect_prob == exact_one.infect_prob);
}
