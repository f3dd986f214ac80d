#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cascadelab/network.hpp"

namespace cascadelab {

/// One line of a verification report.
struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  ///< space separated key=value pairs

  std::string line() const;
};

struct SuiteOptions {
  std::size_t samples = 100;
  std::uint64_t seed = 7;
};

const std::vector<std::string>& suite_names();
/// Throws Error for an unknown suite name.
std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& options);

std::vector<CheckResult> verify_theorem1(const SuiteOptions& options);
std::vector<CheckResult> verify_lemma1(const SuiteOptions& options);
std::vector<CheckResult> verify_reductions(const SuiteOptions& options);
std::vector<CheckResult> verify_percolation_equivalence(const SuiteOptions& options);
std::vector<CheckResult> verify_fleesir_complete_graph(const SuiteOptions& options);

// Instance generators shared with the test suites.

/// One representative per isomorphism class of digraphs on n <= 4 nodes.
std::vector<ContactNetwork> digraph_classes(std::size_t n);

/// Random digraph on "v0".."v{n-1}"; each ordered pair is an arc with
/// probability `density`.
ContactNetwork random_digraph(std::size_t n, double density, std::uint64_t seed);

/// Single-seed instance with every arc transmitting.
struct Lemma1Instance {
  ContactNetwork network;
  NodeId source = 0;
  std::vector<double> gamma_low;
  std::vector<double> gamma_high;
};
Lemma1Instance random_lemma1_instance(std::uint64_t seed);

/// Parameters with every value drawn from {0, 0.5, 1}.
EpidemicParams random_grid_params(const ContactNetwork& net, std::uint64_t seed);

}  // namespace cascadelab
