#include "cascadelab/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "cascadelab/datasets.hpp"
#include "cascadelab/error.hpp"
#include "cascadelab/io.hpp"
#include "cascadelab/monotonicity.hpp"
#include "cascadelab/reductions.hpp"
#include "cascadelab/suites.hpp"

namespace cascadelab::cli {

namespace {

struct Loaded {
  std::string id;
  ContactNetwork network;
  EpidemicParams params;
};

bool starts_with(const std::string& s, std::string_view prefix) {
  return s.rfind(prefix, 0) == 0;
}

std::size_t parse_count(const std::string& text, const std::string& what) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw Error("invalid " + what + " '" + text + "'");
  }
}

double parse_real(const std::string& text, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error("invalid " + what + " '" + text + "'");
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, sep)) parts.push_back(part);
  return parts;
}

/// Builtins: diamond, karate, bridge, complete:N, random:N:DENSITY:SEED;
/// anything else is an edge-list path.
Loaded load_network(const std::string& spec, bool undirected, const std::string& params_path) {
  Loaded l;
  l.id = spec;
  if (spec == "diamond") {
    l.network = make_diamond();
  } else if (spec == "karate") {
    l.network = load_karate();
  } else if (spec == "bridge") {
    BridgeInstance b = make_bridge_instance();
    l.network = std::move(b.network);
    l.params = std::move(b.params_a);
  } else if (starts_with(spec, "complete:")) {
    l.network = make_complete(parse_count(spec.substr(9), "node count"));
  } else if (starts_with(spec, "random:")) {
    auto parts = split(spec.substr(7), ':');
    if (parts.size() != 3) throw Error("expected random:N:DENSITY:SEED");
    l.network = random_digraph(parse_count(parts[0], "node count"),
                               parse_real(parts[1], "density"), parse_count(parts[2], "seed"));
  } else {
    NetworkDocument doc = build_from_edge_list(read_text_file(spec), !undirected);
    l.network = std::move(doc.network);
    l.params = std::move(doc.params);
    l.id = std::filesystem::path(spec).filename().string();
  }
  if (l.params.sigma.empty()) {
    l.params = EpidemicParams::uniform(l.network, 0.0, 0.0, 1.0);
  }
  if (!params_path.empty()) apply_params(read_text_file(params_path), l.network, l.params);
  return l;
}

std::string fmt_g(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file_atomic(path, text);
  }
}

struct NetworkArgs {
  std::string network;
  bool undirected = false;
  std::string params;

  void attach(CLI::App* app, bool required = true) {
    auto* opt = app->add_option("--network", network,
                                "diamond | karate | bridge | complete:N | random:N:P:SEED | edge-list path");
    if (required) opt->required();
    app->add_flag("--undirected", undirected, "Read the edge-list file as undirected");
    app->add_option("--params", params, "Params file with lines 'v sigma gamma'");
  }
};

struct EpidemicArgs {
  std::string model = "sir";
  std::string seed_node;
  bool uniform_seed = false;
  std::optional<double> gamma;
  std::size_t threshold = 2;
  std::string trigger = "ever";

  void attach(CLI::App* app) {
    app->add_option("--model", model, "sir | fleesir")
        ->check(CLI::IsMember({"sir", "fleesir"}));
    app->add_option("--seed-node", seed_node, "Start every epidemic at this node");
    app->add_flag("--single-seed-uniform", uniform_seed,
                  "Start each replication at one uniformly chosen node");
    app->add_option("--gamma", gamma, "Uniform removal probability")
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("--threshold", threshold, "2FleeSIR distancing threshold")
        ->check(CLI::PositiveNumber);
    app->add_option("--trigger", trigger, "ever | current: which infected neighbours count")
        ->check(CLI::IsMember({"ever", "current"}));
  }

  FleeSirOptions fleesir() const {
    return {threshold, trigger == "ever" ? DistancingTrigger::EverInfected
                                         : DistancingTrigger::CurrentlyInfected};
  }

  /// Applies gamma and node seeding to `l.params`; returns the seeding kind.
  SeedingSpec seeding(Loaded& l, bool params_given) const {
    if (gamma) std::fill(l.params.gamma.begin(), l.params.gamma.end(), *gamma);
    if (!seed_node.empty() && uniform_seed) {
      throw Error("--seed-node and --single-seed-uniform are exclusive");
    }
    if (!seed_node.empty()) return SeedingSpec::at(l.network.node(seed_node));
    if (uniform_seed) return SeedingSpec::uniform_single();
    if (!params_given) {
      throw Error("no seeding given: use --seed-node, --single-seed-uniform or --params");
    }
    return SeedingSpec::from_sigma(l.params.sigma);
  }
};

int cmd_sweep(const NetworkArgs& na, const EpidemicArgs& ea, const std::string& grid,
              std::size_t reps, std::uint64_t seed, const std::string& mode,
              const std::string& out_path, std::ostream& out) {
  Loaded l = load_network(na.network, na.undirected, na.params);
  const SeedingSpec seeding = ea.seeding(l, !na.params.empty());
  SweepOptions opts;
  opts.replications = reps;
  opts.seed = seed;
  opts.fleesir = ea.fleesir();
  opts.mode = mode == "exact" ? SweepMode::Exact
              : mode == "auto" ? SweepMode::Auto
                               : SweepMode::MonteCarlo;
  const Model model = parse_model(ea.model);
  SweepCurve curve = sweep(model, l.network, seeding, l.params.gamma, parse_tau_grid(grid), opts);

  std::string csv = "tau,mean_extent,ci_half_width,replications,model,network,seed\n";
  for (const SweepPoint& p : curve.points) {
    csv += fmt_g(p.tau) + ',' + fmt_g(p.estimate.mean) + ',' + fmt_g(p.estimate.half_width_95) +
           ',' + std::to_string(p.estimate.replications) + ',' + ea.model + ',' + l.id + ',' +
           std::to_string(seed) + '\n';
  }
  emit(csv, out_path, out);
  return kExitOk;
}

int cmd_simulate(const NetworkArgs& na, const EpidemicArgs& ea, std::optional<double> tau,
                 std::uint64_t seed, bool percolation, std::ostream& out) {
  Loaded l = load_network(na.network, na.undirected, na.params);
  const SeedingSpec seeding = ea.seeding(l, !na.params.empty());
  if (tau) std::fill(l.params.tau.begin(), l.params.tau.end(), *tau);
  Seeding mode = Seeding::FromSigma;
  if (seeding.kind == SeedingSpec::Kind::Node) {
    std::fill(l.params.sigma.begin(), l.params.sigma.end(), 0.0);
    l.params.sigma[seeding.node] = 1.0;
  } else if (seeding.kind == SeedingSpec::Kind::UniformSingle) {
    mode = Seeding::UniformSingle;
  }
  if (percolation) {
    auto infected = sample_sir_percolation(l.network, l.params, seed, mode);
    out << "infected={";
    for (std::size_t i = 0; i < infected.size(); ++i) {
      out << (i ? "," : "") << l.network.name(infected[i]);
    }
    out << "}\nextent=" << infected.size() << '\n';
    return kExitOk;
  }
  TrajectoryRecord rec = parse_model(ea.model) == Model::Sir
                             ? simulate_sir(l.network, l.params, seed, mode)
                             : simulate_fleesir(l.network, l.params, seed, ea.fleesir(), mode);
  out << rec.to_text(l.network) << "extent=" << rec.extent << " T=" << rec.final_time() << '\n';
  return kExitOk;
}

int cmd_reduce(const std::string& kind, const NetworkArgs& na, const std::string& prefix,
               std::ostream& out) {
  Loaded l = load_network(na.network, na.undirected, na.params);
  ReductionResult r = reduce(parse_reduction(kind), l.network, l.params);
  const std::string edges = write_edge_list(r.network, r.params);
  const std::string params = write_params(r.network, r.params);
  if (prefix.empty() || prefix == "-") {
    out << "# edges\n" << edges << "# params\n" << params;
  } else {
    write_text_file_atomic(prefix + ".edges", edges);
    write_text_file_atomic(prefix + ".params", params);
    out << "wrote " << prefix << ".edges and " << prefix << ".params ("
        << r.network.node_count() << " nodes, " << r.network.arc_count() << " arcs, "
        << r.helper_nodes.size() << " helpers, extent offset " << r.extent_offset << ")\n";
  }
  return kExitOk;
}

int cmd_verify(const std::string& suite, const SuiteOptions& opts, std::ostream& out) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = suite_names();
  } else {
    names.push_back(suite);
  }
  bool ok = true;
  for (const std::string& name : names) {
    for (const CheckResult& r : run_suite(name, opts)) {
      out << r.line() << '\n';
      ok = ok && r.passed;
    }
  }
  return ok ? kExitOk : kExitVerificationFailed;
}

}  // namespace

std::vector<double> parse_tau_grid(const std::string& text) {
  std::vector<double> grid;
  if (text.find(':') != std::string::npos) {
    auto parts = split(text, ':');
    if (parts.size() != 3) throw Error("tau grid must be start:stop:step");
    const double start = parse_real(parts[0], "tau grid start");
    const double stop = parse_real(parts[1], "tau grid stop");
    const double step = parse_real(parts[2], "tau grid step");
    if (!(step > 0.0)) throw Error("tau grid step must be positive");
    for (std::size_t k = 0;; ++k) {
      double v = start + static_cast<double>(k) * step;
      if (v > stop + 1e-9) break;
      if (std::abs(v - stop) <= 1e-9) v = stop;
      grid.push_back(v);
    }
  } else {
    for (const std::string& part : split(text, ',')) grid.push_back(parse_real(part, "tau"));
  }
  if (grid.empty()) throw Error("tau grid is empty");
  return grid;
}

void apply_thread_cap() {
  const char* cap = std::getenv("CASCADELAB_THREADS");
  if (!cap || !*cap) return;
  char* end = nullptr;
  const long n = std::strtol(cap, &end, 10);
  if (*end == '\0' && n > 0) omp_set_num_threads(static_cast<int>(n));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulation and exact verification of SIR and 2FleeSIR epidemics on networks",
               "cascadelab"};
  app.set_config("--config", "", "key=value config file with [subcommand] sections");
  app.require_subcommand(1);

  std::function<int()> action;

  NetworkArgs sweep_net;
  EpidemicArgs sweep_epi;
  std::string grid = "0:1:0.05";
  std::size_t reps = 20000;
  std::uint64_t seed = 1;
  std::string mode = "mc";
  std::string out_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "Mean extent over a uniform tau grid as CSV");
  sweep_net.attach(sweep_cmd);
  sweep_epi.attach(sweep_cmd);
  sweep_cmd->add_option("--tau-grid", grid, "start:stop:step, a,b,c, or a single value");
  sweep_cmd->add_option("--reps", reps, "Monte Carlo replications")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--seed", seed, "Master seed");
  sweep_cmd->add_option("--mode", mode, "mc | exact | auto")
      ->check(CLI::IsMember({"mc", "exact", "auto"}));
  sweep_cmd->add_option("--out", out_path, "CSV path (default: stdout)");
  sweep_cmd->callback([&] {
    action = [&] { return cmd_sweep(sweep_net, sweep_epi, grid, reps, seed, mode, out_path, out); };
  });

  NetworkArgs sim_net;
  EpidemicArgs sim_epi;
  std::optional<double> sim_tau;
  std::uint64_t sim_seed = 1;
  bool percolation = false;
  auto* sim_cmd = app.add_subcommand("simulate", "Print one epidemic trajectory");
  sim_net.attach(sim_cmd);
  sim_epi.attach(sim_cmd);
  sim_cmd->add_option("--tau", sim_tau, "Uniform transmission probability")
      ->check(CLI::Range(0.0, 1.0));
  sim_cmd->add_option("--seed", sim_seed, "Random seed");
  sim_cmd->add_flag("--percolation", percolation,
                    "Sample the deferred-decision form and print the final infected set");
  sim_cmd->callback([&] {
    action = [&] { return cmd_simulate(sim_net, sim_epi, sim_tau, sim_seed, percolation, out); };
  });

  std::string suite;
  SuiteOptions suite_opts;
  auto* verify_cmd = app.add_subcommand("verify", "Run an invariant suite with the exact oracle");
  std::vector<std::string> choices = suite_names();
  choices.push_back("all");
  verify_cmd->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(choices));
  verify_cmd->add_option("--samples", suite_opts.samples, "Random instances per check")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", suite_opts.seed, "Master seed");
  verify_cmd->callback([&] { action = [&] { return cmd_verify(suite, suite_opts, out); }; });

  std::string kind;
  NetworkArgs red_net;
  std::string prefix;
  auto* reduce_cmd = app.add_subcommand("reduce", "Write a reduced instance as .edges/.params");
  reduce_cmd->add_option("kind", kind, "tau_to_gamma | sigma_to_alpha")
      ->required()
      ->check(CLI::IsMember({"tau_to_gamma", "sigma_to_alpha"}));
  red_net.attach(reduce_cmd);
  reduce_cmd->add_option("--out", prefix, "Output prefix (default: stdout)");
  reduce_cmd->callback([&] { action = [&] { return cmd_reduce(kind, red_net, prefix, out); }; });

  NetworkArgs gen_net;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("generate", "Write a builtin or random network");
  gen_net.attach(gen_cmd);
  gen_cmd->add_option("--out", gen_out, "Edge-list path (default: stdout)");
  gen_cmd->callback([&] {
    action = [&] {
      Loaded l = load_network(gen_net.network, gen_net.undirected, gen_net.params);
      emit(write_edge_list(l.network, l.params), gen_out, out);
      return kExitOk;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    return action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace cascadelab::cli
