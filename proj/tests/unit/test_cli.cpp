#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cascadelab/cli.hpp"
#include "cascadelab/error.hpp"
#include "cascadelab/io.hpp"

using namespace cascadelab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct Row {
  double tau, mean, hw;
  std::size_t reps;
};

std::vector<Row> parse_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "tau,mean_extent,ci_half_width,replications,model,network,seed");
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    Row r{};
    std::istringstream ls(line);
    std::string f;
    std::getline(ls, f, ',');
    r.tau = std::stod(f);
    std::getline(ls, f, ',');
    r.mean = std::stod(f);
    std::getline(ls, f, ',');
    r.hw = std::stod(f);
    std::getline(ls, f, ',');
    r.reps = std::stoul(f);
    rows.push_back(r);
  }
  return rows;
}

fs::path tmp_dir() {
  fs::path dir = fs::path(CASCADELAB_TEST_TMP) / "cli";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("sweep: 2FleeSIR on the diamond rises then falls") {
  const auto r = run({"sweep", "--network", "diamond", "--model", "fleesir", "--seed-node", "a",
                      "--gamma", "0", "--tau-grid", "0:1:0.1", "--reps", "20000", "--seed", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find(",fleesir,diamond,1\n") != std::string::npos);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 11);
  CHECK(rows.back().tau == 1.0);
  CHECK(rows.back().mean == 3.0);
  CHECK(rows.back().hw == 0.0);
  CHECK(rows.front().mean == 1.0);
  double peak = 0.0;
  for (const auto& row : rows) peak = std::max(peak, row.mean - row.hw);
  CHECK(peak > 3.0);
}

TEST_CASE("sweep: SIR on the diamond rises within sampling error") {
  const auto r = run({"sweep", "--network", "diamond", "--seed-node", "a", "--tau-grid",
                      "0:1:0.1", "--reps", "20000"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 11);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].mean >= rows[i - 1].mean - rows[i].hw - rows[i - 1].hw);
  }
  CHECK(rows.back().mean == 6.0);
}

TEST_CASE("sweep: exact mode prints zero-width intervals") {
  const auto r = run({"sweep", "--network", "diamond", "--seed-node", "a", "--tau-grid",
                      "0,0.5,1", "--mode", "exact"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].mean == 3.765625);
  CHECK(rows[1].hw == 0.0);
  CHECK(rows[1].reps == 0);
}

TEST_CASE("sweep: complete graph under 2FleeSIR tracks 1 + tau (n - 1)") {
  const auto r = run({"sweep", "--network", "complete:100", "--model", "fleesir",
                      "--single-seed-uniform", "--tau-grid", "0.1,0.3", "--reps", "5000"});
  REQUIRE(r.code == 0);
  for (const auto& row : parse_csv(r.out)) {
    CHECK(std::abs(row.mean - (1.0 + 99.0 * row.tau)) <= row.hw);
  }
}

TEST_CASE("sweep: output file is byte identical across runs") {
  const auto dir = tmp_dir();
  const std::vector<std::string> base{"sweep", "--network", "karate", "--single-seed-uniform",
                                      "--tau-grid", "0:0.5:0.25", "--reps", "3000", "--seed", "4"};
  auto a = base;
  a.insert(a.end(), {"--out", (dir / "a.csv").string()});
  auto b = base;
  b.insert(b.end(), {"--out", (dir / "b.csv").string()});
  REQUIRE(run(a).code == 0);
  REQUIRE(run(b).code == 0);
  const auto ta = read_text_file(dir / "a.csv");
  CHECK(ta == read_text_file(dir / "b.csv"));
  CHECK(ta == run(base).out);
  CHECK_FALSE(fs::exists(dir / "a.csv.tmp"));
}

TEST_CASE("sweep: config file supplies defaults and flags win") {
  const auto dir = tmp_dir();
  const auto cfg = dir / "sweep.ini";
  std::ofstream(cfg) << "[sweep]\nnetwork=diamond\nseed-node=a\ntau-grid=\"0,1\"\nmode=exact\nmodel=fleesir\n";
  const auto r = run({"--config", cfg.string(), "sweep"});
  REQUIRE(r.code == 0);
  auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].mean == 3.0);

  const auto over = run({"--config", cfg.string(), "sweep", "--model", "sir"});
  REQUIRE(over.code == 0);
  rows = parse_csv(over.out);
  CHECK(rows[1].mean == 6.0);
}

TEST_CASE("sweep: usage errors exit with 2") {
  CHECK(run({"sweep", "--network", "diamond", "--tau-grid", "0,1"}).code == 2);  // no seeding
  CHECK(run({"sweep", "--network", "diamond", "--seed-node", "zz"}).code == 2);
  CHECK(run({"sweep", "--network", "diamond", "--seed-node", "a", "--tau-grid", "1,0"}).code == 2);
  CHECK(run({"sweep", "--network", "diamond", "--seed-node", "a", "--model", "seir"}).code == 2);
  CHECK(run({"sweep", "--network", "/nonexistent.edges", "--seed-node", "a"}).code == 2);
  CHECK(run({"sweep", "--network", "diamond", "--seed-node", "a", "--tau-grid", "0.5", "--out",
             "/nonexistent-dir/x.csv"})
            .code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
}

TEST_CASE("verify: suites pass and report one line per check") {
  const auto r = run({"verify", "theorem1", "--samples", "100", "--seed", "7"});
  CHECK(r.code == 0);
  CHECK(r.out.find("status=pass") != std::string::npos);
  CHECK(r.out.find("status=fail") == std::string::npos);
  const auto k = run({"verify", "fleesir-complete-graph"});
  CHECK(k.code == 0);
  const auto p = run({"verify", "percolation-equivalence", "--samples", "5"});
  CHECK(p.code == 0);
  CHECK(run({"verify", "nope"}).code == 2);
}

TEST_CASE("reduce: tau_to_gamma and sigma_to_alpha files") {
  const auto dir = tmp_dir();
  const auto edges = dir / "pair.edges";
  std::ofstream(edges) << "s u 0.3\n";
  const auto prefix = (dir / "red").string();
  const auto r = run({"reduce", "tau_to_gamma", "--network", edges.string(), "--out", prefix});
  REQUIRE(r.code == 0);
  auto reduced = build_from_edge_list(read_text_file(prefix + ".edges"), true);
  CHECK(reduced.network.node_count() == 3);
  apply_params(read_text_file(prefix + ".params"), reduced.network, reduced.params);
  const NodeId h = reduced.network.node("h:s→u");
  CHECK(reduced.params.gamma[h] == doctest::Approx(0.7));
  CHECK(read_text_file(prefix + ".params").find("h:s→u 0 0.7") != std::string::npos);

  const auto params = dir / "pair.params";
  std::ofstream(params) << "s 0.5 0\n";
  const auto a = run({"reduce", "sigma_to_alpha", "--network", edges.string(), "--params",
                      params.string()});
  REQUIRE(a.code == 0);
  CHECK(a.out.find("α s 0.5\n") != std::string::npos);
  CHECK(a.out.find("α u 0\n") != std::string::npos);
  CHECK(a.out.find("α 1 0\n") != std::string::npos);
}

TEST_CASE("simulate and generate") {
  const auto r = run({"simulate", "--network", "diamond", "--model", "fleesir", "--seed-node",
                      "a", "--tau", "1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("0: S={b,c,d,e,f} I={a} R={} D={}\n") == 0);
  CHECK(r.out.find("extent=3 T=2\n") != std::string::npos);
  const auto p = run({"simulate", "--network", "diamond", "--seed-node", "a", "--tau", "1",
                      "--percolation"});
  CHECK(p.out == "infected={a,b,c,d,e,f}\nextent=6\n");
  const auto g = run({"generate", "--network", "complete:3"});
  REQUIRE(g.code == 0);
  CHECK(build_from_edge_list(g.out, true).network.arc_count() == 6);
}

TEST_CASE("tau grid parsing") {
  const auto g = cli::parse_tau_grid("0:1:0.05");
  CHECK(g.size() == 21);
  CHECK(g.back() == 1.0);
  CHECK(cli::parse_tau_grid("0.2,0.4") == std::vector<double>{0.2, 0.4});
  CHECK(cli::parse_tau_grid("0.3") == std::vector<double>{0.3});
  CHECK_THROWS_AS(cli::parse_tau_grid("0:1"), Error);
  CHECK_THROWS_AS(cli::parse_tau_grid("0:1:0"), Error);
  CHECK_THROWS_AS(cli::parse_tau_grid("a,b"), Error);
}
