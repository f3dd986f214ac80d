#include "cascadelab/datasets.hpp"

#include <cstdlib>
#include <numeric>
#include <string>

#include "cascadelab/error.hpp"

namespace cascadelab {

ContactNetwork make_complete(std::size_t n) {
  if (n == 0) throw Error("complete graph needs at least one node");
  NetworkBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.add_node(std::to_string(i));
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      if (u != v) b.add_arc(u, v);
    }
  }
  return std::move(b).build();
}

ContactNetwork make_diamond() {
  NetworkBuilder b;
  const char* edges[][2] = {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"b", "e"},
                            {"b", "f"}, {"c", "d"}, {"c", "e"}, {"c", "f"}};
  for (auto& [x, y] : edges) {
    b.add_arc(x, y);
    b.add_arc(y, x);
  }
  return std::move(b).build();
}

std::filesystem::path karate_path() {
  if (const char* dir = std::getenv("CASCADELAB_DATA_DIR"); dir && *dir) {
    return std::filesystem::path(dir) / "karate.edges";
  }
  return std::filesystem::path(CASCADELAB_DATA_DIR) / "karate.edges";
}

ContactNetwork load_karate_from(const std::filesystem::path& path) {
  auto doc = build_from_edge_list(read_text_file(path), /*directed=*/false);
  if (doc.network.node_count() != 34 || doc.network.arc_count() != 156) {
    throw Error("karate dataset at " + path.string() + " is corrupt: " +
                std::to_string(doc.network.node_count()) + " nodes, " +
                std::to_string(doc.network.arc_count()) + " arcs");
  }
  return std::move(doc.network);
}

ContactNetwork load_karate() { return load_karate_from(karate_path()); }

BridgeInstance make_bridge_instance() {
  NetworkBuilder b;
  auto triangle = [&b](const char* x, const char* y, const char* z) {
    for (auto [p, q] : {std::pair{x, y}, {y, z}, {x, z}}) {
      b.add_arc(p, q);
      b.add_arc(q, p);
    }
  };
  triangle("s", "x", "y");
  const ArcId bridge = b.add_arc("y", "r");
  triangle("r", "p", "q");
  BridgeInstance inst{std::move(b).build(), {}, {}};
  const NodeId s = inst.network.node("s");
  inst.params_a = EpidemicParams::single_seed(inst.network, s, 0.0, 0.9);
  inst.params_a.tau[bridge] = 0.05;
  inst.params_b = EpidemicParams::single_seed(inst.network, s, 0.0, 0.6);
  inst.params_b.tau[bridge] = 1.0;
  return inst;
}

double mean_tau(const EpidemicParams& params) {
  if (params.tau.empty()) return 0.0;
  return std::accumulate(params.tau.begin(), params.tau.end(), 0.0) /
         static_cast<double>(params.tau.size());
}

}  // namespace cascadelab
