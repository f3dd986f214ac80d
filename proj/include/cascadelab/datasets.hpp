#pragma once

#include <cstddef>
#include <filesystem>

#include "cascadelab/io.hpp"
#include "cascadelab/network.hpp"

namespace cascadelab {

/// Complete digraph on nodes "0".."n-1": every ordered pair is an arc.
ContactNetwork make_complete(std::size_t n);

/// Six-node Diamond: a-b, a-c and {b,c} x {d,e,f}, every edge as two arcs.
/// Node order a..f; arcs for each edge are emitted back to back.
ContactNetwork make_diamond();

/// Zachary's karate club, read from the bundled edge list (undirected).
ContactNetwork load_karate();
ContactNetwork load_karate_from(const std::filesystem::path& path);
/// $CASCADELAB_DATA_DIR/karate.edges when set, else the source tree copy.
std::filesystem::path karate_path();

/// Two triangles joined by one bridge arc, with two parameter sets: set A has
/// the higher arc-averaged tau but starves the bridge, so its mean extent is
/// lower than set B's. Both seed node "s" with gamma = 0.
struct BridgeInstance {
  ContactNetwork network;
  EpidemicParams params_a;
  EpidemicParams params_b;
};
BridgeInstance make_bridge_instance();

double mean_tau(const EpidemicParams& params);

}  // namespace cascadelab
