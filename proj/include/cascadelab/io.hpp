#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "cascadelab/network.hpp"

namespace cascadelab {

/// A network together with the parameters read alongside it. Edge lists carry
/// only tau, so sigma and gamma default to 0 and a missing tau to 1.
struct NetworkDocument {
  ContactNetwork network;
  EpidemicParams params;
};

/// Edge-list format: one record per line, '#' starts a comment.
///   u v        arc u->v with tau 1
///   u v tau    arc u->v with the given tau
///   u          declares node u (keeps isolated nodes and node order)
/// With `directed == false` every edge produces both arcs with equal tau.
/// Throws ParseError carrying the offending line number.
NetworkDocument build_from_edge_list(std::string_view text, bool directed);

/// Deterministic serialization: node declarations in index order, then one
/// "u v tau" line per arc in arc order. Reading it back with directed=true
/// reproduces the node and arc sequences exactly.
std::string write_edge_list(const ContactNetwork& net, const EpidemicParams& params);

/// Params format: lines "v sigma gamma"; nodes not listed keep their values.
void apply_params(std::string_view text, const ContactNetwork& net, EpidemicParams& params);
std::string write_params(const ContactNetwork& net, const EpidemicParams& params);

/// Shortest decimal text that parses back to the same double.
std::string format_real(double x);

std::string read_text_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it into place.
void write_text_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace cascadelab
