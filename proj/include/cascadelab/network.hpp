#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cascadelab {

using NodeId = std::uint32_t;
using ArcId = std::uint32_t;

struct Arc {
  NodeId from;
  NodeId to;
};

enum class NodeState : std::uint8_t { Susceptible, Infected, Removed, Distanced };

char state_letter(NodeState s);

/// Immutable directed contact network. Nodes carry external string names and
/// dense indices in insertion order; arcs keep insertion order as well, and
/// the in/out adjacency lists preserve that order.
class ContactNetwork {
 public:
  ContactNetwork() = default;

  std::size_t node_count() const { return names_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }

  const std::string& name(NodeId v) const { return names_.at(v); }
  std::span<const std::string> names() const { return names_; }
  std::optional<NodeId> find_node(std::string_view name) const;
  /// Throws Error for an unknown name.
  NodeId node(std::string_view name) const;

  const Arc& arc(ArcId e) const { return arcs_[e]; }
  std::span<const Arc> arcs() const { return arcs_; }
  std::optional<ArcId> find_arc(NodeId from, NodeId to) const;

  std::span<const ArcId> out_arcs(NodeId v) const {
    return {out_arcs_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
  }
  std::span<const ArcId> in_arcs(NodeId v) const {
    return {in_arcs_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
  }
  std::size_t out_degree(NodeId v) const { return out_arcs(v).size(); }
  std::size_t in_degree(NodeId v) const { return in_arcs(v).size(); }

 private:
  friend class NetworkBuilder;

  std::vector<std::string> names_;
  std::map<std::string, NodeId, std::less<>> index_;
  std::vector<Arc> arcs_;
  std::unordered_map<std::uint64_t, ArcId> arc_index_;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<std::size_t> in_offsets_{0};
  std::vector<ArcId> out_arcs_;
  std::vector<ArcId> in_arcs_;
};

class NetworkBuilder {
 public:
  /// Returns the existing index when the name is already known.
  NodeId add_node(std::string_view name);
  /// Throws on self-loops and duplicate arcs.
  ArcId add_arc(NodeId from, NodeId to);
  ArcId add_arc(std::string_view from, std::string_view to) {
    const NodeId u = add_node(from);
    const NodeId v = add_node(to);
    return add_arc(u, v);
  }
  std::optional<ArcId> find_arc(NodeId from, NodeId to) const;
  std::size_t node_count() const { return names_.size(); }

  ContactNetwork build() &&;

 private:
  std::vector<std::string> names_;
  std::map<std::string, NodeId, std::less<>> index_;
  std::vector<Arc> arcs_;
  std::unordered_map<std::uint64_t, ArcId> arc_index_;
};

/// Per-node induction and removal probabilities, per-arc transmission
/// probabilities. Indexed by NodeId / ArcId of the network they belong to.
struct EpidemicParams {
  std::vector<double> sigma;
  std::vector<double> gamma;
  std::vector<double> tau;

  static EpidemicParams uniform(const ContactNetwork& net, double sigma, double gamma,
                                double tau);
  /// sigma is 1 at `seed` and 0 elsewhere.
  static EpidemicParams single_seed(const ContactNetwork& net, NodeId seed, double gamma,
                                    double tau);
  bool operator==(const EpidemicParams&) const = default;
};

/// Throws Error when sizes do not match the network or a value leaves [0,1].
void validate(const ContactNetwork& net, const EpidemicParams& params);

/// True iff `over` raises induction and transmission and lowers removal
/// everywhere relative to `under`. Throws Error on shape mismatch.
bool dominates(const EpidemicParams& over, const EpidemicParams& under);

/// Stable 64-bit digest of the parameter values, printed as 16 hex digits.
std::string params_digest(const EpidemicParams& params);

}  // namespace cascadelab
