#include "cascadelab/network.hpp"

#include <bit>
#include <cstdio>

#include "cascadelab/error.hpp"

namespace cascadelab {

namespace {

std::uint64_t arc_key(NodeId from, NodeId to) {
  return (std::uint64_t{from} << 32) | to;
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

void check_values(const std::vector<double>& values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!is_probability(values[i])) {
      throw Error(std::string(what) + "[" + std::to_string(i) + "] = " +
                  std::to_string(values[i]) + " is not a probability");
    }
  }
}

}  // namespace

char state_letter(NodeState s) {
  switch (s) {
    case NodeState::Susceptible: return 'S';
    case NodeState::Infected: return 'I';
    case NodeState::Removed: return 'R';
    case NodeState::Distanced: return 'D';
  }
  return '?';
}

std::optional<NodeId> ContactNetwork::find_node(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeId ContactNetwork::node(std::string_view name) const {
  if (auto v = find_node(name)) return *v;
  throw Error("unknown node '" + std::string(name) + "'");
}

std::optional<ArcId> ContactNetwork::find_arc(NodeId from, NodeId to) const {
  auto it = arc_index_.find(arc_key(from, to));
  if (it == arc_index_.end()) return std::nullopt;
  return it->second;
}

NodeId NetworkBuilder::add_node(std::string_view name) {
  if (name.empty()) throw Error("empty node name");
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  auto id = static_cast<NodeId>(names_.size());
  names_.emplace_back(name);
  index_.emplace(std::string(name), id);
  return id;
}

ArcId NetworkBuilder::add_arc(NodeId from, NodeId to) {
  if (from >= names_.size() || to >= names_.size()) throw Error("arc endpoint out of range");
  if (from == to) throw Error("self-loop on node '" + names_[from] + "'");
  auto key = arc_key(from, to);
  if (arc_index_.contains(key)) {
    throw Error("duplicate arc " + names_[from] + " -> " + names_[to]);
  }
  auto id = static_cast<ArcId>(arcs_.size());
  arcs_.push_back({from, to});
  arc_index_.emplace(key, id);
  return id;
}

std::optional<ArcId> NetworkBuilder::find_arc(NodeId from, NodeId to) const {
  auto it = arc_index_.find(arc_key(from, to));
  if (it == arc_index_.end()) return std::nullopt;
  return it->second;
}

ContactNetwork NetworkBuilder::build() && {
  ContactNetwork net;
  const std::size_t n = names_.size();
  net.out_offsets_.assign(n + 1, 0);
  net.in_offsets_.assign(n + 1, 0);
  for (const Arc& a : arcs_) {
    ++net.out_offsets_[a.from + 1];
    ++net.in_offsets_[a.to + 1];
  }
  for (std::size_t v = 0; v < n; ++v) {
    net.out_offsets_[v + 1] += net.out_offsets_[v];
    net.in_offsets_[v + 1] += net.in_offsets_[v];
  }
  net.out_arcs_.resize(arcs_.size());
  net.in_arcs_.resize(arcs_.size());
  std::vector<std::size_t> out_fill(net.out_offsets_.begin(), net.out_offsets_.end() - 1);
  std::vector<std::size_t> in_fill(net.in_offsets_.begin(), net.in_offsets_.end() - 1);
  for (ArcId e = 0; e < arcs_.size(); ++e) {
    net.out_arcs_[out_fill[arcs_[e].from]++] = e;
    net.in_arcs_[in_fill[arcs_[e].to]++] = e;
  }
  net.names_ = std::move(names_);
  net.index_ = std::move(index_);
  net.arcs_ = std::move(arcs_);
  net.arc_index_ = std::move(arc_index_);
  return net;
}

EpidemicParams EpidemicParams::uniform(const ContactNetwork& net, double sigma, double gamma,
                                       double tau) {
  EpidemicParams p;
  p.sigma.assign(net.node_count(), sigma);
  p.gamma.assign(net.node_count(), gamma);
  p.tau.assign(net.arc_count(), tau);
  return p;
}

EpidemicParams EpidemicParams::single_seed(const ContactNetwork& net, NodeId seed,
                                           double gamma, double tau) {
  auto p = uniform(net, 0.0, gamma, tau);
  p.sigma.at(seed) = 1.0;
  return p;
}

void validate(const ContactNetwork& net, const EpidemicParams& params) {
  if (params.sigma.size() != net.node_count() || params.gamma.size() != net.node_count()) {
    throw Error("node parameter count does not match the network");
  }
  if (params.tau.size() != net.arc_count()) {
    throw Error("arc parameter count does not match the network");
  }
  check_values(params.sigma, "sigma");
  check_values(params.gamma, "gamma");
  check_values(params.tau, "tau");
}

bool dominates(const EpidemicParams& over, const EpidemicParams& under) {
  if (over.sigma.size() != under.sigma.size() || over.gamma.size() != under.gamma.size() ||
      over.tau.size() != under.tau.size() || over.sigma.size() != over.gamma.size()) {
    throw Error("parameter sets belong to differently shaped networks");
  }
  for (std::size_t v = 0; v < over.sigma.size(); ++v) {
    if (over.sigma[v] < under.sigma[v] || over.gamma[v] > under.gamma[v]) return false;
  }
  for (std::size_t e = 0; e < over.tau.size(); ++e) {
    if (over.tau[e] < under.tau[e]) return false;
  }
  return true;
}

std::string params_digest(const EpidemicParams& params) {
  // FNV-1a over the IEEE bit patterns.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const std::vector<double>& values) {
    for (double x : values) {
      auto bits = std::bit_cast<std::uint64_t>(x);
      for (int i = 0; i < 8; ++i) {
        h ^= (bits >> (8 * i)) & 0xffU;
        h *= 0x100000001b3ULL;
      }
    }
    h ^= 0xff;
    h *= 0x100000001b3ULL;
  };
  feed(params.sigma);
  feed(params.gamma);
  feed(params.tau);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace cascadelab
