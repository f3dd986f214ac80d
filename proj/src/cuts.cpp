#include <algorithm>
#include <stdexcept>

#include "cascadelab/error.hpp"
#include "cascadelab/oracle.hpp"

namespace cascadelab {

namespace {

void check_endpoints(const ContactNetwork& net, NodeId s, NodeId u) {
  if (s >= net.node_count() || u >= net.node_count()) throw Error("node index out of range");
  if (s == u) throw Error("cut endpoints must differ");
}

/// u reachable from s without entering a blocked node (s itself never blocks).
bool reaches(const ContactNetwork& net, NodeId s, NodeId u, const std::vector<bool>& blocked,
             std::vector<bool>& seen, std::vector<NodeId>& stack) {
  seen.assign(net.node_count(), false);
  stack.assign(1, s);
  seen[s] = true;
  while (!stack.empty()) {
    NodeId x = stack.back();
    stack.pop_back();
    for (ArcId e : net.out_arcs(x)) {
      NodeId v = net.arc(e).to;
      if (v == u) return true;
      if (seen[v] || blocked[v]) continue;
      seen[v] = true;
      stack.push_back(v);
    }
  }
  return false;
}

std::vector<bool> cut_mask(const ContactNetwork& net, NodeId s, NodeId u,
                           std::span<const NodeId> cut) {
  check_endpoints(net, s, u);
  std::vector<bool> mask(net.node_count(), false);
  for (NodeId v : cut) {
    if (v >= net.node_count()) throw Error("node index out of range");
    if (v == s || v == u) throw Error("a cut may not contain its endpoints");
    mask[v] = true;
  }
  return mask;
}

struct CutTotals {
  long double fz = 0.0L;
  long double fzbar = 0.0L;
};

CutTotals enumerate_cuts(const ContactNetwork& net, NodeId s, NodeId u, NodeId z,
                         std::span<const double> gamma) {
  const std::size_t n = net.node_count();
  std::vector<NodeId> free_nodes;
  std::vector<bool> removed(n, false);
  for (NodeId v = 0; v < n; ++v) {
    if (v == u) continue;  // u's own removal cannot stop u being infected
    if (gamma[v] >= 1.0) removed[v] = true;
    else if (gamma[v] > 0.0) free_nodes.push_back(v);
  }
  if (free_nodes.size() > kMaxFreeDecisions) {
    throw BudgetExceeded(free_nodes.size(), kMaxFreeDecisions);
  }

  std::vector<bool> seen;
  std::vector<NodeId> stack;
  auto blocked = [&](const std::vector<bool>& r) {
    return r[s] || !reaches(net, s, u, r, seen, stack);
  };

  CutTotals totals;
  const std::uint64_t count = std::uint64_t{1} << free_nodes.size();
  for (std::uint64_t i = 0; i < count; ++i) {
    long double w = 1.0L;
    for (std::size_t j = 0; j < free_nodes.size(); ++j) {
      const bool bit = (i >> j) & 1U;
      const long double p = gamma[free_nodes[j]];
      w *= bit ? p : 1.0L - p;
      removed[free_nodes[j]] = bit;
    }
    if (!blocked(removed)) continue;
    bool z_vital = false;
    if (z != u && removed[z]) {
      removed[z] = false;
      z_vital = !blocked(removed);
      removed[z] = true;
    }
    (z_vital ? totals.fz : totals.fzbar) += w;
  }
  return totals;
}

}  // namespace

bool is_su_cut(const ContactNetwork& net, NodeId s, NodeId u, std::span<const NodeId> cut) {
  auto mask = cut_mask(net, s, u, cut);
  std::vector<bool> seen;
  std::vector<NodeId> stack;
  return !reaches(net, s, u, mask, seen, stack);
}

bool is_z_vital(const ContactNetwork& net, NodeId s, NodeId u, std::span<const NodeId> cut,
                NodeId z) {
  if (std::find(cut.begin(), cut.end(), z) == cut.end()) {
    cut_mask(net, s, u, cut);  // still report malformed input
    return false;
  }
  if (!is_su_cut(net, s, u, cut)) return false;
  std::vector<NodeId> without;
  for (NodeId v : cut) {
    if (v != z) without.push_back(v);
  }
  return !is_su_cut(net, s, u, without);
}

CutDecomposition cut_decompose(const ContactNetwork& net, NodeId s, NodeId u, NodeId z,
                               std::span<const double> gamma) {
  check_endpoints(net, s, u);
  if (z >= net.node_count()) throw Error("node index out of range");
  if (gamma.size() != net.node_count()) throw Error("gamma does not match the network");
  for (double g : gamma) {
    if (!(g >= 0.0 && g <= 1.0)) throw Error("gamma value outside [0,1]");
  }

  const CutTotals totals = enumerate_cuts(net, s, u, z, gamma);
  CutDecomposition d;
  d.p_fz = static_cast<double>(totals.fz);
  d.p_fzbar = static_cast<double>(totals.fzbar);
  d.c2 = d.p_fzbar;
  if (z == u) {
    d.c1 = 0.0;
  } else if (gamma[z] > 0.0) {
    d.c1 = static_cast<double>(totals.fz / static_cast<long double>(gamma[z]));
  } else {
    if (totals.fz > 0.0L) throw std::logic_error("z-vital block with gamma(z) = 0");
    // c1 is the z-vital probability conditional on z being removed.
    std::vector<double> forced(gamma.begin(), gamma.end());
    forced[z] = 1.0;
    d.c1 = static_cast<double>(enumerate_cuts(net, s, u, z, forced).fz);
  }
  return d;
}

}  // namespace cascadelab
