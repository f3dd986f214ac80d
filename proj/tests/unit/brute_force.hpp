#pragma once

// Test-only reference. Enumerates every full outcome realization, degenerate
// decisions included, and replays the step rules with its own loop. Valid for
// both models because each Bernoulli outcome is consumed at most once.

#include <cassert>
#include <optional>
#include <vector>

#include "cascadelab/network.hpp"

namespace bruteforce {

struct Result {
  std::vector<double> dist;
  std::vector<double> prob;
  double mean = 0.0;
};

struct Distancing {
  std::size_t threshold = 2;
  bool ever_infected = true;
};

inline Result enumerate(const cascadelab::ContactNetwork& net,
                        const cascadelab::EpidemicParams& p,
                        std::optional<Distancing> flee = std::nullopt) {
  using namespace cascadelab;
  const std::size_t n = net.node_count();
  const std::size_t m = net.arc_count();
  const std::size_t bits = 2 * n + m;
  assert(bits <= 22);
  Result r;
  r.dist.assign(n + 1, 0.0);
  r.prob.assign(n, 0.0);
  enum : char { S, I, R, D };
  for (unsigned long mask = 0; mask < (1UL << bits); ++mask) {
    auto bit = [&](std::size_t i) { return (mask >> i & 1UL) != 0; };
    long double w = 1.0L;
    for (std::size_t v = 0; v < n; ++v) {
      w *= bit(v) ? p.sigma[v] : 1.0 - p.sigma[v];
      w *= bit(n + v) ? p.gamma[v] : 1.0 - p.gamma[v];
    }
    for (std::size_t e = 0; e < m; ++e) w *= bit(2 * n + e) ? p.tau[e] : 1.0 - p.tau[e];
    if (w == 0.0L) continue;

    std::vector<char> st(n, S);
    for (std::size_t v = 0; v < n; ++v) {
      if (bit(v)) st[v] = I;
    }
    for (;;) {
      bool any = false;
      for (char c : st) any = any || c == I;
      if (!any) break;
      if (flee) {
        std::vector<std::size_t> seen(n, 0);
        for (const Arc& a : net.arcs()) {
          if (st[a.from] == I || (flee->ever_infected && st[a.from] == R)) ++seen[a.to];
        }
        for (std::size_t v = 0; v < n; ++v) {
          if (st[v] == S && seen[v] >= flee->threshold) st[v] = D;
        }
      }
      std::vector<bool> fresh(n, false);
      for (std::size_t e = 0; e < m; ++e) {
        const Arc& a = net.arc(static_cast<ArcId>(e));
        if (st[a.from] == I && !bit(n + a.from) && st[a.to] == S && bit(2 * n + e)) {
          fresh[a.to] = true;
        }
      }
      for (std::size_t v = 0; v < n; ++v) {
        if (st[v] == I) st[v] = R;
        if (fresh[v]) st[v] = I;
      }
    }
    std::size_t k = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (st[v] == R) {
        r.prob[v] += static_cast<double>(w);
        ++k;
      }
    }
    r.dist[k] += static_cast<double>(w);
    r.mean += static_cast<double>(w) * static_cast<double>(k);
  }
  return r;
}

}  // namespace bruteforce
