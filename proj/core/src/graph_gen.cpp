#include "afc/graph_gen.hpp"

#include <set>
#include <utility>
#include <vector>

#include "afc/errors.hpp"
#include "afc/rng.hpp"

namespace afc {

BaseTopology erdos_renyi(int n, double p, std::uint64_t seed) {
  if (n < 2) {
    throw ConfigError("n must be at least 2");
  }
  if (p < 0.0 || p > 1.0) {
    throw ConfigError("p must lie in [0,1]");
  }
  Substream rng(seed, 0, 0);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (rng.next_bernoulli(p)) {
        edges.push_back({u, v, 1.0});
      }
    }
  }
  return BaseTopology(n, std::move(edges));
}

BaseTopology watts_strogatz(int n, int ring_degree, double rewire_p,
                            std::uint64_t seed) {
  if (n < 2) {
    throw ConfigError("n must be at least 2");
  }
  if (ring_degree < 2 || ring_degree % 2 != 0 || ring_degree >= n) {
    throw ConfigError("ring_degree must be even and in [2, n)");
  }
  if (rewire_p < 0.0 || rewire_p > 1.0) {
    throw ConfigError("rewire_p must lie in [0,1]");
  }

  Substream rng(seed, 0, 0);
  std::set<std::pair<NodeId, NodeId>> present;
  auto key = [](NodeId a, NodeId b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  };
  for (int offset = 1; offset <= ring_degree / 2; ++offset) {
    for (NodeId u = 0; u < n; ++u) {
      present.insert(key(u, (u + offset) % n));
    }
  }

  // Rewire lattice edges in deterministic (offset, node) order.
  for (int offset = 1; offset <= ring_degree / 2; ++offset) {
    for (NodeId u = 0; u < n; ++u) {
      const NodeId v = (u + offset) % n;
      if (!rng.next_bernoulli(rewire_p)) {
        continue;
      }
      if (!present.count(key(u, v))) {
        continue;  // already rewired away by an earlier pass
      }
      // Skip saturated nodes; no valid target exists.
      bool full = true;
      for (NodeId w = 0; w < n; ++w) {
        if (w != u && !present.count(key(u, w))) {
          full = false;
          break;
        }
      }
      if (full) {
        continue;
      }
      for (;;) {
        const NodeId w = static_cast<NodeId>(rng.next_below(n));
        if (w == u || present.count(key(u, w))) {
          continue;
        }
        present.erase(key(u, v));
        present.insert(key(u, w));
        break;
      }
    }
  }

  std::vector<Edge> edges;
  edges.reserve(present.size());
  for (const auto& [a, b] : present) {
    edges.push_back({a, b, 1.0});
  }
  return BaseTopology(n, std::move(edges));
}

}  // namespace afc
