#pragma once

#include <cstdint>

#include "afc/graph.hpp"

namespace afc {

// G(n, p): each unordered pair is an edge independently with probability p.
// Unit weights; deterministic under the seed.
BaseTopology erdos_renyi(int n, double p, std::uint64_t seed);

// Ring lattice where every node joins its ring_degree nearest neighbors
// (ring_degree even), then each lattice edge is rewired with probability
// rewire_p to a uniform target, avoiding self-loops and duplicates.
BaseTopology watts_strogatz(int n, int ring_degree, double rewire_p,
                            std::uint64_t seed);

}  // namespace afc
