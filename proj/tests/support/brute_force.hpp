#pragma once

// Independent oracles for the unit and acceptance suites. These avoid the
// library's Dijkstra/Brandes path entirely: distances come from
// Floyd-Warshall and betweenness from explicit enumeration of every
// geodesic.

#include <functional>
#include <vector>

#include "afc/graph.hpp"

namespace testsupport {

// All-pairs distances by Floyd-Warshall (infinity when unreachable).
std::vector<std::vector<double>> floyd_warshall(const afc::WorkingGraph& g);

// Ordered-pair betweenness by enumerating all shortest paths per pair.
std::vector<double> betweenness_bruteforce(const afc::WorkingGraph& g);

// Shortest-path count between a fixed pair, plus how many of those paths
// have `via` as an interior node.
struct PairPaths {
  double total = 0.0;
  double through = 0.0;
};
PairPaths count_geodesics(const afc::WorkingGraph& g, afc::NodeId s,
                          afc::NodeId t, afc::NodeId via);

// Visits every edge subset of `base` with its Bernoulli(p_on) probability;
// used to enumerate exact kernels, one-shot laws and psi vectors without
// going through the estimator.
void for_each_edge_subset(
    const afc::BaseTopology& base, double p_on,
    const std::function<void(double weight, const afc::WorkingGraph&)>& fn);

}  // namespace testsupport
