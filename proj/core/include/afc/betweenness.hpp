#pragma once

#include <span>
#include <vector>

#include "afc/graph.hpp"

namespace afc {

// Weighted single-source shortest paths with geodesic counting.
struct ShortestPathCounts {
  std::vector<double> distance;   // +infinity when unreachable
  std::vector<double> num_paths;  // sigma; 1 at the source, 0 when unreachable
};

ShortestPathCounts shortest_path_counts(const WorkingGraph& graph,
                                        NodeId source);

// Non-normalized weighted betweenness, summed over ordered reachable pairs
// (s,t) with s != t and both distinct from the counted node. Unreachable
// pairs contribute zero.
using BetweennessVector = std::vector<double>;

BetweennessVector betweenness(const WorkingGraph& graph);

// Same accumulation restricted to sources inside one component. Values for
// members of that component equal the full computation (cross-component
// pairs never contribute); other entries are left at zero.
BetweennessVector betweenness_within_component(const WorkingGraph& graph,
                                               int component);

// Highest-betweenness node of the anchor's component, smallest index on
// ties. Returns kNoNode when the component has fewer than k_min nodes.
NodeId local_center(NodeId anchor, const WorkingGraph& graph, int k_min);

// First min(k, |K|) nodes of the anchor's component ordered by decreasing
// betweenness (smallest index on ties). Empty when |K| < k_min.
std::vector<NodeId> local_topk(NodeId anchor, const WorkingGraph& graph,
                               int k, int k_min);

// Component members ordered by decreasing betweenness with the index
// tie-break; shared by local_center / local_topk and constrained selectors.
std::vector<NodeId> ranked_component(NodeId anchor, const WorkingGraph& graph);

}  // namespace afc
