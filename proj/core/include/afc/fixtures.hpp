#pragma once

#include "afc/graph.hpp"

namespace afc {

// Two 4-cliques joined by a length-two bridge through a single cut node.
// Node labels are "1".."9" (ids 0..8): the cliques are {1,2,3,4} and
// {6,7,8,9}, and node 5 bridges them via edges (1,5) and (5,6). All weights
// are 1. Node 5 lies on every path between the cliques, yet has the lowest
// degree (2) of the bridge neighborhood.
BaseTopology two_clique_bridge();

}  // namespace afc
