#include "afc/fixtures.hpp"

#include <string>
#include <vector>

namespace afc {

BaseTopology two_clique_bridge() {
  std::vector<Edge> edges;
  auto add_clique = [&edges](std::initializer_list<NodeId> nodes) {
    std::vector<NodeId> list(nodes);
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        edges.push_back({list[i], list[j], 1.0});
      }
    }
  };
  add_clique({0, 1, 2, 3});
  add_clique({5, 6, 7, 8});
  edges.push_back({0, 4, 1.0});
  edges.push_back({4, 5, 1.0});

  std::vector<std::string> labels;
  for (int v = 1; v <= 9; ++v) {
    labels.push_back(std::to_string(v));
  }
  return BaseTopology(9, std::move(edges), std::move(labels));
}

}  // namespace afc
