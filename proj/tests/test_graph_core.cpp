#include <doctest.h>

#include <cmath>
#include <limits>

#include "afc/betweenness.hpp"
#include "afc/fixtures.hpp"
#include "afc/rng.hpp"
#include "support/brute_force.hpp"

using namespace afc;

namespace {

WorkingGraph path_graph3() {
  return WorkingGraph(3, {{0, 1, 1.0}, {1, 2, 1.0}});
}

WorkingGraph as_working(const BaseTopology& base) {
  return WorkingGraph(base.node_count(), base.edges());
}

// Random weighted graph for oracle comparisons.
WorkingGraph random_graph(int n, double p, bool unit_weights,
                          std::uint64_t seed) {
  Substream rng(seed, 0, 0);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (rng.next_bernoulli(p)) {
        const double w = unit_weights ? 1.0 : 0.5 + rng.next_uniform();
        edges.push_back({u, v, w});
      }
    }
  }
  return WorkingGraph(n, std::move(edges));
}

}  // namespace

TEST_CASE("shortest path counts on a path graph") {
  const auto g = path_graph3();
  const ShortestPathCounts sp = shortest_path_counts(g, 0);
  CHECK(sp.distance == std::vector<double>{0.0, 1.0, 2.0});
  CHECK(sp.num_paths == std::vector<double>{1.0, 1.0, 1.0});
}

TEST_CASE("four-cycle has two geodesics to the opposite corner") {
  const WorkingGraph g(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 0, 1.0}});
  const ShortestPathCounts sp = shortest_path_counts(g, 0);
  CHECK(sp.distance[2] == doctest::Approx(2.0));
  CHECK(sp.num_paths[2] == doctest::Approx(2.0));
}

TEST_CASE("unreachable nodes get infinite distance and zero count") {
  const WorkingGraph g(4, {{0, 1, 1.0}});
  const ShortestPathCounts sp = shortest_path_counts(g, 0);
  CHECK(std::isinf(sp.distance[2]));
  CHECK(sp.num_paths[2] == 0.0);
  CHECK(sp.num_paths[0] == 1.0);
}

TEST_CASE("two-clique fixture: the bridge carries a unique geodesic") {
  const auto g = as_working(two_clique_bridge());
  // Label "2" is id 1 and label "7" is id 6.
  const ShortestPathCounts sp = shortest_path_counts(g, 1);
  CHECK(sp.num_paths[6] == doctest::Approx(1.0));
  CHECK(sp.distance[6] == doctest::Approx(4.0));
  for (NodeId via : {0, 4, 5}) {  // labels 1, 5, 6
    const auto counted = testsupport::count_geodesics(g, 1, 6, via);
    CHECK(counted.total == doctest::Approx(1.0));
    CHECK(counted.through == doctest::Approx(1.0));
  }
}

TEST_CASE("path-graph betweenness under ordered pairs") {
  const BetweennessVector b = betweenness(path_graph3());
  CHECK(b[0] == doctest::Approx(0.0));
  CHECK(b[1] == doctest::Approx(2.0));
  CHECK(b[2] == doctest::Approx(0.0));
}

TEST_CASE("two-clique fixture: bridge node maximizes betweenness") {
  const auto g = as_working(two_clique_bridge());
  const BetweennessVector b = betweenness(g);
  int argmax = 0;
  for (int v = 1; v < g.node_count(); ++v) {
    if (b[v] > b[argmax]) {
      argmax = v;
    }
  }
  CHECK(argmax == 4);  // label "5"
  // 32 ordered cross-clique pairs all route through the bridge node.
  CHECK(b[4] == doctest::Approx(32.0));
}

TEST_CASE("betweenness equals brute-force enumeration on random graphs") {
  for (std::uint64_t seed : {11u, 22u, 33u}) {
    const auto g = random_graph(8, 0.45, seed % 2 == 0, seed);
    const BetweennessVector fast = betweenness(g);
    const std::vector<double> slow = testsupport::betweenness_bruteforce(g);
    for (int v = 0; v < g.node_count(); ++v) {
      CHECK(fast[v] == doctest::Approx(slow[v]).epsilon(1e-12));
    }
  }
}

TEST_CASE("local center on the two-clique fixture") {
  const BaseTopology base = two_clique_bridge();
  const auto g = as_working(base);
  CHECK(local_center(2, g, 5) == 4);

  // Removing both bridge edges strands the anchor in a 4-node clique.
  std::vector<Edge> cut;
  for (const Edge& e : base.edges()) {
    const bool bridge = (e.u == 0 && e.v == 4) || (e.u == 4 && e.v == 5);
    if (!bridge) {
      cut.push_back(e);
    }
  }
  const WorkingGraph broken(base.node_count(), cut);
  CHECK(broken.component_size_of(2) == 4);
  CHECK(local_center(2, broken, 5) == kNoNode);

  const WorkingGraph empty(3, {});
  CHECK(local_center(1, empty, 1) == 1);
  CHECK(local_center(1, empty, 2) == kNoNode);
}

TEST_CASE("local top-k on the two-clique fixture") {
  const auto g = as_working(two_clique_bridge());
  CHECK(local_topk(1, g, 1, 5) == std::vector<NodeId>{4});
  CHECK(local_topk(1, g, 3, 5) == std::vector<NodeId>{4, 0, 5});

  const auto everything = local_topk(1, g, 20, 5);
  CHECK(everything.size() == 9);

  // Cutoff applies to top-k as well.
  CHECK(local_topk(1, g, 3, 10).empty());
}

TEST_CASE("top-k is prefix-consistent with the local center") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = random_graph(9, 0.35, false, 100 + seed);
    for (NodeId anchor = 0; anchor < g.node_count(); ++anchor) {
      const auto top3 = local_topk(anchor, g, 3, 1);
      const auto top2 = local_topk(anchor, g, 2, 1);
      REQUIRE(!top3.empty());
      CHECK(top3.front() == local_center(anchor, g, 1));
      for (std::size_t i = 0; i < top2.size(); ++i) {
        CHECK(top2[i] == top3[i]);
      }
      for (NodeId member : top3) {
        CHECK(g.component_of(member) == g.component_of(anchor));
      }
    }
  }
}

TEST_CASE("uniform weight scaling preserves the ranking") {
  for (double scale : {0.25, 4.0, 1000.0}) {
    const auto g = random_graph(9, 0.4, false, 77);
    std::vector<Edge> scaled = g.active_edges();
    for (Edge& e : scaled) {
      e.weight *= scale;
    }
    const WorkingGraph gs(g.node_count(), scaled);
    const BetweennessVector b0 = betweenness(g);
    const BetweennessVector b1 = betweenness(gs);
    for (int v = 0; v < g.node_count(); ++v) {
      CHECK(b1[v] == doctest::Approx(b0[v]).epsilon(1e-12));
    }
    for (NodeId anchor = 0; anchor < g.node_count(); ++anchor) {
      CHECK(local_topk(anchor, g, 4, 1) == local_topk(anchor, gs, 4, 1));
    }
  }
}

TEST_CASE("identical inputs give identical outputs") {
  const auto g = random_graph(10, 0.3, false, 5);
  const BetweennessVector b0 = betweenness(g);
  const BetweennessVector b1 = betweenness(g);
  CHECK(b0 == b1);
  CHECK(local_topk(3, g, 5, 1) == local_topk(3, g, 5, 1));
}

TEST_CASE("component bookkeeping") {
  const WorkingGraph g(6, {{0, 1, 1.0}, {1, 2, 1.0}, {3, 4, 1.0}});
  CHECK(g.component_count() == 3);
  CHECK(g.component_of(0) == g.component_of(2));
  CHECK(g.component_of(3) != g.component_of(0));
  CHECK(g.component_size_of(5) == 1);
  int covered = 0;
  for (int c = 0; c < g.component_count(); ++c) {
    covered += static_cast<int>(g.component_members(c).size());
  }
  CHECK(covered == 6);
}
