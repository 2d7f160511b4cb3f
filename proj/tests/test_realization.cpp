#include <doctest.h>

#include <cmath>

#include "afc/errors.hpp"
#include "afc/fixtures.hpp"
#include "afc/realization.hpp"

using namespace afc;

namespace {

BaseTopology weighted_line() {
  return BaseTopology(4, {{0, 1, 2.0}, {1, 2, 5.0}, {2, 3, 11.0}});
}

}  // namespace

TEST_CASE("full retention without a stop coin reproduces the base") {
  const BaseTopology base = two_clique_bridge();
  RealizationModel model;
  model.p_on = 1.0;
  model.alpha = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    Substream rng(9, 0, rep);
    const Realization draw = realize(model, base, 0, rng);
    REQUIRE(!draw.stopped);
    CHECK(draw.graph->active_edges().size() == base.edges().size());
    CHECK(draw.graph->component_count() == 1);
  }
}

TEST_CASE("zero retention isolates every node") {
  const BaseTopology base = two_clique_bridge();
  RealizationModel model;
  model.p_on = 0.0;
  model.alpha = 0.0;
  model.k_min = 2;
  Substream rng(3, 0, 0);
  const Realization draw = realize(model, base, 3, rng);
  REQUIRE(!draw.stopped);
  CHECK(draw.graph->active_edges().empty());
  CHECK(draw.graph->component_size_of(3) == 1);  // any k_min >= 2 absorbs
}

TEST_CASE("alpha = 1 always stops before materializing a graph") {
  const BaseTopology base = two_clique_bridge();
  RealizationModel model;
  model.alpha = 1.0;
  for (int rep = 0; rep < 10; ++rep) {
    Substream rng(4, 1, rep);
    const Realization draw = realize(model, base, 1, rng);
    CHECK(draw.stopped);
    CHECK(!draw.graph.has_value());
  }
}

TEST_CASE("weight resampling is deterministic when rho_sigma is zero") {
  const BaseTopology base = weighted_line();
  RealizationModel model;
  model.mode = RealizationMode::kWeightResample;
  model.rho_mu = 0.2;
  model.rho_sigma = 0.0;
  model.w_max = 31.0;
  for (int rep = 0; rep < 5; ++rep) {
    Substream rng(7, 2, rep);
    const Realization draw = realize(model, base, 0, rng);
    REQUIRE(!draw.stopped);
    for (std::size_t e = 0; e < base.edges().size(); ++e) {
      const double w0 = base.edges()[e].weight;
      const double expected = std::round(w0 + 0.2 * (31.0 - w0));
      CHECK(draw.graph->active_edges()[e].weight == expected);
    }
  }
}

TEST_CASE("resampled weights stay inside the clipping interval") {
  const BaseTopology base = weighted_line();
  RealizationModel model;
  model.mode = RealizationMode::kWeightResample;
  model.rho_mu = 0.9;
  model.rho_sigma = 2.0;  // wide spread forces both clip sides
  model.w_max = 31.0;
  for (int rep = 0; rep < 500; ++rep) {
    Substream rng(13, 0, rep);
    const Realization draw = realize(model, base, 0, rng);
    REQUIRE(!draw.stopped);
    for (std::size_t e = 0; e < base.edges().size(); ++e) {
      const double w0 = base.edges()[e].weight;
      const double w = draw.graph->active_edges()[e].weight;
      CHECK(w >= w0);
      CHECK(w <= 31.0);
      CHECK(w == std::round(w));
    }
  }
}

TEST_CASE("r-hop restriction isolates everything outside the ball") {
  const BaseTopology base = two_clique_bridge();
  RealizationModel model;
  model.p_on = 1.0;
  model.r_hop = 1;
  Substream rng(21, 0, 0);
  // Label "5" (id 4) has neighbors ids 0 and 5 only.
  const Realization draw = realize(model, base, 4, rng);
  REQUIRE(!draw.stopped);
  CHECK(draw.graph->component_size_of(4) == 3);
  CHECK(draw.graph->component_size_of(2) == 1);
  CHECK(draw.graph->component_size_of(7) == 1);
}

TEST_CASE("fixed seeds reproduce identical realization sequences") {
  const BaseTopology base = two_clique_bridge();
  RealizationModel model;
  model.p_on = 0.6;
  model.alpha = 0.2;
  for (int rep = 0; rep < 50; ++rep) {
    Substream a(99, 5, rep);
    Substream b(99, 5, rep);
    const Realization da = realize(model, base, 5, a);
    const Realization db = realize(model, base, 5, b);
    CHECK(da.stopped == db.stopped);
    if (!da.stopped) {
      REQUIRE(db.graph.has_value());
      REQUIRE(da.graph->active_edges().size() ==
              db.graph->active_edges().size());
      for (std::size_t e = 0; e < da.graph->active_edges().size(); ++e) {
        CHECK(da.graph->active_edges()[e].u == db.graph->active_edges()[e].u);
        CHECK(da.graph->active_edges()[e].v == db.graph->active_edges()[e].v);
        CHECK(da.graph->active_edges()[e].weight ==
              db.graph->active_edges()[e].weight);
      }
    }
  }
}

TEST_CASE("edge retention frequency sits inside the Bernoulli band") {
  const BaseTopology base = two_clique_bridge();
  RealizationModel model;
  model.p_on = 0.85;
  const int draws = 10000;
  std::vector<int> kept(base.edges().size(), 0);
  for (int rep = 0; rep < draws; ++rep) {
    Substream rng(123, 0, rep);
    const Realization draw = realize(model, base, 0, rng);
    REQUIRE(!draw.stopped);
    for (const Edge& e : draw.graph->active_edges()) {
      for (std::size_t idx = 0; idx < base.edges().size(); ++idx) {
        if (base.edges()[idx].u == e.u && base.edges()[idx].v == e.v) {
          ++kept[idx];
          break;
        }
      }
    }
  }
  const double sigma = std::sqrt(0.85 * 0.15 / draws);
  for (std::size_t idx = 0; idx < kept.size(); ++idx) {
    const double freq = static_cast<double>(kept[idx]) / draws;
    CHECK(std::abs(freq - 0.85) <= 3.0 * sigma);
  }
}

TEST_CASE("anchors outside the node set are rejected") {
  const BaseTopology base = weighted_line();
  RealizationModel model;
  Substream rng(1, 0, 0);
  CHECK_THROWS_AS(realize(model, base, -1, rng), ConfigError);
  CHECK_THROWS_AS(realize(model, base, 4, rng), ConfigError);
}

TEST_CASE("model validation catches bad parameters") {
  const BaseTopology base = weighted_line();
  RealizationModel model;
  model.p_on = 1.5;
  CHECK_THROWS_AS(model.validate(base), ConfigError);
  model.p_on = 0.5;
  model.mode = RealizationMode::kWeightResample;
  model.w_max = 5.0;  // below the largest base weight (11)
  CHECK_THROWS_AS(model.validate(base), ConfigError);
}
