#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "wlpart/coarsen.hpp"
#include "wlpart/errors.hpp"
#include "wlpart/refine.hpp"

namespace wlpart {
namespace {

using testing::path;

DoublyWeightedGraph star(VertexId leaves) {
  GraphBuilder b(leaves + 1);
  for (VertexId i = 1; i <= leaves; ++i) {
    b.add_edge(0, i);
  }
  return b.build();
}

// Total of W including self-loops, each off-diagonal entry counted from both
// endpoints: equals the sum of degrees.
double total_edge_mass(const DoublyWeightedGraph &g) {
  double total = 0.0;
  for (VertexId u = 0; u < g.n(); ++u) {
    const auto w = g.incident_weights(u);
    total += std::accumulate(w.begin(), w.end(), g.self_loop(u));
  }
  return total;
}

TEST(CoarsenTest, HeavyEdgeMatchingOnPath) {
  const std::vector<VertexId> order{0, 1, 2};
  const auto map = match_heavy_edge(path(3), order);
  EXPECT_EQ(map.coarse_count, 2);
  EXPECT_EQ(map.fine_to_coarse, (std::vector<VertexId>{0, 0, 1}));
}

TEST(CoarsenTest, SingleEdgeContractsToOneSupernode) {
  const auto map = match_heavy_edge(path(2, 5.0), 7);
  EXPECT_EQ(map.coarse_count, 1);
}

TEST(CoarsenTest, StarCenterTakesLowestLeafOnTies) {
  const std::vector<VertexId> order{0, 1, 2, 3};
  const auto map = match_heavy_edge(star(3), order);
  EXPECT_EQ(map.coarse_count, 3);
  EXPECT_EQ(map.fine_to_coarse[0], map.fine_to_coarse[1]);
  EXPECT_NE(map.fine_to_coarse[2], map.fine_to_coarse[3]);
}

TEST(CoarsenTest, MatchingPrefersHeavierEdge) {
  GraphBuilder b(3);
  b.add_edge(0, 1, 1.0);
  b.add_edge(0, 2, 4.0);
  const std::vector<VertexId> order{0, 1, 2};
  const auto map = match_heavy_edge(b.build(), order);
  EXPECT_EQ(map.fine_to_coarse[0], map.fine_to_coarse[2]);
  EXPECT_NE(map.fine_to_coarse[0], map.fine_to_coarse[1]);
}

TEST(CoarsenTest, NoEdgesGivesIdentityShapedMap) {
  const auto map = match_heavy_edge(GraphBuilder(4).build(), 3);
  EXPECT_EQ(map.coarse_count, 4);
}

TEST(CoarsenTest, MatchingIsDeterministicPerSeed) {
  Rng rng(5);
  const auto g = testing::random_connected_graph(rng, {.n = 80});
  EXPECT_EQ(match_heavy_edge(g, 11).fine_to_coarse, match_heavy_edge(g, 11).fine_to_coarse);
}

TEST(CoarsenTest, ContractPathGroupsTwoAndThree) {
  const CoarseMap map{{0, 1, 1}, 2};
  const auto c = contract(path(3), map, SupernodeWeight::kFineDegrees);
  EXPECT_EQ(c.n(), 2);
  EXPECT_DOUBLE_EQ(c.edge_weight(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(c.self_loop(1), 2.0);
  EXPECT_DOUBLE_EQ(c.vertex_weight(1), 3.0);
  EXPECT_DOUBLE_EQ(c.vertex_weight(0), 1.0);
  EXPECT_DOUBLE_EQ(c.degree(1), 3.0);
}

TEST(CoarsenTest, IdentityContractionReplacesWeightsByDegrees) {
  Rng rng(9);
  const auto g = testing::random_connected_graph(rng, {.n = 15});
  const auto c = contract(g, CoarseMap::identity(g.n()), SupernodeWeight::kFineDegrees);
  EXPECT_EQ(c.offsets(), g.offsets());
  EXPECT_EQ(c.raw_neighbors(), g.raw_neighbors());
  EXPECT_EQ(c.raw_edge_weights(), g.raw_edge_weights());
  EXPECT_EQ(c.vertex_weights(), g.degrees());
}

TEST(CoarsenTest, FullContraction) {
  Rng rng(10);
  const auto g = testing::random_connected_graph(rng, {.n = 12});
  const CoarseMap all{std::vector<VertexId>(g.n(), 0), 1};
  const auto c = contract(g, all, SupernodeWeight::kFineDegrees);
  double edge_total = 0.0;
  for (const double w : g.raw_edge_weights()) {
    edge_total += w;
  }
  edge_total /= 2.0;
  EXPECT_EQ(c.n(), 1);
  EXPECT_NEAR(c.self_loop(0), 2.0 * edge_total, 1e-12 * edge_total);
  EXPECT_NEAR(c.vertex_weight(0), g.total_volume(), 1e-12 * edge_total);
}

TEST(CoarsenTest, ContractRejectsInvalidMaps) {
  const auto g = path(3);
  EXPECT_THROW((void)contract(g, CoarseMap{{0, 1}, 2}, SupernodeWeight::kFineDegrees), ContractViolation);
  EXPECT_THROW((void)contract(g, CoarseMap{{0, 2, 1}, 2}, SupernodeWeight::kFineDegrees), ContractViolation);
  EXPECT_THROW((void)contract(g, CoarseMap{{0, 0, 0}, 2}, SupernodeWeight::kFineDegrees), ContractViolation);
}

TEST(CoarsenTest, SmallGraphIsNotCoarsened) {
  Rng rng(12);
  const auto g = testing::random_connected_graph(rng, {.n = 10});
  const auto h = build_hierarchy(g, 20, 1);
  EXPECT_EQ(h.graphs.size(), 1u);
  EXPECT_EQ(h.depth(), 0u);
}

TEST(CoarsenTest, PathHierarchyShrinksStrictly) {
  const auto h = build_hierarchy(path(8), 2, 3);
  ASSERT_GE(h.depth(), 1u);
  for (std::size_t i = 1; i < h.graphs.size(); ++i) {
    EXPECT_LT(h.graphs[i].n(), h.graphs[i - 1].n());
  }
  EXPECT_LE(h.coarsest().n(), 2);
}

TEST(CoarsenTest, StarStallsInsteadOfLooping) {
  const auto h = build_hierarchy(star(200), 2, 3);
  // Each round can match only one leaf with the center.
  EXPECT_LE(h.depth(), 1u);
  EXPECT_GT(h.coarsest().n(), 2);
}

TEST(CoarsenTest, DefaultThreshold) {
  EXPECT_EQ(default_coarsening_threshold(2), 200);
  EXPECT_EQ(default_coarsening_threshold(10), 300);
}

class HierarchyPropertyTest : public ::testing::TestWithParam<int> {};

TEST_P(HierarchyPropertyTest, ConservationAndComposition) {
  Rng rng(mix_seed(301, GetParam()));
  const auto g = testing::random_connected_graph(
      rng, {.n = 50 + static_cast<VertexId>(rng.below(150)), .self_loops = GetParam() % 2 == 0});
  const auto h = build_hierarchy(g, 8, static_cast<std::uint64_t>(GetParam()));
  ASSERT_GE(h.depth(), 1u);

  const double mass = total_edge_mass(g);
  const double volume = g.total_volume();
  const CoarseMap composed = h.composed_map();
  for (std::size_t level = 1; level < h.graphs.size(); ++level) {
    const auto &c = h.graphs[level];
    EXPECT_LT(c.n(), h.graphs[level - 1].n());
    EXPECT_TRUE(is_connected(c));
    EXPECT_NEAR(total_edge_mass(c), mass, 1e-10 * mass);
    EXPECT_NEAR(c.total_vertex_weight(), volume, 1e-10 * volume);
    // Vertex weight equals degree at every coarse level.
    for (VertexId p = 0; p < c.n(); ++p) {
      EXPECT_NEAR(c.vertex_weight(p), c.degree(p), 1e-10 * c.degree(p));
    }
  }
  // Supernode weight = sum of original degrees of its members.
  std::vector<double> original(h.coarsest().n(), 0.0);
  for (VertexId u = 0; u < g.n(); ++u) {
    original[composed.fine_to_coarse[u]] += g.degree(u);
  }
  for (VertexId p = 0; p < h.coarsest().n(); ++p) {
    EXPECT_NEAR(h.coarsest().vertex_weight(p), original[p], 1e-10 * original[p]);
  }
}

TEST_P(HierarchyPropertyTest, ProjectedNcutEqualsCoarseWcut) {
  Rng rng(mix_seed(302, GetParam()));
  const auto g = testing::random_connected_graph(rng, {.n = 60 + static_cast<VertexId>(rng.below(140))});
  const auto h = build_hierarchy(g, 10, static_cast<std::uint64_t>(GetParam()) + 100);
  ASSERT_GE(h.depth(), 1u);
  const BlockId k = 2 + static_cast<BlockId>(rng.below(4));
  const auto coarse = testing::random_partition(rng, h.coarsest().n(), k);
  const double w = wcut(h.coarsest(), coarse);

  // Level by level, and through the composed map.
  Partition current = coarse;
  for (std::size_t level = h.depth(); level-- > 0;) {
    current = project(current, h.maps[level]);
    if (level > 0) {
      EXPECT_NEAR(wcut(h.graphs[level], current), w, 1e-10 * std::max(1.0, w));
    }
  }
  EXPECT_NEAR(ncut(g, current), w, 1e-10 * std::max(1.0, w));
  EXPECT_EQ(project(coarse, h.composed_map()), current);
}

INSTANTIATE_TEST_SUITE_P(Random, HierarchyPropertyTest, ::testing::Range(0, 12));

} // namespace
} // namespace wlpart
