#include <string>

#include <gtest/gtest.h>

#include "wlpart/graph.hpp"
#include "wlpart/metis_io.hpp"
#include "wlpart/oracle.hpp"
#include "wlpart/pipeline.hpp"

namespace wlpart {
namespace {

DoublyWeightedGraph load(const std::string &name) {
  return io::read_metis_file(std::string(WLPART_SOURCE_DIR) + "/data/" + name);
}

TEST(FixturesTest, PathOfThree) {
  const auto g = load("path3.graph");
  EXPECT_EQ(g.n(), 3);
  EXPECT_EQ(g.m(), 2);
  EXPECT_DOUBLE_EQ(oracle::brute_min_ncut(g, 2).best_value, 4.0 / 3.0);
}

TEST(FixturesTest, TwoCliquesSplitAtTheBridge) {
  const auto g = load("two_cliques5.graph");
  EXPECT_EQ(g.n(), 10);
  EXPECT_EQ(g.m(), 21);
  const auto best = oracle::brute_min_ncut(g, 2);
  EXPECT_NEAR(best.best_value, 2.0 / 21.0, 1e-15);

  RunConfig config;
  config.k = 2;
  const auto result = run_partition(g, config);
  EXPECT_NEAR(result.metrics.ncut, 2.0 / 21.0, 1e-15);
  EXPECT_EQ(result.metrics.edge_cut, 1.0);
}

TEST(FixturesTest, WeightedPathCutsTheLightEdge) {
  const auto g = load("weighted_path4.graph");
  EXPECT_EQ(g.n(), 4);
  EXPECT_DOUBLE_EQ(g.vertex_weight(1), 2.0);
  EXPECT_DOUBLE_EQ(g.edge_weight(1, 2), 0.5);
  const auto best = oracle::brute_min_wcut(g, 2);
  EXPECT_EQ(best.best_partition.block(0), best.best_partition.block(1));
  EXPECT_NE(best.best_partition.block(1), best.best_partition.block(2));
  EXPECT_DOUBLE_EQ(best.best_value, 0.5 / 3.0 + 0.5 / 3.0);
}

} // namespace
} // namespace wlpart
