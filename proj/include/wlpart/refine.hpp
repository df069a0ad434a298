#pragma once

#include <cstdint>
#include <vector>

#include "wlpart/cluster.hpp"
#include "wlpart/coarsen.hpp"
#include "wlpart/graph.hpp"

namespace wlpart {

struct LevelReport {
  std::size_t level = 0; // hierarchy index of the refined graph
  double cut_before = 0.0;
  double cut_after = 0.0;
  std::int64_t moves = 0;
  int passes = 0;
  // Edge cut after each pass, starting with the cut before the first pass.
  std::vector<double> cut_per_pass;
};

struct RefinementReport {
  std::vector<LevelReport> levels;
};

struct RefineOptions {
  double epsilon = 0.1;
  int max_passes = 16;
};

// Fine vertex v gets the block of map[v].
[[nodiscard]] Partition project(const Partition &coarse, const CoarseMap &map);

/// Greedy boundary moves that reduce the edge cut. Each pass sorts boundary
/// vertices by gain (cut reduction when moving to the best feasible adjacent
/// block) and applies a move when its current gain is positive, the target's
/// mvol stays within (1 + epsilon) mvol(V) / k and the source keeps at least
/// one vertex. Stops after a pass without moves or after max_passes.
[[nodiscard]] std::pair<Partition, LevelReport> local_refine(const DoublyWeightedGraph &g, Partition p,
                                                             const RefineOptions &options = {});

struct VCycleResult {
  Partition partition;         // on G_0
  Partition coarse_partition;  // the initial clustering on the coarsest graph
  double coarse_wcut = 0.0;    // wcut of coarse_partition on the clustering graph
  RefinementReport report;
};

/// The graph the initial clustering runs on. Normally the coarsest level; for
/// a hierarchy without contractions it is G_0 with vertex weights replaced by
/// degrees (the identity contraction), so the clustering objective is always
/// the ncut of G_0.
[[nodiscard]] DoublyWeightedGraph clustering_graph(const Hierarchy &h);

/// Initial clustering on the coarsest graph, then project + local_refine level
/// by level up to G_0.
[[nodiscard]] VCycleResult vcycle(const Hierarchy &h, Strategy strategy, BlockId k, std::uint64_t seed,
                                  const RefineOptions &options = {});

} // namespace wlpart
