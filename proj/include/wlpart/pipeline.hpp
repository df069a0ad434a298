#pragma once

#include <cstdint>

#include "wlpart/cluster.hpp"
#include "wlpart/errors.hpp"
#include "wlpart/graph.hpp"
#include "wlpart/refine.hpp"

namespace wlpart {

struct RunConfig {
  BlockId k = 2;
  Strategy strategy = Strategy::kWeightedSpectral;
  std::uint64_t seed = 1;
  VertexId threshold = 0; // 0 selects default_coarsening_threshold(k)
  double epsilon = 0.1;
  int max_passes = 16;
  // Partition the largest connected component and append the remaining
  // components whole to the lightest blocks, instead of rejecting the input.
  bool allow_disconnected = false;
};

struct RunMetrics {
  double ncut = 0.0;
  double coarse_wcut = 0.0;
  double edge_cut = 0.0;
  double imbalance = 1.0;
  double runtime_ms = 0.0;
  std::size_t levels = 0;
  VertexId coarse_vertices = 0;
};

struct RunResult {
  Partition partition;
  RunMetrics metrics;
  RefinementReport report;
};

class DisconnectedGraphError : public ContractViolation {
public:
  using ContractViolation::ContractViolation;
};

/// Coarsen, cluster, refine. Throws DisconnectedGraphError for disconnected
/// input unless allow_disconnected is set.
[[nodiscard]] RunResult run_partition(const DoublyWeightedGraph &g, const RunConfig &config);

} // namespace wlpart
