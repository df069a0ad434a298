#include "wlpart/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "wlpart/coarsen.hpp"
#include "wlpart/errors.hpp"

namespace wlpart {

namespace {

struct CorePartition {
  Partition partition;
  double coarse_wcut = 0.0;
  std::size_t levels = 0;
  VertexId coarse_vertices = 0;
  RefinementReport report;
};

CorePartition partition_connected(const DoublyWeightedGraph &g, const RunConfig &config) {
  const VertexId requested = config.threshold > 0 ? config.threshold : default_coarsening_threshold(config.k);
  // Keep the coarsest graph comfortably above k vertices.
  const VertexId threshold = std::max<VertexId>(requested, 2 * config.k);
  const Hierarchy h = build_hierarchy(g, threshold, config.seed);
  const VCycleResult vc =
      vcycle(h, config.strategy, config.k, config.seed, RefineOptions{config.epsilon, config.max_passes});
  return {vc.partition, vc.coarse_wcut, h.depth(), h.coarsest().n(), vc.report};
}

} // namespace

RunResult run_partition(const DoublyWeightedGraph &g, const RunConfig &config) {
  if (config.k < 1) {
    throw ContractViolation("k must be at least 1");
  }
  if (config.k > g.n()) {
    throw ContractViolation("k = " + std::to_string(config.k) + " exceeds the vertex count " + std::to_string(g.n()));
  }
  const auto start = std::chrono::steady_clock::now();

  VertexId components = 0;
  const auto comp = connected_components(g, &components);
  RunResult result;
  CorePartition core;
  if (components <= 1) {
    core = partition_connected(g, config);
    result.partition = core.partition;
  } else {
    if (!config.allow_disconnected) {
      throw DisconnectedGraphError("graph has " + std::to_string(components) +
                                   " connected components; pass allow_disconnected to partition the largest");
    }
    std::vector<VertexId> comp_size(components, 0);
    for (const VertexId c : comp) {
      ++comp_size[c];
    }
    const auto largest = static_cast<VertexId>(std::max_element(comp_size.begin(), comp_size.end()) - comp_size.begin());
    std::vector<VertexId> members;
    for (VertexId u = 0; u < g.n(); ++u) {
      if (comp[u] == largest) {
        members.push_back(u);
      }
    }
    if (static_cast<VertexId>(members.size()) < config.k) {
      throw ContractViolation("largest component has fewer than k vertices");
    }
    const Subgraph sub = induced_subgraph(g, members);
    core = partition_connected(sub.graph, config);

    std::vector<BlockId> assignment(g.n(), -1);
    std::vector<double> loads(config.k, 0.0);
    for (VertexId i = 0; i < sub.graph.n(); ++i) {
      assignment[sub.to_parent[i]] = core.partition.block(i);
      loads[core.partition.block(i)] += g.vertex_weight(sub.to_parent[i]);
    }
    // Whole components go to the currently lightest block: no cut added.
    std::vector<double> comp_weight(components, 0.0);
    for (VertexId u = 0; u < g.n(); ++u) {
      comp_weight[comp[u]] += g.vertex_weight(u);
    }
    std::vector<BlockId> comp_block(components, -1);
    for (VertexId c = 0; c < components; ++c) {
      if (c == largest) {
        continue;
      }
      const auto lightest = static_cast<BlockId>(std::min_element(loads.begin(), loads.end()) - loads.begin());
      comp_block[c] = lightest;
      loads[lightest] += comp_weight[c];
    }
    for (VertexId u = 0; u < g.n(); ++u) {
      if (assignment[u] < 0) {
        assignment[u] = comp_block[comp[u]];
      }
    }
    result.partition = Partition(config.k, std::move(assignment));
  }

  const auto stop = std::chrono::steady_clock::now();
  result.report = std::move(core.report);
  result.metrics.coarse_wcut = core.coarse_wcut;
  result.metrics.levels = core.levels;
  result.metrics.coarse_vertices = core.coarse_vertices;
  result.metrics.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  result.metrics.ncut = ncut(g, result.partition);
  result.metrics.edge_cut = edge_cut(g, result.partition);
  result.metrics.imbalance = imbalance(g, result.partition);
  return result;
}

} // namespace wlpart
