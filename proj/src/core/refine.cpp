#include "wlpart/refine.hpp"

#include <algorithm>
#include <string>

#include "wlpart/errors.hpp"
#include "wlpart/random.hpp"

namespace wlpart {

Partition project(const Partition &coarse, const CoarseMap &map) {
  if (coarse.size() != map.coarse_count) {
    throw ContractViolation("coarse partition has " + std::to_string(coarse.size()) + " entries, map expects " +
                            std::to_string(map.coarse_count));
  }
  std::vector<BlockId> fine(map.fine_count());
  for (VertexId v = 0; v < map.fine_count(); ++v) {
    const VertexId c = map.fine_to_coarse[v];
    if (c < 0 || c >= map.coarse_count) {
      throw ContractViolation("coarse map entry out of range");
    }
    fine[v] = coarse.block(c);
  }
  return {coarse.k(), std::move(fine)};
}

namespace {

struct MoveScratch {
  explicit MoveScratch(BlockId k) : conn(k, 0.0) {}

  std::vector<double> conn;
  std::vector<BlockId> touched;

  void reset() {
    for (const BlockId b : touched) {
      conn[b] = 0.0;
    }
    touched.clear();
  }
};

struct MoveChoice {
  BlockId target = -1;
  double gain = 0.0;
  bool boundary = false;
};

// Best adjacent block for v under the load cap, by connection weight.
MoveChoice best_move(const DoublyWeightedGraph &g, const Partition &p, VertexId v, const std::vector<double> &loads,
                     double cap, MoveScratch &scratch) {
  scratch.reset();
  const BlockId own = p.block(v);
  const auto adj = g.neighbors(v);
  const auto w = g.incident_weights(v);
  for (std::size_t i = 0; i < adj.size(); ++i) {
    const BlockId b = p.block(adj[i]);
    if (scratch.conn[b] == 0.0) {
      scratch.touched.push_back(b);
    }
    scratch.conn[b] += w[i];
  }
  MoveChoice choice;
  double best_conn = 0.0;
  for (const BlockId b : scratch.touched) {
    if (b == own) {
      continue;
    }
    choice.boundary = true;
    if (loads[b] + g.vertex_weight(v) > cap) {
      continue;
    }
    if (scratch.conn[b] > best_conn || (scratch.conn[b] == best_conn && choice.target >= 0 && b < choice.target)) {
      best_conn = scratch.conn[b];
      choice.target = b;
    }
  }
  if (choice.target >= 0) {
    const double own_conn = scratch.conn[own];
    choice.gain = best_conn - own_conn;
    // Ignore gains that are pure rounding noise.
    if (choice.gain <= 1e-12 * (best_conn + own_conn)) {
      choice.gain = 0.0;
    }
  }
  return choice;
}

} // namespace

std::pair<Partition, LevelReport> local_refine(const DoublyWeightedGraph &g, Partition p,
                                               const RefineOptions &options) {
  if (p.size() != g.n()) {
    throw ContractViolation("partition size does not match graph");
  }
  const BlockId k = p.k();
  std::vector<double> loads = block_mvols(g, p);
  std::vector<VertexId> sizes = p.block_sizes();
  const double cap = (1.0 + options.epsilon) * g.total_vertex_weight() / k;

  LevelReport report;
  report.cut_before = edge_cut(g, p);
  report.cut_per_pass.push_back(report.cut_before);

  MoveScratch scratch(k);
  std::vector<std::pair<double, VertexId>> order;
  for (int pass = 0; pass < options.max_passes; ++pass) {
    order.clear();
    for (VertexId v = 0; v < g.n(); ++v) {
      const MoveChoice choice = best_move(g, p, v, loads, cap, scratch);
      if (choice.boundary) {
        order.emplace_back(choice.gain, v);
      }
    }
    std::sort(order.begin(), order.end(), [](const auto &a, const auto &b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });

    std::int64_t moves = 0;
    for (const auto &[stale_gain, v] : order) {
      const BlockId own = p.block(v);
      if (sizes[own] <= 1) {
        continue;
      }
      const MoveChoice choice = best_move(g, p, v, loads, cap, scratch);
      if (choice.target < 0 || !(choice.gain > 0.0)) {
        continue;
      }
      p.move(v, choice.target);
      loads[own] -= g.vertex_weight(v);
      loads[choice.target] += g.vertex_weight(v);
      --sizes[own];
      ++sizes[choice.target];
      ++moves;
    }
    ++report.passes;
    report.moves += moves;
    report.cut_per_pass.push_back(edge_cut(g, p));
    if (moves == 0) {
      break;
    }
  }
  report.cut_after = report.cut_per_pass.back();
  return {std::move(p), std::move(report)};
}

DoublyWeightedGraph clustering_graph(const Hierarchy &h) {
  if (h.depth() > 0) {
    return h.coarsest();
  }
  const auto &g = h.finest();
  return contract(g, CoarseMap::identity(g.n()), SupernodeWeight::kFineDegrees);
}

VCycleResult vcycle(const Hierarchy &h, Strategy strategy, BlockId k, std::uint64_t seed,
                    const RefineOptions &options) {
  if (h.graphs.empty()) {
    throw ContractViolation("empty hierarchy");
  }
  VCycleResult result;
  if (k == 1) {
    result.partition = Partition::single_block(h.finest().n());
    result.coarse_partition = Partition::single_block(h.coarsest().n());
    return result;
  }

  const DoublyWeightedGraph cg = clustering_graph(h);
  result.coarse_partition = initial_clustering(strategy, cg, k, mix_seed(seed, 7));
  result.coarse_wcut = wcut(cg, result.coarse_partition);

  Partition current = result.coarse_partition;
  for (std::size_t level = h.depth(); level-- > 0;) {
    Partition fine = project(current, h.maps[level]);
    auto [refined, level_report] = local_refine(h.graphs[level], std::move(fine), options);
    level_report.level = level;
    result.report.levels.push_back(std::move(level_report));
    current = std::move(refined);
  }
  result.partition = std::move(current);
  return result;
}

} // namespace wlpart
