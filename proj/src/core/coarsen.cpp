#include "wlpart/coarsen.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "wlpart/errors.hpp"
#include "wlpart/random.hpp"

namespace wlpart {

void CoarseMap::validate() const {
  std::vector<char> hit(coarse_count, 0);
  for (const VertexId c : fine_to_coarse) {
    if (c < 0 || c >= coarse_count) {
      throw ContractViolation("coarse id " + std::to_string(c) + " outside [0, " +
                              std::to_string(coarse_count) + ")");
    }
    hit[c] = 1;
  }
  if (std::find(hit.begin(), hit.end(), 0) != hit.end()) {
    throw ContractViolation("coarse map is not surjective");
  }
}

CoarseMap CoarseMap::identity(VertexId n) {
  CoarseMap map;
  map.fine_to_coarse.resize(n);
  std::iota(map.fine_to_coarse.begin(), map.fine_to_coarse.end(), 0);
  map.coarse_count = n;
  return map;
}

CoarseMap match_heavy_edge(const DoublyWeightedGraph &g, std::uint64_t seed) {
  std::vector<VertexId> order(g.n());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(std::span<VertexId>(order));
  return match_heavy_edge(g, order);
}

CoarseMap match_heavy_edge(const DoublyWeightedGraph &g, std::span<const VertexId> order) {
  if (static_cast<VertexId>(order.size()) != g.n()) {
    throw ContractViolation("visit order must list every vertex once");
  }
  constexpr VertexId kUnmatched = -1;
  std::vector<VertexId> mate(g.n(), kUnmatched);

  for (const VertexId u : order) {
    if (u < 0 || u >= g.n()) {
      throw ContractViolation("visit order contains an invalid vertex");
    }
    if (mate[u] != kUnmatched) {
      continue;
    }
    VertexId best = kUnmatched;
    double best_weight = 0.0;
    const auto adj = g.neighbors(u);
    const auto w = g.incident_weights(u);
    // Neighbors are sorted by id, so strict > keeps the lowest id on ties.
    for (std::size_t i = 0; i < adj.size(); ++i) {
      if (mate[adj[i]] == kUnmatched && w[i] > best_weight) {
        best = adj[i];
        best_weight = w[i];
      }
    }
    if (best != kUnmatched) {
      mate[u] = best;
      mate[best] = u;
    } else {
      mate[u] = u;
    }
  }

  CoarseMap map;
  map.fine_to_coarse.assign(g.n(), -1);
  for (VertexId u = 0; u < g.n(); ++u) {
    if (map.fine_to_coarse[u] >= 0) {
      continue;
    }
    map.fine_to_coarse[u] = map.coarse_count;
    map.fine_to_coarse[mate[u]] = map.coarse_count;
    ++map.coarse_count;
  }
  return map;
}

DoublyWeightedGraph contract(const DoublyWeightedGraph &g, const CoarseMap &map, SupernodeWeight rule) {
  if (map.fine_count() != g.n()) {
    throw ContractViolation("coarse map size does not match graph");
  }
  map.validate();

  GraphBuilder builder(map.coarse_count);
  std::vector<double> weights(map.coarse_count, 0.0);
  for (VertexId u = 0; u < g.n(); ++u) {
    const VertexId cu = map.fine_to_coarse[u];
    weights[cu] += rule == SupernodeWeight::kFineDegrees ? g.degree(u) : g.vertex_weight(u);
    if (g.self_loop(u) != 0.0) {
      builder.add_edge(cu, cu, g.self_loop(u));
    }
    const auto adj = g.neighbors(u);
    const auto w = g.incident_weights(u);
    for (std::size_t i = 0; i < adj.size(); ++i) {
      const VertexId v = adj[i];
      if (v < u) {
        continue;
      }
      const VertexId cv = map.fine_to_coarse[v];
      // An internal edge shows up in both endpoints' rows of W, hence twice
      // on the diagonal of the summed matrix.
      builder.add_edge(cu, cv, cu == cv ? 2.0 * w[i] : w[i]);
    }
  }
  for (VertexId c = 0; c < map.coarse_count; ++c) {
    builder.set_vertex_weight(c, weights[c]);
  }
  return builder.build();
}

CoarseMap Hierarchy::composed_map() const {
  CoarseMap composed = CoarseMap::identity(finest().n());
  for (const auto &map : maps) {
    for (auto &c : composed.fine_to_coarse) {
      c = map.fine_to_coarse[c];
    }
    composed.coarse_count = map.coarse_count;
  }
  return composed;
}

Hierarchy build_hierarchy(const DoublyWeightedGraph &g, VertexId stop_threshold, std::uint64_t seed) {
  if (stop_threshold < 1) {
    throw ContractViolation("coarsening threshold must be positive");
  }
  Hierarchy h;
  h.graphs.push_back(g);
  for (std::uint64_t level = 0;; ++level) {
    const auto &current = h.graphs.back();
    const VertexId n = current.n();
    if (n <= stop_threshold || n < 2) {
      break;
    }
    CoarseMap map = match_heavy_edge(current, mix_seed(seed, level));
    if (static_cast<double>(n - map.coarse_count) < kMinCoarseningReduction * n) {
      break;
    }
    const auto rule = level == 0 ? SupernodeWeight::kFineDegrees : SupernodeWeight::kFineVertexWeights;
    DoublyWeightedGraph coarse = contract(current, map, rule);
    h.maps.push_back(std::move(map));
    h.graphs.push_back(std::move(coarse));
  }
  return h;
}

} // namespace wlpart
