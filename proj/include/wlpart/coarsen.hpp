#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wlpart/graph.hpp"

namespace wlpart {

/// Fine vertex -> supernode. Surjective onto [0, coarse_count).
struct CoarseMap {
  std::vector<VertexId> fine_to_coarse;
  VertexId coarse_count = 0;

  [[nodiscard]] VertexId fine_count() const noexcept {
    return static_cast<VertexId>(fine_to_coarse.size());
  }

  // Throws ContractViolation if ids fall outside [0, coarse_count) or some
  // supernode has no members.
  void validate() const;

  static CoarseMap identity(VertexId n);
};

// Heavy-edge matching with a seeded random visit order.
[[nodiscard]] CoarseMap match_heavy_edge(const DoublyWeightedGraph &g, std::uint64_t seed);

// Heavy-edge matching with an explicit visit order (a permutation of [0, n)).
// Each unmatched vertex pairs with its unmatched neighbor of largest edge
// weight, ties going to the lowest id. Supernode ids are numbered by the
// lowest fine id they contain.
[[nodiscard]] CoarseMap match_heavy_edge(const DoublyWeightedGraph &g, std::span<const VertexId> order);

enum class SupernodeWeight {
  // Sum of the fine degrees. Used when contracting the input graph G_0.
  kFineDegrees,
  // Sum of the fine vertex weights. Used at deeper levels, so that every
  // supernode ends up weighted by the total G_0 degree of its members.
  kFineVertexWeights,
};

/// Contracts groups into supernodes: W~_pq sums W_xy over x in p, y in q.
/// Edges inside a group become the self-loop W~_pp, counted from both
/// endpoints (so W~_pp = sum over ordered pairs inside p, plus fine self-loops).
/// This keeps degrees additive: d~_p = sum of d_x over x in p.
[[nodiscard]] DoublyWeightedGraph contract(const DoublyWeightedGraph &g, const CoarseMap &map,
                                           SupernodeWeight rule);

struct Hierarchy {
  // graphs[0] is the input; maps[i] takes graphs[i] to graphs[i + 1].
  std::vector<DoublyWeightedGraph> graphs;
  std::vector<CoarseMap> maps;

  [[nodiscard]] std::size_t depth() const noexcept {
    return maps.size();
  }
  [[nodiscard]] const DoublyWeightedGraph &finest() const {
    return graphs.front();
  }
  [[nodiscard]] const DoublyWeightedGraph &coarsest() const {
    return graphs.back();
  }

  // Composition of all maps: G_0 vertex -> coarsest supernode.
  [[nodiscard]] CoarseMap composed_map() const;
};

// Smallest fraction of vertices a round must remove to keep coarsening.
inline constexpr double kMinCoarseningReduction = 0.02;

[[nodiscard]] inline VertexId default_coarsening_threshold(BlockId k) {
  return std::max<VertexId>(30 * k, 200);
}

/// Repeats match + contract until the current level has at most
/// `stop_threshold` vertices or a round removes fewer than 2% of them.
[[nodiscard]] Hierarchy build_hierarchy(const DoublyWeightedGraph &g, VertexId stop_threshold,
                                        std::uint64_t seed);

} // namespace wlpart
