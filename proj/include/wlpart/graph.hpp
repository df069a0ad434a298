#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace wlpart {

using VertexId = std::int32_t;
using BlockId = std::int32_t;
using EdgeIndex = std::int64_t;

/// Undirected graph with positive vertex weights (the diagonal of M) and
/// nonnegative edge weights (W). Neighbor lists are stored in CSR form with
/// both directions of every edge; self-loop weights W_ii live in a separate
/// array and never appear in the neighbor lists.
///
/// Immutable after construction. The degree d_i includes the self-loop.
class DoublyWeightedGraph {
public:
  DoublyWeightedGraph() = default;

  /// Validates symmetry, weight signs and sorted duplicate-free neighbor
  /// lists; throws ContractViolation otherwise.
  DoublyWeightedGraph(std::vector<EdgeIndex> offsets, std::vector<VertexId> neighbors,
                      std::vector<double> edge_weights, std::vector<double> vertex_weights,
                      std::vector<double> self_loops = {});

  [[nodiscard]] VertexId n() const noexcept {
    return static_cast<VertexId>(_vertex_weights.size());
  }

  // Undirected edge count, self-loops excluded.
  [[nodiscard]] EdgeIndex m() const noexcept {
    return static_cast<EdgeIndex>(_neighbors.size()) / 2;
  }

  [[nodiscard]] std::span<const VertexId> neighbors(VertexId u) const noexcept {
    return {_neighbors.data() + _offsets[u], static_cast<std::size_t>(_offsets[u + 1] - _offsets[u])};
  }

  [[nodiscard]] std::span<const double> incident_weights(VertexId u) const noexcept {
    return {_edge_weights.data() + _offsets[u], static_cast<std::size_t>(_offsets[u + 1] - _offsets[u])};
  }

  [[nodiscard]] double vertex_weight(VertexId u) const noexcept {
    return _vertex_weights[u];
  }
  [[nodiscard]] double degree(VertexId u) const noexcept {
    return _degrees[u];
  }
  [[nodiscard]] double self_loop(VertexId u) const noexcept {
    return _self_loops[u];
  }

  // Weight W_uv, 0 if absent. Binary search over u's sorted neighbors.
  [[nodiscard]] double edge_weight(VertexId u, VertexId v) const;

  [[nodiscard]] const std::vector<EdgeIndex> &offsets() const noexcept {
    return _offsets;
  }
  [[nodiscard]] const std::vector<VertexId> &raw_neighbors() const noexcept {
    return _neighbors;
  }
  [[nodiscard]] const std::vector<double> &raw_edge_weights() const noexcept {
    return _edge_weights;
  }
  [[nodiscard]] const std::vector<double> &vertex_weights() const noexcept {
    return _vertex_weights;
  }
  [[nodiscard]] const std::vector<double> &degrees() const noexcept {
    return _degrees;
  }
  [[nodiscard]] const std::vector<double> &self_loops() const noexcept {
    return _self_loops;
  }

  [[nodiscard]] bool has_self_loops() const noexcept;

  // Same structure, different M. Used to realize the M=I / M=D reductions.
  [[nodiscard]] DoublyWeightedGraph with_vertex_weights(std::vector<double> vertex_weights) const;

  // Degrees without the self-loop contribution: d_i - W_ii.
  [[nodiscard]] std::vector<double> external_degrees() const;

  [[nodiscard]] double total_vertex_weight() const noexcept;
  [[nodiscard]] double total_volume() const noexcept;

private:
  std::vector<EdgeIndex> _offsets{0};
  std::vector<VertexId> _neighbors;
  std::vector<double> _edge_weights;
  std::vector<double> _vertex_weights;
  std::vector<double> _self_loops;
  std::vector<double> _degrees;
};

/// Accumulating edge-list builder. Parallel edges are merged by summing their
/// weights; u == v adds to the self-loop.
class GraphBuilder {
public:
  explicit GraphBuilder(VertexId n);

  void add_edge(VertexId u, VertexId v, double weight = 1.0);
  void set_vertex_weight(VertexId u, double weight);

  [[nodiscard]] DoublyWeightedGraph build() const;

private:
  struct Entry {
    VertexId u;
    VertexId v;
    double w;
  };

  VertexId _n;
  std::vector<Entry> _entries;
  std::vector<double> _vertex_weights;
  std::vector<double> _self_loops;
};

/// Assignment of every vertex to one of k blocks.
class Partition {
public:
  Partition() = default;
  Partition(BlockId k, std::vector<BlockId> assignment);

  static Partition single_block(VertexId n);

  [[nodiscard]] BlockId k() const noexcept {
    return _k;
  }
  [[nodiscard]] VertexId size() const noexcept {
    return static_cast<VertexId>(_assignment.size());
  }
  [[nodiscard]] BlockId block(VertexId u) const noexcept {
    return _assignment[u];
  }
  [[nodiscard]] const std::vector<BlockId> &assignment() const noexcept {
    return _assignment;
  }

  void move(VertexId u, BlockId to) noexcept {
    _assignment[u] = to;
  }

  [[nodiscard]] std::vector<VertexId> block_sizes() const;
  [[nodiscard]] bool has_empty_block() const;
  [[nodiscard]] std::vector<VertexId> members(BlockId b) const;

  friend bool operator==(const Partition &, const Partition &) = default;

private:
  BlockId _k = 1;
  std::vector<BlockId> _assignment;
};

// Cut(a, b) = sum of W_ij over i in a, j in b. Throws if a and b overlap.
[[nodiscard]] double cut(const DoublyWeightedGraph &g, std::span<const VertexId> a,
                         std::span<const VertexId> b);

[[nodiscard]] double mvol(const DoublyWeightedGraph &g, std::span<const VertexId> s);
[[nodiscard]] double vol(const DoublyWeightedGraph &g, std::span<const VertexId> s);

// Per-block Cut(C_i, complement of C_i).
[[nodiscard]] std::vector<double> block_cuts(const DoublyWeightedGraph &g, const Partition &p);
[[nodiscard]] std::vector<double> block_mvols(const DoublyWeightedGraph &g, const Partition &p);

// Sum over blocks of Cut(C_i, rest) / mvol(C_i).
[[nodiscard]] double wcut(const DoublyWeightedGraph &g, const Partition &p);
// Sum over blocks of Cut(C_i, rest) / vol(C_i).
[[nodiscard]] double ncut(const DoublyWeightedGraph &g, const Partition &p);
// Total weight of edges whose endpoints lie in different blocks.
[[nodiscard]] double edge_cut(const DoublyWeightedGraph &g, const Partition &p);
// max_i mvol(C_i) / (mvol(V) / k).
[[nodiscard]] double imbalance(const DoublyWeightedGraph &g, const Partition &p);

[[nodiscard]] bool is_connected(const DoublyWeightedGraph &g);

// Component id per vertex (positive-weight edges only), ids in BFS discovery order.
[[nodiscard]] std::vector<VertexId> connected_components(const DoublyWeightedGraph &g,
                                                         VertexId *num_components = nullptr);

struct Subgraph {
  DoublyWeightedGraph graph;
  std::vector<VertexId> to_parent;
};

[[nodiscard]] Subgraph induced_subgraph(const DoublyWeightedGraph &g, std::span<const VertexId> vertices);

} // namespace wlpart
