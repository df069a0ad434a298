#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include <Eigen/Dense>

#include "wlpart/coarsen.hpp"
#include "wlpart/graph.hpp"

// Brute-force references for small instances. Nothing here shares code with
// the objective or eigensolver implementations it is used to check.
namespace wlpart::oracle {

inline constexpr VertexId kMaxExhaustiveVertices = 14;
inline constexpr VertexId kMaxDenseReference = 300;

struct ExhaustiveResult {
  Partition best_partition;
  double best_value = 0.0;
  std::int64_t candidates_evaluated = 0;
};

/// Calls visit once for every partition of {0..n-1} into exactly k nonempty
/// blocks, up to label permutation (restricted growth strings).
void for_each_partition(VertexId n, BlockId k, const std::function<void(std::span<const BlockId>)> &visit);

/// Exact minimum over all k-partitions. n <= kMaxExhaustiveVertices.
[[nodiscard]] ExhaustiveResult brute_min_wcut(const DoublyWeightedGraph &g, BlockId k);
[[nodiscard]] ExhaustiveResult brute_min_ncut(const DoublyWeightedGraph &g, BlockId k);

/// Minimum ncut over fine partitions in which every group of `map` lies in a
/// single block. Enumerates the coarse side, so coarse_count must be small.
[[nodiscard]] ExhaustiveResult brute_min_ncut_respecting(const DoublyWeightedGraph &g, const CoarseMap &map,
                                                         BlockId k);

/// Objective values computed straight from the edge list.
[[nodiscard]] double reference_wcut(const DoublyWeightedGraph &g, std::span<const BlockId> labels, BlockId k);
[[nodiscard]] double reference_ncut(const DoublyWeightedGraph &g, std::span<const BlockId> labels, BlockId k);

struct DenseSpectrum {
  Eigen::VectorXd values;  // ascending
  Eigen::MatrixXd vectors; // orthonormal columns
  int sweeps = 0;
};

/// Full eigendecomposition by cyclic Jacobi rotations. Rejects non-square,
/// asymmetric or oversized input.
[[nodiscard]] DenseSpectrum dense_eig_reference(const Eigen::MatrixXd &a);

} // namespace wlpart::oracle
