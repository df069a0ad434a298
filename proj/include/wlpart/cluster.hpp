#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "wlpart/graph.hpp"
#include "wlpart/spectrum.hpp"

namespace wlpart {

struct KMeansResult {
  std::vector<BlockId> assignment;
  Eigen::MatrixXd centers; // k x dim
  double inertia = 0.0;
  // Inertia after each Lloyd iteration of the winning restart.
  std::vector<double> inertia_history;
};

struct KMeansOptions {
  int restarts = 10;
  int max_iterations = 300;
};

/// Lloyd iterations from k-means++ seeding on the rows of `points`; best of
/// `restarts` runs by inertia. Empty clusters are refilled by moving the point
/// of the highest-inertia cluster that lies farthest from its center.
[[nodiscard]] KMeansResult kmeans(const Eigen::MatrixXd &points, int k, std::uint64_t seed,
                                  const KMeansOptions &options = {});

enum class Strategy {
  kRandom,
  kRegionGrowing,
  kSpectral,
  kWeightedSpectral,
};

[[nodiscard]] std::string_view strategy_name(Strategy s) noexcept;
// Accepts the names produced by strategy_name(); throws ContractViolation otherwise.
[[nodiscard]] Strategy parse_strategy(std::string_view name);

struct SpectralOptions {
  // Scale rows of U to unit length before k-means (off: rows are used as is).
  bool normalize_rows = false;
  EigenOptions eigen;
  KMeansOptions kmeans;
};

/// Embeds the vertices with the k smallest eigenvectors of L_M built from the
/// graph's own vertex weights, then runs k-means on the rows.
[[nodiscard]] Partition weighted_spectral(const DoublyWeightedGraph &g, BlockId k, std::uint64_t seed,
                                          const SpectralOptions &options = {});

/// Normalized spectral clustering, I - D^{-1/2} W D^{-1/2}, on the graph as
/// stored (self-loops included): weighted_spectral with M replaced by D.
[[nodiscard]] Partition plain_spectral(const DoublyWeightedGraph &g, BlockId k, std::uint64_t seed,
                                       const SpectralOptions &options = {});

struct RegionGrowingOptions {
  double epsilon = 0.05;
  int trials = 8;
};

/// Grows k regions from farthest-first BFS seeds. Each step assigns the
/// unassigned vertex with the heaviest connection to some block whose mvol
/// would stay within (1 + epsilon) mvol(V) / k. Several trials with different
/// start vertices; the least overloaded, then lowest-wcut result wins.
[[nodiscard]] Partition region_growing(const DoublyWeightedGraph &g, BlockId k, std::uint64_t seed,
                                       const RegionGrowingOptions &options = {});

/// Uniform random labels, then empty blocks are refilled from blocks holding
/// more than one vertex.
[[nodiscard]] Partition random_clustering(const DoublyWeightedGraph &g, BlockId k, std::uint64_t seed);

[[nodiscard]] Partition initial_clustering(Strategy s, const DoublyWeightedGraph &g, BlockId k, std::uint64_t seed);

} // namespace wlpart
