#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "wlpart/laplacian.hpp"

namespace wlpart {

/// k smallest eigenpairs of L_M. vectors is n x k with orthonormal columns;
/// eigenvalues are nondecreasing.
struct SpectralEmbedding {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd vectors;

  [[nodiscard]] int k() const noexcept {
    return static_cast<int>(eigenvalues.size());
  }
};

enum class EigenMethod {
  kAuto,    // dense up to kDenseLimit, Lanczos above
  kDense,
  kLanczos,
};

struct EigenOptions {
  EigenMethod method = EigenMethod::kAuto;
  double tolerance = 1e-8;      // residual, relative to max(1, lambda_max)
  int max_restarts_per_k = 50;  // restart budget is this times k
  int krylov_extra = 20;        // Krylov dimension is min(n, 2k + extra)
};

inline constexpr VertexId kDenseLimit = 1024;

[[nodiscard]] SpectralEmbedding smallest_k(const WeightedLaplacian &l, int k, std::uint64_t seed,
                                           const EigenOptions &options = {});

// ||L x_i - lambda_i x_i||_2 per column.
[[nodiscard]] std::vector<double> residual_norms(const WeightedLaplacian &l, const SpectralEmbedding &e);

// f_i = M^{-1/2} x_i scaled so that <f_i, f_i> = (sum of m) / k, i.e. the
// relaxed balance condition <k f_i^2 - 1, 1> = 0. Columns of the result are
// vertex functions.
[[nodiscard]] Eigen::MatrixXd balanced_vertex_functions(const WeightedLaplacian &l, const SpectralEmbedding &e);

} // namespace wlpart
