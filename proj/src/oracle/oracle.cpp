#include "wlpart/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "wlpart/errors.hpp"

namespace wlpart::oracle {

void for_each_partition(VertexId n, BlockId k, const std::function<void(std::span<const BlockId>)> &visit) {
  if (k < 1 || k > n) {
    return;
  }
  // labels[i] <= 1 + max(labels[0..i-1]); prune when too few positions remain
  // to open the missing blocks.
  std::vector<BlockId> labels(n, 0);
  std::vector<BlockId> prefix_max(n, 0);
  auto recurse = [&](auto &self, VertexId i) -> void {
    if (i == n) {
      if (prefix_max[n - 1] + 1 == k) {
        visit(labels);
      }
      return;
    }
    const BlockId used = prefix_max[i - 1] + 1;
    if (used + (n - i) < k) {
      return;
    }
    const BlockId limit = std::min<BlockId>(used, k - 1);
    for (BlockId b = 0; b <= limit; ++b) {
      labels[i] = b;
      prefix_max[i] = std::max(prefix_max[i - 1], b);
      self(self, i + 1);
    }
  };
  labels[0] = 0;
  prefix_max[0] = 0;
  if (n == 1) {
    if (k == 1) {
      visit(labels);
    }
    return;
  }
  recurse(recurse, 1);
}

namespace {

std::vector<double> block_boundaries(const DoublyWeightedGraph &g, std::span<const BlockId> labels, BlockId k) {
  std::vector<double> boundary(k, 0.0);
  for (VertexId u = 0; u < g.n(); ++u) {
    const auto adj = g.neighbors(u);
    const auto w = g.incident_weights(u);
    for (std::size_t i = 0; i < adj.size(); ++i) {
      if (labels[adj[i]] != labels[u]) {
        boundary[labels[u]] += w[i];
      }
    }
  }
  return boundary;
}

double ratio_sum(const std::vector<double> &boundary, const std::vector<double> &denominators) {
  double total = 0.0;
  for (std::size_t b = 0; b < boundary.size(); ++b) {
    total += boundary[b] / denominators[b];
  }
  return total;
}

void check_size(const DoublyWeightedGraph &g, BlockId k) {
  if (g.n() > kMaxExhaustiveVertices) {
    throw ContractViolation("exhaustive search supports at most " + std::to_string(kMaxExhaustiveVertices) +
                            " vertices, got " + std::to_string(g.n()));
  }
  if (k < 1 || k > g.n()) {
    throw ContractViolation("k out of range for exhaustive search");
  }
}

template <typename Objective>
ExhaustiveResult minimize(VertexId n, BlockId k, Objective objective) {
  ExhaustiveResult result;
  result.best_value = std::numeric_limits<double>::infinity();
  std::vector<BlockId> best;
  for_each_partition(n, k, [&](std::span<const BlockId> labels) {
    ++result.candidates_evaluated;
    const double value = objective(labels);
    if (value < result.best_value) {
      result.best_value = value;
      best.assign(labels.begin(), labels.end());
    }
  });
  result.best_partition = Partition(k, std::move(best));
  return result;
}

} // namespace

double reference_wcut(const DoublyWeightedGraph &g, std::span<const BlockId> labels, BlockId k) {
  if (k == 1) {
    return 0.0;
  }
  std::vector<double> mass(k, 0.0);
  for (VertexId u = 0; u < g.n(); ++u) {
    mass[labels[u]] += g.vertex_weight(u);
  }
  return ratio_sum(block_boundaries(g, labels, k), mass);
}

double reference_ncut(const DoublyWeightedGraph &g, std::span<const BlockId> labels, BlockId k) {
  if (k == 1) {
    return 0.0;
  }
  // Degree recomputed from the adjacency, self-loops included.
  std::vector<double> volume(k, 0.0);
  for (VertexId u = 0; u < g.n(); ++u) {
    const auto w = g.incident_weights(u);
    volume[labels[u]] += std::accumulate(w.begin(), w.end(), g.self_loop(u));
  }
  return ratio_sum(block_boundaries(g, labels, k), volume);
}

ExhaustiveResult brute_min_wcut(const DoublyWeightedGraph &g, BlockId k) {
  check_size(g, k);
  return minimize(g.n(), k, [&](std::span<const BlockId> labels) { return reference_wcut(g, labels, k); });
}

ExhaustiveResult brute_min_ncut(const DoublyWeightedGraph &g, BlockId k) {
  check_size(g, k);
  return minimize(g.n(), k, [&](std::span<const BlockId> labels) { return reference_ncut(g, labels, k); });
}

ExhaustiveResult brute_min_ncut_respecting(const DoublyWeightedGraph &g, const CoarseMap &map, BlockId k) {
  if (map.fine_count() != g.n()) {
    throw ContractViolation("coarse map does not match the graph");
  }
  if (map.coarse_count > kMaxExhaustiveVertices) {
    throw ContractViolation("too many groups for exhaustive search");
  }
  if (k < 1 || k > map.coarse_count) {
    throw ContractViolation("k out of range for exhaustive search");
  }
  std::vector<BlockId> fine(g.n());
  ExhaustiveResult result = minimize(map.coarse_count, k, [&](std::span<const BlockId> coarse) {
    for (VertexId v = 0; v < g.n(); ++v) {
      fine[v] = coarse[map.fine_to_coarse[v]];
    }
    return reference_ncut(g, fine, k);
  });
  std::vector<BlockId> expanded(g.n());
  for (VertexId v = 0; v < g.n(); ++v) {
    expanded[v] = result.best_partition.block(map.fine_to_coarse[v]);
  }
  result.best_partition = Partition(k, std::move(expanded));
  return result;
}

DenseSpectrum dense_eig_reference(const Eigen::MatrixXd &input) {
  const Eigen::Index n = input.rows();
  if (input.cols() != n) {
    throw ContractViolation("matrix is not square");
  }
  if (n > kMaxDenseReference) {
    throw ContractViolation("reference eigensolver supports at most " + std::to_string(kMaxDenseReference) +
                            " rows");
  }
  const double scale = std::max(1.0, input.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(input(i, j) - input(j, i)) > 1e-12 * scale) {
        throw ContractViolation("matrix is not symmetric at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }

  Eigen::MatrixXd a = input;
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  DenseSpectrum result;
  constexpr int kMaxSweeps = 100;
  const double frob = std::max(a.norm(), std::numeric_limits<double>::min());
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        off += a(i, j) * a(i, j);
      }
    }
    if (std::sqrt(off) <= 1e-16 * frob) {
      break;
    }
    ++result.sweeps;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) {
          continue;
        }
        // Rotation that zeroes a(p, q), in the stable tangent form.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index r = 0; r < n; ++r) {
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = c * arp - s * arq;
          a(r, q) = s * arp + c * arq;
        }
        for (Eigen::Index r = 0; r < n; ++r) {
          const double apr = a(p, r);
          const double aqr = a(q, r);
          a(p, r) = c * apr - s * aqr;
          a(q, r) = s * apr + c * aqr;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index r = 0; r < n; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = c * vrp - s * vrq;
          v(r, q) = s * vrp + c * vrq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });
  result.values.resize(n);
  result.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    result.values(i) = a(order[i], order[i]);
    result.vectors.col(i) = v.col(order[i]);
  }
  return result;
}

} // namespace wlpart::oracle
