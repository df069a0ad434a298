#include <algorithm>
#include <limits>
#include <string>

#include "wlpart/cluster.hpp"
#include "wlpart/errors.hpp"
#include "wlpart/random.hpp"

namespace wlpart {

namespace {

double squared_distance(const Eigen::MatrixXd &points, Eigen::Index row, const Eigen::MatrixXd &centers,
                        Eigen::Index center) {
  return (points.row(row) - centers.row(center)).squaredNorm();
}

Eigen::MatrixXd seed_plus_plus(const Eigen::MatrixXd &points, int k, Rng &rng) {
  const Eigen::Index m = points.rows();
  Eigen::MatrixXd centers(k, points.cols());
  std::vector<char> chosen(m, 0);
  std::vector<double> d2(m);

  Eigen::Index first = static_cast<Eigen::Index>(rng.below(m));
  centers.row(0) = points.row(first);
  chosen[first] = 1;
  for (Eigen::Index i = 0; i < m; ++i) {
    d2[i] = squared_distance(points, i, centers, 0);
  }

  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (const double d : d2) {
      total += d;
    }
    Eigen::Index pick = -1;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double running = 0.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        running += d2[i];
        if (d2[i] > 0.0 && running > target) {
          pick = i;
          break;
        }
      }
      if (pick < 0) {
        // target landed on the rounding tail; take the last positive entry
        for (Eigen::Index i = m - 1; i >= 0; --i) {
          if (d2[i] > 0.0) {
            pick = i;
            break;
          }
        }
      }
    } else {
      // All points coincide with some center: pick among unused points.
      std::vector<Eigen::Index> unused;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (!chosen[i]) {
          unused.push_back(i);
        }
      }
      pick = unused[rng.below(unused.size())];
    }
    chosen[pick] = 1;
    centers.row(c) = points.row(pick);
    for (Eigen::Index i = 0; i < m; ++i) {
      d2[i] = std::min(d2[i], squared_distance(points, i, centers, c));
    }
  }
  return centers;
}

// Refills every empty cluster with the point farthest from its center inside
// the cluster of largest inertia (among clusters with at least two points).
// Returns true if anything moved.
bool repair_empty(const Eigen::MatrixXd &points, const Eigen::MatrixXd &centers, std::vector<BlockId> &assignment,
                  int k) {
  const Eigen::Index m = points.rows();
  std::vector<int> sizes(k, 0);
  for (const BlockId b : assignment) {
    ++sizes[b];
  }
  bool moved = false;
  for (int empty = 0; empty < k; ++empty) {
    if (sizes[empty] > 0) {
      continue;
    }
    std::vector<double> cluster_inertia(k, 0.0);
    std::vector<double> dist(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      dist[i] = squared_distance(points, i, centers, assignment[i]);
      cluster_inertia[assignment[i]] += dist[i];
    }
    int donor = -1;
    for (int c = 0; c < k; ++c) {
      if (sizes[c] > 1 && (donor < 0 || cluster_inertia[c] > cluster_inertia[donor])) {
        donor = c;
      }
    }
    Eigen::Index farthest = -1;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (assignment[i] == donor && (farthest < 0 || dist[i] > dist[farthest])) {
        farthest = i;
      }
    }
    assignment[farthest] = empty;
    --sizes[donor];
    ++sizes[empty];
    moved = true;
  }
  return moved;
}

KMeansResult lloyd(const Eigen::MatrixXd &points, int k, Rng &rng, int max_iterations) {
  const Eigen::Index m = points.rows();
  KMeansResult result;
  result.centers = seed_plus_plus(points, k, rng);
  result.assignment.assign(m, -1);

  for (int iteration = 0; iteration < max_iterations; ++iteration) {
    bool changed = false;
    for (Eigen::Index i = 0; i < m; ++i) {
      BlockId best = 0;
      double best_d = squared_distance(points, i, result.centers, 0);
      for (int c = 1; c < k; ++c) {
        const double d = squared_distance(points, i, result.centers, c);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (result.assignment[i] != best) {
        result.assignment[i] = best;
        changed = true;
      }
    }
    changed = repair_empty(points, result.centers, result.assignment, k) || changed;

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
    std::vector<int> counts(k, 0);
    for (Eigen::Index i = 0; i < m; ++i) {
      sums.row(result.assignment[i]) += points.row(i);
      ++counts[result.assignment[i]];
    }
    for (int c = 0; c < k; ++c) {
      result.centers.row(c) = sums.row(c) / counts[c];
    }
    double inertia = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      inertia += squared_distance(points, i, result.centers, result.assignment[i]);
    }
    result.inertia = inertia;
    result.inertia_history.push_back(inertia);
    if (!changed) {
      break;
    }
  }
  return result;
}

} // namespace

KMeansResult kmeans(const Eigen::MatrixXd &points, int k, std::uint64_t seed, const KMeansOptions &options) {
  if (k < 1) {
    throw ContractViolation("k-means needs k >= 1");
  }
  if (points.rows() < k) {
    throw ContractViolation("k-means needs at least k points (m = " + std::to_string(points.rows()) +
                            ", k = " + std::to_string(k) + ")");
  }
  KMeansResult best;
  bool have_best = false;
  for (int restart = 0; restart < std::max(1, options.restarts); ++restart) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(restart)));
    KMeansResult candidate = lloyd(points, k, rng, options.max_iterations);
    if (!have_best || candidate.inertia < best.inertia) {
      best = std::move(candidate);
      have_best = true;
    }
  }
  return best;
}

} // namespace wlpart
