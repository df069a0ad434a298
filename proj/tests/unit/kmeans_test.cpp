#include <limits>

#include <gtest/gtest.h>

#include "wlpart/cluster.hpp"
#include "wlpart/errors.hpp"
#include "wlpart/random.hpp"

namespace wlpart {
namespace {

double inertia_of(const Eigen::MatrixXd &points, const std::vector<BlockId> &labels, int k) {
  double total = 0.0;
  for (int c = 0; c < k; ++c) {
    Eigen::RowVectorXd center = Eigen::RowVectorXd::Zero(points.cols());
    int count = 0;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      if (labels[i] == c) {
        center += points.row(i);
        ++count;
      }
    }
    if (count == 0) {
      return std::numeric_limits<double>::infinity();
    }
    center /= count;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      if (labels[i] == c) {
        total += (points.row(i) - center).squaredNorm();
      }
    }
  }
  return total;
}

TEST(KMeansTest, ThreePointsMatchBruteForce) {
  Eigen::MatrixXd pts(3, 2);
  pts << 0, 0, 0, 0.1, 10, 10;
  // Brute force over all 2-colorings.
  double best = std::numeric_limits<double>::infinity();
  std::vector<BlockId> best_labels;
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<BlockId> labels{mask & 1, (mask >> 1) & 1, (mask >> 2) & 1};
    const double v = inertia_of(pts, labels, 2);
    if (v < best) {
      best = v;
      best_labels = labels;
    }
  }
  const auto r = kmeans(pts, 2, 1);
  EXPECT_EQ(r.assignment[0], r.assignment[1]);
  EXPECT_NE(r.assignment[0], r.assignment[2]);
  EXPECT_EQ(best_labels[0], best_labels[1]);
  EXPECT_NEAR(r.inertia, best, 1e-12);
}

TEST(KMeansTest, SingleClusterIsCentroid) {
  Eigen::MatrixXd pts(4, 2);
  pts << 0, 0, 2, 0, 0, 2, 2, 2;
  const auto r = kmeans(pts, 1, 3);
  EXPECT_EQ(r.assignment, (std::vector<BlockId>(4, 0)));
  EXPECT_NEAR(r.centers(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(r.centers(0, 1), 1.0, 1e-15);
  EXPECT_NEAR(r.inertia, 8.0, 1e-12);
}

TEST(KMeansTest, KEqualsPointCount) {
  Eigen::MatrixXd pts(4, 1);
  pts << 0, 1, 5, 9;
  const auto r = kmeans(pts, 4, 2);
  std::vector<BlockId> sorted = r.assignment;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<BlockId>{0, 1, 2, 3}));
  EXPECT_DOUBLE_EQ(r.inertia, 0.0);
}

TEST(KMeansTest, DuplicatePointsStillFillEveryCluster) {
  Eigen::MatrixXd pts = Eigen::MatrixXd::Zero(6, 2);
  pts(5, 0) = 1.0;
  const auto r = kmeans(pts, 3, 4);
  std::vector<int> sizes(3, 0);
  for (const BlockId b : r.assignment) {
    ++sizes[b];
  }
  for (const int s : sizes) {
    EXPECT_GT(s, 0);
  }
}

TEST(KMeansTest, RejectsTooFewPoints) {
  EXPECT_THROW((void)kmeans(Eigen::MatrixXd::Zero(2, 2), 3, 1), ContractViolation);
  EXPECT_THROW((void)kmeans(Eigen::MatrixXd::Zero(2, 2), 0, 1), ContractViolation);
}

TEST(KMeansTest, DeterministicAndMonotone) {
  Rng rng(6);
  Eigen::MatrixXd pts(200, 3);
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    for (Eigen::Index j = 0; j < pts.cols(); ++j) {
      pts(i, j) = rng.uniform() + (i % 4 == j ? 3.0 : 0.0);
    }
  }
  const auto a = kmeans(pts, 4, 17);
  const auto b = kmeans(pts, 4, 17);
  EXPECT_EQ(a.assignment, b.assignment);
  EXPECT_EQ(a.inertia, b.inertia);
  ASSERT_FALSE(a.inertia_history.empty());
  for (std::size_t i = 1; i < a.inertia_history.size(); ++i) {
    EXPECT_LE(a.inertia_history[i], a.inertia_history[i - 1] * (1.0 + 1e-12));
  }
  EXPECT_NEAR(a.inertia, inertia_of(pts, a.assignment, 4), 1e-9);
}

} // namespace
} // namespace wlpart
