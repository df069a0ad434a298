#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "wlpart/errors.hpp"
#include "wlpart/laplacian.hpp"
#include "wlpart/oracle.hpp"

namespace wlpart {
namespace {

using testing::path;
using testing::random_connected_graph;

std::vector<double> random_vector(Rng &rng, VertexId n) {
  std::vector<double> x(n);
  for (auto &v : x) {
    v = 2.0 * rng.uniform() - 1.0;
  }
  return x;
}

double dot(const std::vector<double> &a, const std::vector<double> &b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a[i] * b[i];
  }
  return s;
}

std::vector<double> apply_to(const WeightedLaplacian &l, const std::vector<double> &x) {
  std::vector<double> y(x.size());
  l.apply(x, y);
  return y;
}

TEST(LaplacianTest, PathWithIdentityWeightsIsCombinatorialLaplacian) {
  Eigen::MatrixXd expected(3, 3);
  expected << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  EXPECT_TRUE(WeightedLaplacian(path(3)).dense().isApprox(expected, 0.0));
}

TEST(LaplacianTest, PathWithDegreeWeightsIsNormalizedLaplacian) {
  const WeightedLaplacian l(testing::with_degree_weights(path(3)));
  EXPECT_NEAR(l.entry(0, 1), -1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_DOUBLE_EQ(l.entry(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(l.entry(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(l.entry(0, 2), 0.0);
}

TEST(LaplacianTest, SelfLoopCancelsOnTheDiagonal) {
  GraphBuilder b(1);
  b.add_edge(0, 0, 5.0);
  b.set_vertex_weight(0, 2.0);
  const WeightedLaplacian l(b.build());
  EXPECT_EQ(l.dimension(), 1);
  EXPECT_DOUBLE_EQ(l.dense()(0, 0), 0.0);
}

TEST(LaplacianTest, RayleighExamples) {
  const WeightedLaplacian l(path(3));
  const std::vector<double> constant{2.0, 2.0, 2.0};
  const std::vector<double> first{1.0, 0.0, 0.0};
  EXPECT_DOUBLE_EQ(rayleigh(l, constant), 0.0);
  EXPECT_DOUBLE_EQ(rayleigh(l, first), 1.0);
  const std::vector<double> zero(3, 0.0);
  EXPECT_THROW((void)rayleigh(l, zero), ContractViolation);
  const std::vector<double> short_f(2, 1.0);
  EXPECT_THROW((void)rayleigh(l, short_f), ContractViolation);
}

TEST(LaplacianTest, DenseSizeLimit) {
  const WeightedLaplacian l(path(WeightedLaplacian::kMaxDenseDimension + 1));
  EXPECT_THROW((void)l.dense(), ContractViolation);
}

TEST(LaplacianTest, ConventionPinnedAgainstOracle) {
  // For every bipartition of small graphs, the sum of indicator Rayleigh
  // quotients must equal the oracle's wcut evaluated from the edge list.
  for (int trial = 0; trial < 5; ++trial) {
    Rng rng(mix_seed(400, trial));
    const auto g = random_connected_graph(rng, {.n = 8, .self_loops = true});
    const WeightedLaplacian l(g);
    oracle::for_each_partition(g.n(), 2, [&](std::span<const BlockId> labels) {
      const Partition p(2, {labels.begin(), labels.end()});
      double sum = 0.0;
      for (BlockId b = 0; b < 2; ++b) {
        sum += rayleigh(l, indicator(g.n(), p.members(b)));
      }
      const double ref = oracle::reference_wcut(g, labels, 2);
      EXPECT_NEAR(sum, ref, 1e-12 * ref);
    });
  }
}

class LaplacianPropertyTest : public ::testing::TestWithParam<int> {};

TEST_P(LaplacianPropertyTest, SymmetricPositiveSemidefiniteWithKnownNullVector) {
  Rng rng(mix_seed(401, GetParam()));
  const auto g = random_connected_graph(rng, {.n = 40, .self_loops = true});
  const WeightedLaplacian l(g);
  const auto x = random_vector(rng, g.n());
  const auto y = random_vector(rng, g.n());
  const double xly = dot(x, apply_to(l, y));
  const double lxy = dot(apply_to(l, x), y);
  EXPECT_NEAR(xly, lxy, 1e-10 * std::max(1.0, std::abs(xly)));
  EXPECT_GE(dot(x, apply_to(l, x)), -1e-10 * dot(x, x));

  std::vector<double> sqrt_m(g.n());
  for (VertexId i = 0; i < g.n(); ++i) {
    sqrt_m[i] = std::sqrt(g.vertex_weight(i));
  }
  for (const double v : apply_to(l, sqrt_m)) {
    EXPECT_NEAR(v, 0.0, 1e-12);
  }
}

TEST_P(LaplacianPropertyTest, IndicatorQuotientIsCutOverMvol) {
  Rng rng(mix_seed(402, GetParam()));
  const auto g = random_connected_graph(rng, {.n = 30, .self_loops = true});
  const WeightedLaplacian l(g);
  const BlockId k = 3;
  const auto p = testing::random_partition(rng, g.n(), k);
  double sum = 0.0;
  for (BlockId b = 0; b < k; ++b) {
    const auto members = p.members(b);
    std::vector<VertexId> rest;
    for (VertexId u = 0; u < g.n(); ++u) {
      if (p.block(u) != b) {
        rest.push_back(u);
      }
    }
    const auto f = indicator(g.n(), members);
    const double expected = cut(g, members, rest) / mvol(g, members);
    const double r = rayleigh(l, f);
    EXPECT_NEAR(r, expected, 1e-12 * expected);
    // <1_C, Delta 1_C> is the cut itself; the gradient form is twice that.
    EXPECT_NEAR(l.inner(f, l.apply_delta(f)), cut(g, members, rest), 1e-12 * expected * mvol(g, members));
    EXPECT_NEAR(l.gradient_energy(f), 2.0 * l.dirichlet_energy(f), 1e-12 * l.gradient_energy(f));
    sum += r;
  }
  EXPECT_NEAR(sum, wcut(g, p), 1e-12 * sum);
}

TEST_P(LaplacianPropertyTest, OperatorBasisMatchesDeltaForm) {
  // <f, Delta f> in vertex space equals x^T L x with x = M^{1/2} f.
  Rng rng(mix_seed(403, GetParam()));
  const auto g = random_connected_graph(rng, {.n = 25, .self_loops = true});
  const WeightedLaplacian l(g);
  const auto f = random_vector(rng, g.n());
  const auto x = l.to_operator_basis(f);
  const double a = l.inner(f, l.apply_delta(f));
  const double b = dot(x, apply_to(l, x));
  EXPECT_NEAR(a, b, 1e-11 * std::max(1.0, std::abs(a)));
  EXPECT_NEAR(a, l.dirichlet_energy(f), 1e-11 * std::max(1.0, std::abs(a)));
  const auto back = l.to_vertex_function(x);
  for (VertexId i = 0; i < g.n(); ++i) {
    EXPECT_NEAR(back[i], f[i], 1e-14);
  }
}

TEST_P(LaplacianPropertyTest, SelfLoopsDoNotChangeTheOperator) {
  Rng rng(mix_seed(404, GetParam()));
  const auto g = random_connected_graph(rng, {.n = 30});
  GraphBuilder b(g.n());
  for (VertexId u = 0; u < g.n(); ++u) {
    b.set_vertex_weight(u, g.vertex_weight(u));
    const auto adj = g.neighbors(u);
    const auto w = g.incident_weights(u);
    for (std::size_t i = 0; i < adj.size(); ++i) {
      if (adj[i] > u) {
        b.add_edge(u, adj[i], w[i]);
      }
    }
    b.add_edge(u, u, 10.0 * rng.uniform());
  }
  const WeightedLaplacian plain(g);
  const WeightedLaplacian looped(b.build());
  const auto x = random_vector(rng, g.n());
  EXPECT_EQ(apply_to(plain, x), apply_to(looped, x));
}

TEST_P(LaplacianPropertyTest, ReducesToKnownLaplacians) {
  Rng rng(mix_seed(405, GetParam()));
  const auto g = random_connected_graph(rng, {.n = 35, .random_vertex_weights = false});
  const VertexId n = g.n();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (VertexId u = 0; u < n; ++u) {
    const auto adj = g.neighbors(u);
    const auto ew = g.incident_weights(u);
    for (std::size_t i = 0; i < adj.size(); ++i) {
      w(u, adj[i]) = ew[i];
    }
  }
  const Eigen::VectorXd d = w.rowwise().sum();
  const Eigen::MatrixXd combinatorial = Eigen::MatrixXd(d.asDiagonal()) - w;
  EXPECT_LE((WeightedLaplacian(g).dense() - combinatorial).cwiseAbs().maxCoeff(), 1e-14);

  const Eigen::VectorXd inv_sqrt_d = d.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd normalized =
      Eigen::MatrixXd::Identity(n, n) - inv_sqrt_d.asDiagonal() * w * inv_sqrt_d.asDiagonal();
  const WeightedLaplacian ld(testing::with_degree_weights(g));
  EXPECT_LE((ld.dense() - normalized).cwiseAbs().maxCoeff(), 1e-14);
}

TEST_P(LaplacianPropertyTest, TraceAndGershgorin) {
  Rng rng(mix_seed(406, GetParam()));
  const auto g = random_connected_graph(rng, {.n = 20, .self_loops = true});
  const WeightedLaplacian l(g);
  double expected = 0.0;
  for (VertexId i = 0; i < g.n(); ++i) {
    expected += (g.degree(i) - g.self_loop(i)) / g.vertex_weight(i);
  }
  EXPECT_NEAR(l.trace(), expected, 1e-12 * expected);
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(l.dense()).eigenvalues();
  EXPECT_LE(ev.maxCoeff(), l.gershgorin_upper_bound() + 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Random, LaplacianPropertyTest, ::testing::Range(0, 15));

} // namespace
} // namespace wlpart
