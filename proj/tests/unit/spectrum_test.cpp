#include <cmath>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "wlpart/errors.hpp"
#include "wlpart/oracle.hpp"
#include "wlpart/spectrum.hpp"

namespace wlpart {
namespace {

using testing::path;
using testing::random_connected_graph;

EigenOptions with_method(EigenMethod m) {
  EigenOptions o;
  o.method = m;
  return o;
}

// Largest principal angle (radians) between the column spaces of two
// orthonormal bases.
double max_principal_angle(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b) {
  const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(a.transpose() * b).singularValues();
  return std::acos(std::min(1.0, s.minCoeff()));
}

TEST(SpectrumTest, PathSmallestVectorIsConstant) {
  const WeightedLaplacian l(path(3));
  const auto e = smallest_k(l, 1, 1);
  ASSERT_EQ(e.k(), 1);
  EXPECT_NEAR(e.eigenvalues(0), 0.0, 1e-12);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(e.vectors(i, 0), 1.0 / std::sqrt(3.0), 1e-12);
  }
}

TEST(SpectrumTest, PathFullSpectrum) {
  for (const auto method : {EigenMethod::kDense, EigenMethod::kLanczos}) {
    const auto e = smallest_k(WeightedLaplacian(path(3)), 3, 1, with_method(method));
    EXPECT_NEAR(e.eigenvalues(0), 0.0, 1e-12);
    EXPECT_NEAR(e.eigenvalues(1), 1.0, 1e-12);
    EXPECT_NEAR(e.eigenvalues(2), 3.0, 1e-12);
  }
}

TEST(SpectrumTest, DisconnectedGraphHasDoubleZero) {
  GraphBuilder b(6);
  b.add_edge(0, 1);
  b.add_edge(1, 2);
  b.add_edge(3, 4);
  b.add_edge(4, 5);
  b.add_edge(3, 5);
  for (const auto method : {EigenMethod::kDense, EigenMethod::kLanczos}) {
    const auto e = smallest_k(WeightedLaplacian(b.build()), 2, 3, with_method(method));
    EXPECT_NEAR(e.eigenvalues(0), 0.0, 1e-10);
    EXPECT_NEAR(e.eigenvalues(1), 0.0, 1e-10);
  }
}

TEST(SpectrumTest, RejectsBadK) {
  const WeightedLaplacian l(path(3));
  EXPECT_THROW((void)smallest_k(l, 0, 1), ContractViolation);
  EXPECT_THROW((void)smallest_k(l, 4, 1), ContractViolation);
}

TEST(SpectrumTest, ConvergenceFailureCarriesResiduals) {
  Rng rng(77);
  const auto g = random_connected_graph(rng, {.n = 400, .extra_edge_factor = 3.0});
  EigenOptions o = with_method(EigenMethod::kLanczos);
  o.max_restarts_per_k = 0;
  o.krylov_extra = 2;
  try {
    (void)smallest_k(WeightedLaplacian(g), 6, 1, o);
    FAIL() << "expected EigenConvergenceError";
  } catch (const EigenConvergenceError &e) {
    EXPECT_EQ(e.residuals().size(), 6u);
  }
}

TEST(SpectrumTest, DeterministicPerSeed) {
  Rng rng(78);
  const auto g = random_connected_graph(rng, {.n = 200});
  const WeightedLaplacian l(g);
  const auto o = with_method(EigenMethod::kLanczos);
  const auto a = smallest_k(l, 4, 9, o);
  const auto b = smallest_k(l, 4, 9, o);
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
  EXPECT_EQ(a.vectors, b.vectors);
}

class SpectrumPropertyTest : public ::testing::TestWithParam<int> {};

TEST_P(SpectrumPropertyTest, AgreesWithJacobiReference) {
  Rng rng(mix_seed(500, GetParam()));
  const VertexId n = 20 + static_cast<VertexId>(rng.below(120));
  const auto g = random_connected_graph(rng, {.n = n, .self_loops = GetParam() % 3 == 0});
  const WeightedLaplacian l(g);
  const auto ref = oracle::dense_eig_reference(l.dense());
  const int k = 2 + static_cast<int>(rng.below(6));
  for (const auto method : {EigenMethod::kDense, EigenMethod::kLanczos}) {
    const auto e = smallest_k(l, k, 5, with_method(method));
    for (int i = 0; i < k; ++i) {
      EXPECT_NEAR(e.eigenvalues(i), ref.values(i), 1e-8);
    }
    for (const double r : residual_norms(l, e)) {
      EXPECT_LE(r, 1e-8 * std::max(1.0, l.gershgorin_upper_bound()));
    }
    const Eigen::MatrixXd gram = e.vectors.transpose() * e.vectors;
    EXPECT_LE((gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LE(std::abs(e.eigenvalues(0)), 1e-8);
    if (ref.values(k) - ref.values(k - 1) > 1e-6) {
      EXPECT_LE(max_principal_angle(e.vectors, ref.vectors.leftCols(k)), 1e-6);
    }
  }
}

TEST_P(SpectrumPropertyTest, EigenvaluesSumToTrace) {
  Rng rng(mix_seed(501, GetParam()));
  const auto g = random_connected_graph(rng, {.n = 30, .self_loops = true});
  const WeightedLaplacian l(g);
  const auto e = smallest_k(l, g.n(), 1, with_method(EigenMethod::kDense));
  EXPECT_NEAR(e.eigenvalues.sum(), l.trace(), 1e-10 * l.trace());
  for (int i = 1; i < e.k(); ++i) {
    EXPECT_LE(e.eigenvalues(i - 1), e.eigenvalues(i));
  }
  EXPECT_GE(e.eigenvalues.minCoeff(), -1e-10);
}

TEST_P(SpectrumPropertyTest, BalancedRescalingMeetsConstraint) {
  Rng rng(mix_seed(502, GetParam()));
  const auto g = random_connected_graph(rng, {.n = 40});
  const WeightedLaplacian l(g);
  const int k = 4;
  const auto e = smallest_k(l, k, 2);
  const Eigen::MatrixXd f = balanced_vertex_functions(l, e);
  const double total = g.total_vertex_weight();
  for (int i = 0; i < k; ++i) {
    // <k f^2 - 1, 1> = k <f, f> - mvol(V)
    double norm = 0.0;
    for (VertexId x = 0; x < g.n(); ++x) {
      norm += f(x, i) * f(x, i) * g.vertex_weight(x);
    }
    EXPECT_NEAR(k * norm - total, 0.0, 1e-10 * total);
  }
}

INSTANTIATE_TEST_SUITE_P(Random, SpectrumPropertyTest, ::testing::Range(0, 10));

TEST(SpectrumTest, LanczosOnLargerGraph) {
  Rng rng(79);
  const auto g = random_connected_graph(rng, {.n = 2500, .extra_edge_factor = 2.0});
  const WeightedLaplacian l(testing::with_degree_weights(g));
  const auto e = smallest_k(l, 8, 4);
  for (const double r : residual_norms(l, e)) {
    EXPECT_LE(r, 1e-8 * std::max(1.0, l.gershgorin_upper_bound()));
  }
  EXPECT_NEAR(e.eigenvalues(0), 0.0, 1e-8);
}

} // namespace
} // namespace wlpart
