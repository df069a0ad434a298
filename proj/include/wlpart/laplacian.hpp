#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wlpart/graph.hpp"

namespace wlpart {

/// L_M = M^{-1/2} (D - W) M^{-1/2} of a doubly-weighted graph, stored sparsely.
///
///   L_M(i, j) = -W_ij / sqrt(m_i m_j)      for i != j
///   L_M(i, i) = (d_i - W_ii) / m_i
///
/// Self-loops cancel on the diagonal. The operator acts on x = M^{1/2} f,
/// where f is a vertex function; (M^{1/2} 1) spans its null space on a
/// connected graph.
///
/// Convention for the quadratic forms (checked against brute-force sums in the
/// tests): with <f, g> = sum_x f(x) g(x) m_x,
///
///   <f, Delta f>   = 1/2 sum_{x,y} (f(x) - f(y))^2 W_xy
///   int |grad f|^2 = sum_{x,y} (f(x) - f(y))^2 W_xy = 2 <f, Delta f>
///
/// so Cut(C, rest) = <1_C, Delta 1_C> = 1/2 int |grad 1_C|^2.
class WeightedLaplacian {
public:
  explicit WeightedLaplacian(const DoublyWeightedGraph &g);

  [[nodiscard]] VertexId dimension() const noexcept {
    return static_cast<VertexId>(_diagonal.size());
  }

  // y = L_M x
  void apply(std::span<const double> x, std::span<double> y) const;
  [[nodiscard]] Eigen::VectorXd apply(const Eigen::VectorXd &x) const;

  [[nodiscard]] double entry(VertexId i, VertexId j) const;
  [[nodiscard]] const std::vector<double> &diagonal() const noexcept {
    return _diagonal;
  }

  // Dense copy; refuses dimensions above kMaxDenseDimension.
  [[nodiscard]] Eigen::MatrixXd dense() const;
  static constexpr VertexId kMaxDenseDimension = 4096;

  // Upper bound on the spectrum: max_i (L_ii + sum_j |L_ij|).
  [[nodiscard]] double gershgorin_upper_bound() const;

  [[nodiscard]] double trace() const;

  [[nodiscard]] const std::vector<double> &vertex_weights() const noexcept {
    return _vertex_weights;
  }
  [[nodiscard]] const std::vector<double> &inv_sqrt_weights() const noexcept {
    return _inv_sqrt_m;
  }

  // Delta f (x) = sum_y (f(x) - f(y)) W_xy / m_x
  [[nodiscard]] std::vector<double> apply_delta(std::span<const double> f) const;

  // <f, g> = sum_x f(x) g(x) m_x
  [[nodiscard]] double inner(std::span<const double> f, std::span<const double> g) const;

  // <f, Delta f> via the edge sum 1/2 sum (f(x) - f(y))^2 W_xy.
  [[nodiscard]] double dirichlet_energy(std::span<const double> f) const;

  // int |grad f|^2 = sum_x m_x sum_y (f(y) - f(x))^2 W_xy / m_x.
  [[nodiscard]] double gradient_energy(std::span<const double> f) const;

  // x = M^{1/2} f and back.
  [[nodiscard]] std::vector<double> to_operator_basis(std::span<const double> f) const;
  [[nodiscard]] std::vector<double> to_vertex_function(std::span<const double> x) const;

private:
  std::vector<EdgeIndex> _offsets;
  std::vector<VertexId> _columns;
  std::vector<double> _edge_weights; // W_ij, off-diagonal only
  std::vector<double> _values;       // -W_ij / sqrt(m_i m_j)
  std::vector<double> _diagonal;
  std::vector<double> _vertex_weights;
  std::vector<double> _inv_sqrt_m;
};

// R(f) = <f, Delta f> / <f, f>. Throws on the zero function.
[[nodiscard]] double rayleigh(const WeightedLaplacian &l, std::span<const double> f);

// 1 on the members of s, 0 elsewhere.
[[nodiscard]] std::vector<double> indicator(VertexId n, std::span<const VertexId> s);

} // namespace wlpart
