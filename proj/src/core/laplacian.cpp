#include "wlpart/laplacian.hpp"

#include <cmath>

#include "wlpart/errors.hpp"

namespace wlpart {

WeightedLaplacian::WeightedLaplacian(const DoublyWeightedGraph &g)
    : _offsets(g.offsets()), _columns(g.raw_neighbors()), _edge_weights(g.raw_edge_weights()),
      _values(g.raw_edge_weights().size()), _diagonal(g.n()), _vertex_weights(g.vertex_weights()),
      _inv_sqrt_m(g.n()) {
  for (VertexId i = 0; i < g.n(); ++i) {
    if (!(_vertex_weights[i] > 0.0)) {
      throw ContractViolation("weighted Laplacian needs positive vertex weights");
    }
    _inv_sqrt_m[i] = 1.0 / std::sqrt(_vertex_weights[i]);
  }
  for (VertexId i = 0; i < g.n(); ++i) {
    double external = 0.0;
    for (EdgeIndex e = _offsets[i]; e < _offsets[i + 1]; ++e) {
      external += _edge_weights[e];
      _values[e] = -_edge_weights[e] * _inv_sqrt_m[i] * _inv_sqrt_m[_columns[e]];
    }
    // (d_i - W_ii) is exactly the off-diagonal row sum
    _diagonal[i] = external / _vertex_weights[i];
  }
}

void WeightedLaplacian::apply(std::span<const double> x, std::span<double> y) const {
  const VertexId n = dimension();
  if (static_cast<VertexId>(x.size()) != n || static_cast<VertexId>(y.size()) != n) {
    throw ContractViolation("matvec dimension mismatch");
  }
  for (VertexId i = 0; i < n; ++i) {
    double sum = _diagonal[i] * x[i];
    for (EdgeIndex e = _offsets[i]; e < _offsets[i + 1]; ++e) {
      sum += _values[e] * x[_columns[e]];
    }
    y[i] = sum;
  }
}

Eigen::VectorXd WeightedLaplacian::apply(const Eigen::VectorXd &x) const {
  Eigen::VectorXd y(x.size());
  apply(std::span<const double>(x.data(), x.size()), std::span<double>(y.data(), y.size()));
  return y;
}

double WeightedLaplacian::entry(VertexId i, VertexId j) const {
  if (i == j) {
    return _diagonal[i];
  }
  for (EdgeIndex e = _offsets[i]; e < _offsets[i + 1]; ++e) {
    if (_columns[e] == j) {
      return _values[e];
    }
  }
  return 0.0;
}

Eigen::MatrixXd WeightedLaplacian::dense() const {
  const VertexId n = dimension();
  if (n > kMaxDenseDimension) {
    throw ContractViolation("dense materialization limited to " + std::to_string(kMaxDenseDimension) +
                            " vertices");
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (VertexId i = 0; i < n; ++i) {
    a(i, i) = _diagonal[i];
    for (EdgeIndex e = _offsets[i]; e < _offsets[i + 1]; ++e) {
      a(i, _columns[e]) = _values[e];
    }
  }
  return a;
}

double WeightedLaplacian::gershgorin_upper_bound() const {
  double bound = 0.0;
  for (VertexId i = 0; i < dimension(); ++i) {
    double radius = 0.0;
    for (EdgeIndex e = _offsets[i]; e < _offsets[i + 1]; ++e) {
      radius += std::abs(_values[e]);
    }
    bound = std::max(bound, _diagonal[i] + radius);
  }
  return bound;
}

double WeightedLaplacian::trace() const {
  double t = 0.0;
  for (const double d : _diagonal) {
    t += d;
  }
  return t;
}

std::vector<double> WeightedLaplacian::apply_delta(std::span<const double> f) const {
  const VertexId n = dimension();
  if (static_cast<VertexId>(f.size()) != n) {
    throw ContractViolation("vertex function has wrong length");
  }
  std::vector<double> out(n, 0.0);
  for (VertexId x = 0; x < n; ++x) {
    double sum = 0.0;
    for (EdgeIndex e = _offsets[x]; e < _offsets[x + 1]; ++e) {
      sum += (f[x] - f[_columns[e]]) * _edge_weights[e];
    }
    out[x] = sum / _vertex_weights[x];
  }
  return out;
}

double WeightedLaplacian::inner(std::span<const double> f, std::span<const double> g) const {
  const VertexId n = dimension();
  if (static_cast<VertexId>(f.size()) != n || static_cast<VertexId>(g.size()) != n) {
    throw ContractViolation("vertex function has wrong length");
  }
  double sum = 0.0;
  for (VertexId x = 0; x < n; ++x) {
    sum += f[x] * g[x] * _vertex_weights[x];
  }
  return sum;
}

double WeightedLaplacian::dirichlet_energy(std::span<const double> f) const {
  const VertexId n = dimension();
  if (static_cast<VertexId>(f.size()) != n) {
    throw ContractViolation("vertex function has wrong length");
  }
  double sum = 0.0;
  for (VertexId x = 0; x < n; ++x) {
    for (EdgeIndex e = _offsets[x]; e < _offsets[x + 1]; ++e) {
      const VertexId y = _columns[e];
      if (y > x) {
        const double diff = f[x] - f[y];
        sum += diff * diff * _edge_weights[e];
      }
    }
  }
  return sum;
}

double WeightedLaplacian::gradient_energy(std::span<const double> f) const {
  const VertexId n = dimension();
  if (static_cast<VertexId>(f.size()) != n) {
    throw ContractViolation("vertex function has wrong length");
  }
  double sum = 0.0;
  for (VertexId x = 0; x < n; ++x) {
    double local = 0.0;
    for (EdgeIndex e = _offsets[x]; e < _offsets[x + 1]; ++e) {
      const double diff = f[_columns[e]] - f[x];
      local += diff * diff * _edge_weights[e] / _vertex_weights[x];
    }
    sum += _vertex_weights[x] * local;
  }
  return sum;
}

std::vector<double> WeightedLaplacian::to_operator_basis(std::span<const double> f) const {
  std::vector<double> x(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    x[i] = f[i] / _inv_sqrt_m[i];
  }
  return x;
}

std::vector<double> WeightedLaplacian::to_vertex_function(std::span<const double> x) const {
  std::vector<double> f(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    f[i] = x[i] * _inv_sqrt_m[i];
  }
  return f;
}

double rayleigh(const WeightedLaplacian &l, std::span<const double> f) {
  const double denom = l.inner(f, f);
  if (!(denom > 0.0)) {
    throw ContractViolation("Rayleigh quotient of the zero function");
  }
  return l.dirichlet_energy(f) / denom;
}

std::vector<double> indicator(VertexId n, std::span<const VertexId> s) {
  std::vector<double> f(n, 0.0);
  for (const VertexId u : s) {
    f.at(u) = 1.0;
  }
  return f;
}

} // namespace wlpart
