#include "wlpart/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "wlpart/errors.hpp"
#include "wlpart/random.hpp"

namespace wlpart {

namespace {

// Flip each column so that its largest-magnitude entry (lowest index on ties)
// is positive. Makes the output independent of the solver's sign choices.
void normalize_signs(Eigen::MatrixXd &vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const double a = std::abs(vectors(r, c));
      if (a > best_abs * (1.0 + 1e-12)) {
        best_abs = a;
        best = r;
      }
    }
    if (vectors(best, c) < 0.0) {
      vectors.col(c) = -vectors.col(c);
    }
  }
}

SpectralEmbedding dense_smallest(const WeightedLaplacian &l, int k) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l.dense());
  if (solver.info() != Eigen::Success) {
    throw SolverError("dense symmetric eigensolver failed");
  }
  SpectralEmbedding out;
  out.eigenvalues = solver.eigenvalues().head(k);
  out.vectors = solver.eigenvectors().leftCols(k);
  return out;
}

Eigen::VectorXd random_unit_vector(Eigen::Index n, Rng &rng) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v[i] = 2.0 * rng.uniform() - 1.0;
  }
  return v / v.norm();
}

// Two passes of classical Gram-Schmidt against the first `cols` columns.
// Returns the accumulated projection coefficients.
Eigen::VectorXd orthogonalize(const Eigen::MatrixXd &basis, Eigen::Index cols, Eigen::VectorXd &w) {
  Eigen::VectorXd h = Eigen::VectorXd::Zero(cols);
  for (int pass = 0; pass < 2; ++pass) {
    const Eigen::VectorXd c = basis.leftCols(cols).transpose() * w;
    w.noalias() -= basis.leftCols(cols) * c;
    h += c;
  }
  return h;
}

/// Thick-restart Lanczos with full reorthogonalization on A = sigma I - L,
/// whose largest eigenpairs are the smallest of L. sigma is the Gershgorin
/// bound, so A is positive semidefinite.
///
/// The projected matrix H = V^T A V is assembled column by column from the
/// reorthogonalization coefficients, which keeps the arrowhead structure
/// after a restart without special casing it.
///
/// The residual target is tolerance * max(1, lambda_max). lambda_max is
/// estimated from below by sigma minus the smallest Ritz value of A seen so
/// far, which keeps the target no looser than the exact one.
///
/// A single start vector cannot resolve repeated wanted eigenvalues reliably;
/// the pipeline only reaches this path for connected graphs.
SpectralEmbedding lanczos_smallest(const WeightedLaplacian &l, int k, std::uint64_t seed,
                                   const EigenOptions &options) {
  const Eigen::Index n = l.dimension();
  const double sigma = l.gershgorin_upper_bound();
  const double scale = std::max(1.0, sigma);
  double lambda_max_estimate = 0.0;
  double tolerance = options.tolerance;
  const double breakdown = 1e-12 * scale;

  const Eigen::Index p = std::min<Eigen::Index>(n, 2 * k + options.krylov_extra);
  const int max_restarts = std::max(1, options.max_restarts_per_k * k);

  Rng rng(mix_seed(seed, 0x1a9c));
  Eigen::MatrixXd basis(n, p);
  Eigen::MatrixXd projected = Eigen::MatrixXd::Zero(p, p);
  basis.col(0) = random_unit_vector(n, rng);

  auto apply_shifted = [&](const Eigen::VectorXd &x) -> Eigen::VectorXd { return sigma * x - l.apply(x); };

  Eigen::Index kept = 0;
  std::vector<double> best_residuals(k, std::numeric_limits<double>::infinity());
  Eigen::VectorXd residual(n);
  double residual_norm = 0.0;

  for (int restart = 0; restart <= max_restarts; ++restart) {
    for (Eigen::Index j = kept; j < p; ++j) {
      Eigen::VectorXd w = apply_shifted(basis.col(j));
      const Eigen::VectorXd h = orthogonalize(basis, j + 1, w);
      projected.block(0, j, j + 1, 1) = h;
      projected.block(j, 0, 1, j + 1) = h.transpose();
      const double beta = w.norm();
      if (j + 1 < p) {
        if (beta <= breakdown) {
          // Invariant subspace found; continue with a fresh direction.
          Eigen::VectorXd fresh = random_unit_vector(n, rng);
          (void)orthogonalize(basis, j + 1, fresh);
          basis.col(j + 1) = fresh / fresh.norm();
        } else {
          basis.col(j + 1) = w / beta;
        }
      } else {
        residual = w;
        residual_norm = beta;
      }
    }

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(projected);
    if (ritz.info() != Eigen::Success) {
      throw SolverError("Lanczos projected eigenproblem failed");
    }
    lambda_max_estimate = std::max(lambda_max_estimate, sigma - ritz.eigenvalues()[0]);
    tolerance = options.tolerance * std::max(1.0, lambda_max_estimate);
    // Ascending order; the wanted pairs are the last k.
    bool converged = true;
    for (int i = 0; i < k; ++i) {
      const Eigen::Index idx = p - 1 - i;
      const double r = residual_norm * std::abs(ritz.eigenvectors()(p - 1, idx));
      best_residuals[i] = std::min(best_residuals[i], r);
      converged = converged && r <= tolerance;
    }

    if (converged || restart == max_restarts) {
      SpectralEmbedding out;
      out.eigenvalues.resize(k);
      out.vectors.resize(n, k);
      for (int i = 0; i < k; ++i) {
        const Eigen::Index idx = p - 1 - i;
        out.eigenvalues[i] = sigma - ritz.eigenvalues()[idx];
        out.vectors.col(i) = basis * ritz.eigenvectors().col(idx);
      }
      const auto explicit_residuals = residual_norms(l, out);
      const bool ok = std::all_of(explicit_residuals.begin(), explicit_residuals.end(),
                                  [&](double r) { return r <= tolerance; });
      if (!ok) {
        throw EigenConvergenceError("Lanczos did not reach residual " + std::to_string(tolerance) + " after " +
                                        std::to_string(restart) + " restarts",
                                    explicit_residuals);
      }
      return out;
    }

    // Thick restart: keep the leading Ritz vectors, continue from the residual.
    kept = std::min<Eigen::Index>(p - 1, k + (p - k) / 2);
    const Eigen::MatrixXd keep = ritz.eigenvectors().rightCols(kept).rowwise().reverse();
    const Eigen::MatrixXd new_leading = basis * keep;
    basis.leftCols(kept) = new_leading;
    projected.setZero();
    for (Eigen::Index i = 0; i < kept; ++i) {
      projected(i, i) = ritz.eigenvalues()[p - 1 - i];
    }
    if (residual_norm > breakdown) {
      basis.col(kept) = residual / residual_norm;
    } else {
      Eigen::VectorXd fresh = random_unit_vector(n, rng);
      (void)orthogonalize(basis, kept, fresh);
      basis.col(kept) = fresh / fresh.norm();
    }
  }
  throw EigenConvergenceError("Lanczos restart budget exhausted", best_residuals);
}

} // namespace

SpectralEmbedding smallest_k(const WeightedLaplacian &l, int k, std::uint64_t seed, const EigenOptions &options) {
  const VertexId n = l.dimension();
  if (k < 1 || k > n) {
    throw ContractViolation("need 1 <= k <= n for the eigensolver (k = " + std::to_string(k) +
                            ", n = " + std::to_string(n) + ")");
  }

  EigenMethod method = options.method;
  if (method == EigenMethod::kAuto) {
    const bool small = n <= kDenseLimit;
    const bool krylov_too_wide =
        2 * k + options.krylov_extra >= n / 2 && n <= WeightedLaplacian::kMaxDenseDimension;
    method = (small || krylov_too_wide) ? EigenMethod::kDense : EigenMethod::kLanczos;
  }

  SpectralEmbedding out;
  if (method == EigenMethod::kDense || n <= k + 1) {
    out = dense_smallest(l, k);
  } else {
    out = lanczos_smallest(l, k, seed, options);
  }
  normalize_signs(out.vectors);
  return out;
}

std::vector<double> residual_norms(const WeightedLaplacian &l, const SpectralEmbedding &e) {
  std::vector<double> out(e.k());
  for (int i = 0; i < e.k(); ++i) {
    const Eigen::VectorXd x = e.vectors.col(i);
    out[i] = (l.apply(x) - e.eigenvalues[i] * x).norm();
  }
  return out;
}

Eigen::MatrixXd balanced_vertex_functions(const WeightedLaplacian &l, const SpectralEmbedding &e) {
  const auto &m = l.vertex_weights();
  const double total = std::accumulate(m.begin(), m.end(), 0.0);
  const double target = total / e.k();
  Eigen::MatrixXd f(e.vectors.rows(), e.k());
  for (int c = 0; c < e.k(); ++c) {
    for (Eigen::Index r = 0; r < f.rows(); ++r) {
      f(r, c) = e.vectors(r, c) * l.inv_sqrt_weights()[r];
    }
    const double norm2 = l.inner(std::span<const double>(f.col(c).data(), f.rows()),
                                 std::span<const double>(f.col(c).data(), f.rows()));
    f.col(c) *= std::sqrt(target / norm2);
  }
  return f;
}

} // namespace wlpart
