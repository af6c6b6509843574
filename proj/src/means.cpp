#include "tgm/means.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tgm {

namespace {

void require_strict(const PositiveMatrix& m, const char* which) {
  if (!m.is_strict()) {
    throw DomainError(std::string("mean requires strictly positive definite inputs (") + which +
                      " has min eigenvalue " + std::to_string(m.min_eigenvalue()) + ")");
  }
}

void require_matching_lists(std::span<const PositiveMatrix> a, std::span<const PositiveMatrix> b) {
  if (a.empty()) throw ShapeError("empty sum");
  if (a.size() != b.size()) {
    throw ShapeError("A-list has " + std::to_string(a.size()) + " matrices, B-list has " + std::to_string(b.size()));
  }
}

Matrix spectral_power_matrix(const PositiveMatrix& m, double p) {
  const auto& spec = m.spectrum();
  std::vector<double> values(spec.eigenvalues.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double lambda = spec.eigenvalues[k];
    values[k] = (lambda == 0.0 && p > 0.0) ? 0.0 : std::pow(lambda, p);
  }
  return compose_spectral(spec.eigenvectors, values);
}

}  // namespace

void MeanParams::validate() const {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("t must lie in [0, 1], got " + std::to_string(t));
  if (!(r > 0.0)) throw DomainError("r must be positive, got " + std::to_string(r));
  if (!(s > 0.0)) throw DomainError("s must be positive, got " + std::to_string(s));
}

HermitianMatrix sandwich(const Matrix& outer, const Matrix& inner) {
  const Matrix left = outer * inner;
  const std::size_t n = outer.dim();
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Complex sum{};
      for (std::size_t k = 0; k < n; ++k) sum += left(i, k) * outer(k, j);
      if (i == j) {
        out(i, i) = sum.real();
      } else {
        out(i, j) = sum;
        out(j, i) = std::conj(sum);
      }
    }
  }
  return HermitianMatrix(out);
}

PositiveMatrix geometric_mean(const PositiveMatrix& a, const PositiveMatrix& b, double t) {
  if (a.dim() != b.dim()) throw ShapeError("geometric_mean: dimension mismatch");
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("t must lie in [0, 1], got " + std::to_string(t));
  require_strict(a, "A");
  require_strict(b, "B");
  if (t == 0.0) return a;
  if (t == 1.0) return b;

  // With M = A^(-1/2) B^(1/2) = U S V*, the inner term A^(-1/2) B A^(-1/2) is
  // M M* = U S^2 U*, so the mean is (A^(1/2) U) S^(2t) (A^(1/2) U)*. Working
  // with M instead of M M* halves the dynamic range the solver has to
  // resolve, which keeps nearly singular (regularized) inputs accurate.
  const Matrix a_half = spectral_power_matrix(a, 0.5);
  const Matrix m = spectral_power_matrix(a, -0.5) * spectral_power_matrix(b, 0.5);
  const SingularValueDecomposition svd = jacobi_svd(m);
  std::vector<double> powered(svd.sigma.size());
  for (std::size_t k = 0; k < powered.size(); ++k) powered[k] = std::pow(svd.sigma[k], 2.0 * t);
  return PositiveMatrix::strict(HermitianMatrix(compose_spectral(a_half * svd.u, powered)));
}

RegularizedMean psd_geometric_mean(const PositiveMatrix& a, const PositiveMatrix& b, double t, double epsilon_scale) {
  if (!(epsilon_scale > 0.0)) throw DomainError("epsilon scale must be positive");
  const double norm2 = std::max(a.max_eigenvalue(), b.max_eigenvalue());
  const double eps = epsilon_scale * (1.0 + norm2);
  return RegularizedMean{geometric_mean(shifted(a, eps), shifted(b, eps), t), eps};
}

PositiveMatrix mean_with(const PositiveMatrix& a, const PositiveMatrix& b, double t, const MeanOptions& options,
                         double& epsilon_used) {
  if (!options.epsilon_scale) return geometric_mean(a, b, t);
  auto reg = psd_geometric_mean(a, b, t, *options.epsilon_scale);
  epsilon_used = std::max(epsilon_used, reg.epsilon);
  return std::move(reg.mean);
}

HermitianMatrix sum_matrices(std::span<const HermitianMatrix> terms) {
  if (terms.empty()) throw ShapeError("empty sum");
  Matrix total = terms.front().matrix();
  for (std::size_t i = 1; i < terms.size(); ++i) total = total + terms[i].matrix();
  return HermitianMatrix(total);
}

PositiveMatrix sum_positive(std::span<const PositiveMatrix> terms) {
  if (terms.empty()) throw ShapeError("empty sum");
  // A single term keeps its spectrum: re-diagonalizing a regularized input
  // perturbs its eps-sized eigenvalues by about 1e-6 relative.
  if (terms.size() == 1) return terms.front();
  Matrix total = terms.front().matrix();
  for (std::size_t i = 1; i < terms.size(); ++i) total = total + terms[i].matrix();
  return PositiveMatrix::semidefinite(HermitianMatrix(total));
}

HermitianMatrix lhs_main(std::span<const PositiveMatrix> a, std::span<const PositiveMatrix> b, double t, double r,
                         const MeanOptions& options) {
  require_matching_lists(a, b);
  double eps = 0.0;
  std::vector<HermitianMatrix> terms;
  terms.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    terms.push_back(power(mean_with(a[i], b[i], t, options, eps), r).hermitian());
  }
  return sum_matrices(terms);
}

HermitianMatrix mid_main(std::span<const PositiveMatrix> a, std::span<const PositiveMatrix> b, double r) {
  require_matching_lists(a, b);
  const PositiveMatrix sa = sum_positive(a);
  const PositiveMatrix sb = sum_positive(b);
  return sandwich(spectral_power_matrix(sa, r / 4.0), spectral_power_matrix(sb, r / 2.0));
}

Matrix rhs_main(std::span<const PositiveMatrix> a, std::span<const PositiveMatrix> b, double r) {
  require_matching_lists(a, b);
  const PositiveMatrix sa = sum_positive(a);
  const PositiveMatrix sb = sum_positive(b);
  return spectral_power_matrix(sa, r / 2.0) * spectral_power_matrix(sb, r / 2.0);
}

}  // namespace tgm
