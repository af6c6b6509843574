#pragma once

// The weighted geometric mean A #_t B = A^(1/2) (A^(-1/2) B A^(-1/2))^t A^(1/2)
// and the composite expressions built from it.

#include <optional>
#include <span>
#include <vector>

#include "tgm/linalg.hpp"

namespace tgm {

/// Parameters shared by the mean-based inequalities: 0 <= t <= 1, r > 0, s > 0.
struct MeanParams {
  double t = 0.5;
  double r = 1.0;
  double s = 1.0;

  /// Throws DomainError naming the offending parameter.
  void validate() const;
};

/// Both inputs must be strictly positive definite. Exact endpoints: t = 0
/// returns A and t = 1 returns B.
PositiveMatrix geometric_mean(const PositiveMatrix& a, const PositiveMatrix& b, double t);

struct RegularizedMean {
  PositiveMatrix mean;
  double epsilon;  // absolute shift actually applied
};

/// geometric_mean(A + eps I, B + eps I, t) with
/// eps = epsilon_scale * (1 + max(||A||_2, ||B||_2)). A regularized
/// surrogate for singular PSD inputs, not a limit.
RegularizedMean psd_geometric_mean(const PositiveMatrix& a, const PositiveMatrix& b, double t,
                                   double epsilon_scale);

/// Selects how the geometric mean treats its inputs.
struct MeanOptions {
  /// When set, means go through psd_geometric_mean with this epsilon scale.
  std::optional<double> epsilon_scale;
};

/// Mean under `options`; `epsilon_used` is raised to the applied shift.
PositiveMatrix mean_with(const PositiveMatrix& a, const PositiveMatrix& b, double t, const MeanOptions& options,
                         double& epsilon_used);

HermitianMatrix sum_matrices(std::span<const HermitianMatrix> terms);
/// Sum of PSD matrices, kept as a PositiveMatrix (semidefinite refinement).
PositiveMatrix sum_positive(std::span<const PositiveMatrix> terms);

/// sum_i (A_i #_t B_i)^r; the power is taken on each mean's own spectrum.
HermitianMatrix lhs_main(std::span<const PositiveMatrix> a, std::span<const PositiveMatrix> b, double t, double r,
                         const MeanOptions& options = {});
/// (sum A)^(r/4) (sum B)^(r/2) (sum A)^(r/4)
HermitianMatrix mid_main(std::span<const PositiveMatrix> a, std::span<const PositiveMatrix> b, double r);
/// (sum A)^(r/2) (sum B)^(r/2), in general not Hermitian.
Matrix rhs_main(std::span<const PositiveMatrix> a, std::span<const PositiveMatrix> b, double r);

/// Y X Y as a Hermitian matrix (X, Y Hermitian), for sandwich products.
HermitianMatrix sandwich(const Matrix& outer, const Matrix& inner);

}  // namespace tgm
