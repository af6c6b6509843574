#pragma once

// Dense complex matrices, Hermitian eigendecomposition and spectral matrix
// functions. Everything here is a pure function of immutable values.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "tgm/errors.hpp"

namespace tgm {

using Complex = std::complex<double>;

/// Square n x n complex matrix, row-major, n >= 1, finite entries.
class Matrix {
 public:
  /// Zero matrix of dimension n.
  explicit Matrix(std::size_t n);
  /// Takes ownership of n*n row-major entries; rejects non-finite values.
  Matrix(std::size_t n, std::vector<Complex> entries);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> values);

  std::size_t dim() const noexcept { return n_; }
  Complex& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }
  std::span<const Complex> entries() const noexcept { return a_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_;
  std::vector<Complex> a_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix add(const Matrix& a, const Matrix& b);
Matrix subtract(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, double c);
Matrix adjoint(const Matrix& a);

inline Matrix operator*(const Matrix& a, const Matrix& b) { return matmul(a, b); }
inline Matrix operator+(const Matrix& a, const Matrix& b) { return add(a, b); }
inline Matrix operator-(const Matrix& a, const Matrix& b) { return subtract(a, b); }
inline Matrix operator*(double c, const Matrix& a) { return scale(a, c); }

double frobenius_norm(const Matrix& a);
Complex trace(const Matrix& a);
/// ||AB - BA||_F
double commutator_norm(const Matrix& a, const Matrix& b);

/// Hermitian matrix. Construction symmetrizes (A + A*)/2 and records the
/// defect ||A - A*||_F, which must not exceed 1e-12 (1 + ||A||_F).
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const Matrix& a);

  const Matrix& matrix() const noexcept { return base_; }
  std::size_t dim() const noexcept { return base_.dim(); }
  double defect() const noexcept { return defect_; }

 private:
  Matrix base_;
  double defect_;
};

/// Eigenvalues sorted nonincreasing; column k of `eigenvectors` belongs to
/// eigenvalues[k].
struct Spectrum {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
};

/// Cyclic complex Jacobi. Converged once the off-diagonal Frobenius mass is
/// at most 1e-13 ||A||_F; throws ConvergenceError after 30 sweeps.
Spectrum hermitian_eigendecompose(const HermitianMatrix& a);

/// M = U diag(sigma) V*, sigma nonincreasing.
struct SingularValueDecomposition {
  Matrix u;
  std::vector<double> sigma;
  Matrix v;
};

/// One-sided (Hestenes) Jacobi on the columns of M. Small singular values keep
/// their relative accuracy far better than square roots of eig(M*M) do.
/// Columns of U belonging to a zero singular value are left zero. Throws
/// ConvergenceError after 60 sweeps.
SingularValueDecomposition jacobi_svd(const Matrix& m);

/// V diag(values) V*, computed so the result is exactly Hermitian.
Matrix compose_spectral(const Matrix& vectors, std::span<const double> values);

enum class Definiteness { Strict, Semidefinite };

/// Hermitian positive (semi)definite matrix together with its spectrum.
///
/// The strict refinement requires a positive minimum eigenvalue. The
/// semidefinite refinement clamps eigenvalues in [-1e-12 (1 + ||A||_2), 0)
/// to zero and rejects anything more negative.
class PositiveMatrix {
 public:
  static PositiveMatrix strict(const HermitianMatrix& a);
  static PositiveMatrix semidefinite(const HermitianMatrix& a);
  /// Builds V diag(lambda) V* from a spectrum the caller already trusts.
  /// Eigenvalues are re-sorted; negative ones follow the clamping rule.
  static PositiveMatrix from_spectrum(Spectrum spectrum, Definiteness kind);

  const HermitianMatrix& hermitian() const noexcept { return base_; }
  const Matrix& matrix() const noexcept { return base_.matrix(); }
  const Spectrum& spectrum() const noexcept { return spectrum_; }
  std::size_t dim() const noexcept { return base_.dim(); }
  double min_eigenvalue() const noexcept { return spectrum_.eigenvalues.back(); }
  double max_eigenvalue() const noexcept { return spectrum_.eigenvalues.front(); }
  bool is_strict() const noexcept { return min_eigenvalue() > 0.0; }

 private:
  PositiveMatrix(HermitianMatrix base, Spectrum spectrum)
      : base_(std::move(base)), spectrum_(std::move(spectrum)) {}
  static PositiveMatrix build(const HermitianMatrix& a, Spectrum spec, Definiteness kind);

  HermitianMatrix base_;
  Spectrum spectrum_;
};

using ScalarFunction = std::function<double(double)>;

/// V diag(f(lambda_i)) V*. Throws DomainError("singular matrix function")
/// when f is not finite at some eigenvalue.
HermitianMatrix matrix_function(const PositiveMatrix& a, const ScalarFunction& f);

/// A^p computed on A's own spectrum, with 0^p = 0 for p > 0. Negative
/// powers require a strictly positive A.
PositiveMatrix power(const PositiveMatrix& a, double p);

/// A + c I for c >= 0, reusing A's eigenvectors.
PositiveMatrix shifted(const PositiveMatrix& a, double c);

}  // namespace tgm
