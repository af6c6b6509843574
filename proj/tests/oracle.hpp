#pragma once

// Extended-precision reference computations for the tests. These go through
// Eigen's tridiagonal QR and one-sided Jacobi SVD in long double, a separate
// algorithm path from the library's complex Jacobi in double.

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <vector>

#include "tgm/linalg.hpp"

namespace oracle {

using Real = long double;
using Cplx = std::complex<Real>;
using Mat = Eigen::Matrix<Cplx, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

inline Mat lift(const tgm::Matrix& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  Mat out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto z = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      out(i, j) = Cplx(z.real(), z.imag());
    }
  return out;
}

inline tgm::Matrix lower(const Mat& m) {
  tgm::Matrix out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
          tgm::Complex(static_cast<double>(m(i, j).real()), static_cast<double>(m(i, j).imag()));
  return out;
}

inline Real frob(const Mat& m) { return m.norm(); }

/// Eigenvalues of a Hermitian matrix, nonincreasing.
inline std::vector<Real> eigenvalues(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  std::vector<Real> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

/// f applied spectrally to a Hermitian matrix.
template <typename F>
Mat apply(const Mat& h, F f) {
  const Mat sym = (h + h.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<Mat> es(sym);
  Vec values = es.eigenvalues().unaryExpr([&](Real x) { return f(x); });
  return es.eigenvectors() * values.cast<Cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

inline Mat power(const Mat& h, Real p) {
  return apply(h, [p](Real x) { return x <= 0 ? Real(0) : std::pow(x, p); });
}

/// A^(1/2) (A^(-1/2) B A^(-1/2))^t A^(1/2), with the inner power taken from
/// the SVD of A^(-1/2) B^(1/2) so nearly singular inputs stay resolvable.
inline Mat geometric_mean(const Mat& a, const Mat& b, Real t) {
  Eigen::JacobiSVD<Mat> svd(power(a, Real(-0.5)) * power(b, Real(0.5)), Eigen::ComputeFullU);
  const Vec powered = svd.singularValues().unaryExpr([t](Real x) { return std::pow(x, 2 * t); });
  const Mat factor = power(a, Real(0.5)) * svd.matrixU();
  return factor * powered.cast<Cplx>().asDiagonal() * factor.adjoint();
}

/// Singular values, nonincreasing, by one-sided Jacobi SVD.
inline std::vector<Real> singular_values(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  std::vector<Real> out(s.data(), s.data() + s.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

inline Real trace_norm(const Mat& m) {
  Real sum = 0;
  for (Real s : singular_values(m)) sum += s;
  return sum;
}

inline Real ky_fan(const Mat& m, std::size_t k) {
  const auto s = singular_values(m);
  Real sum = 0;
  for (std::size_t i = 0; i < k; ++i) sum += s[i];
  return sum;
}

inline Real op_norm(const Mat& m) { return singular_values(m).front(); }

}  // namespace oracle
