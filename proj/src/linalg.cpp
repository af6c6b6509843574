#include "tgm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace tgm {

namespace {

constexpr double kHermitianDefectTol = 1e-12;
constexpr double kJacobiTol = 1e-13;
constexpr int kJacobiMaxSweeps = 30;
constexpr double kSvdTol = 1e-15;
constexpr int kSvdMaxSweeps = 60;
constexpr double kPsdClampTol = 1e-12;

void require_same_dim(const Matrix& a, const Matrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw ShapeError(std::string(op) + ": " + std::to_string(a.dim()) + "x" + std::to_string(a.dim()) +
                     " vs " + std::to_string(b.dim()) + "x" + std::to_string(b.dim()));
  }
}

double off_diagonal_mass(const std::vector<Complex>& a, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) sum += std::norm(a[i * n + j]);
  return std::sqrt(sum);
}

}  // namespace

Matrix::Matrix(std::size_t n) : n_(n), a_(n * n) {
  if (n == 0) throw ShapeError("matrix dimension must be at least 1");
}

Matrix::Matrix(std::size_t n, std::vector<Complex> entries) : n_(n), a_(std::move(entries)) {
  if (n == 0) throw ShapeError("matrix dimension must be at least 1");
  if (a_.size() != n * n) {
    throw ShapeError("expected " + std::to_string(n * n) + " entries for dim " + std::to_string(n) +
                     ", got " + std::to_string(a_.size()));
  }
  for (const auto& z : a_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("matrix entry is not finite");
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "matmul");
  const std::size_t n = a.dim();
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Matrix add(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "add");
  Matrix c = a;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) += b(i, j);
  return c;
}

Matrix subtract(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "subtract");
  Matrix c = a;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) -= b(i, j);
  return c;
}

Matrix scale(const Matrix& a, double c) {
  Matrix out = a;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) *= c;
  return out;
}

Matrix adjoint(const Matrix& a) {
  Matrix out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

double frobenius_norm(const Matrix& a) {
  double sum = 0.0;
  for (const auto& z : a.entries()) sum += std::norm(z);
  return std::sqrt(sum);
}

Complex trace(const Matrix& a) {
  Complex sum{};
  for (std::size_t i = 0; i < a.dim(); ++i) sum += a(i, i);
  return sum;
}

double commutator_norm(const Matrix& a, const Matrix& b) { return frobenius_norm(a * b - b * a); }

HermitianMatrix::HermitianMatrix(const Matrix& a) : base_(a.dim()), defect_(0.0) {
  const std::size_t n = a.dim();
  double defect2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      defect2 += std::norm(a(i, j) - std::conj(a(j, i)));
      base_(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    }
  }
  defect_ = std::sqrt(defect2);
  const double bound = kHermitianDefectTol * (1.0 + frobenius_norm(a));
  if (defect_ > bound) {
    throw DomainError("matrix is not Hermitian: ||A - A*||_F = " + std::to_string(defect_));
  }
}

Spectrum hermitian_eigendecompose(const HermitianMatrix& h) {
  const std::size_t n = h.dim();
  const Matrix& src = h.matrix();
  std::vector<Complex> a(src.entries().begin(), src.entries().end());
  Matrix v = Matrix::identity(n);

  const double threshold = kJacobiTol * frobenius_norm(src);
  double off = off_diagonal_mass(a, n);
  int sweep = 0;
  while (off > threshold) {
    if (sweep == kJacobiMaxSweeps) throw ConvergenceError("eigensolver did not converge", off);
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a[p * n + q];
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        // Phase e makes the (p,q) entry real; then a real Jacobi rotation
        // annihilates it. J = diag(1, conj(e)) [[c, s], [-s, c]].
        const Complex e = apq / g;
        const double app = a[p * n + p].real();
        const double aqq = a[q * n + q].real();
        const double theta = (aqq - app) / (2.0 * g);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex jqp = -s * std::conj(e);
        const Complex jqq = c * std::conj(e);

        // A <- A J
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a[k * n + p];
          const Complex akq = a[k * n + q];
          a[k * n + p] = akp * c + akq * jqp;
          a[k * n + q] = akp * s + akq * jqq;
        }
        // A <- J* A
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a[p * n + k];
          const Complex aqk = a[q * n + k];
          a[p * n + k] = c * apk + std::conj(jqp) * aqk;
          a[q * n + k] = s * apk + std::conj(jqq) * aqk;
        }
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        a[p * n + p] = a[p * n + p].real();
        a[q * n + q] = a[q * n + q].real();
        // V <- V J
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * c + vkq * jqp;
          v(k, q) = vkp * s + vkq * jqq;
        }
      }
    }
    off = off_diagonal_mass(a, n);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a[i * n + i].real() > a[j * n + j].real(); });

  Spectrum out{std::vector<double>(n), Matrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a[order[k] * n + order[k]].real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

SingularValueDecomposition jacobi_svd(const Matrix& m) {
  const std::size_t n = m.dim();
  Matrix x = m;
  Matrix v = Matrix::identity(n);

  auto column_dot = [&](std::size_t p, std::size_t q) {
    Complex sum{};
    for (std::size_t i = 0; i < n; ++i) sum += std::conj(x(i, p)) * x(i, q);
    return sum;
  };

  for (int sweep = 0;; ++sweep) {
    bool rotated = false;
    double worst = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = column_dot(p, p).real();
        const double beta = column_dot(q, q).real();
        const Complex gamma = column_dot(p, q);
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= kSvdTol * std::sqrt(alpha * beta)) continue;
        worst = std::max(worst, g / std::sqrt(alpha * beta));
        rotated = true;
        // Rotate (x_p, e x_q) with e = conj(gamma)/|gamma| so the pair
        // becomes orthogonal.
        const Complex e = std::conj(gamma) / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < n; ++i) {
          const Complex xp = x(i, p);
          const Complex xq = x(i, q) * e;
          x(i, p) = c * xp - s * xq;
          x(i, q) = s * xp + c * xq;
          const Complex vp = v(i, p);
          const Complex vq = v(i, q) * e;
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
    if (sweep + 1 == kSvdMaxSweeps) throw ConvergenceError("SVD did not converge", worst);
  }

  std::vector<double> norms(n);
  for (std::size_t k = 0; k < n; ++k) norms[k] = std::sqrt(column_dot(k, k).real());
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return norms[i] > norms[j]; });

  SingularValueDecomposition out{Matrix(n), std::vector<double>(n), Matrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    const double sigma = norms[src];
    out.sigma[k] = sigma;
    for (std::size_t i = 0; i < n; ++i) {
      if (sigma > 0.0) out.u(i, k) = x(i, src) / sigma;
      out.v(i, k) = v(i, src);
    }
  }
  return out;
}

Matrix compose_spectral(const Matrix& vectors, std::span<const double> values) {
  const std::size_t n = vectors.dim();
  if (values.size() != n) throw ShapeError("spectrum length does not match eigenvector matrix");
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Complex sum{};
      for (std::size_t k = 0; k < n; ++k) sum += vectors(i, k) * values[k] * std::conj(vectors(j, k));
      if (i == j) {
        out(i, i) = sum.real();
      } else {
        out(i, j) = sum;
        out(j, i) = std::conj(sum);
      }
    }
  }
  return out;
}

PositiveMatrix PositiveMatrix::build(const HermitianMatrix& a, Spectrum spec, Definiteness kind) {
  const double spectral_norm = std::max(std::abs(spec.eigenvalues.front()), std::abs(spec.eigenvalues.back()));
  if (kind == Definiteness::Strict) {
    if (!(spec.eigenvalues.back() > 0.0)) {
      throw DomainError("matrix is not strictly positive definite: min eigenvalue " +
                        std::to_string(spec.eigenvalues.back()));
    }
    return PositiveMatrix(a, std::move(spec));
  }
  const double floor = -kPsdClampTol * (1.0 + spectral_norm);
  bool clamped = false;
  for (double& lambda : spec.eigenvalues) {
    if (lambda >= 0.0) continue;
    if (lambda < floor) {
      throw DomainError("matrix is not positive semidefinite: eigenvalue " + std::to_string(lambda));
    }
    lambda = 0.0;
    clamped = true;
  }
  if (!clamped) return PositiveMatrix(a, std::move(spec));
  HermitianMatrix rebuilt(compose_spectral(spec.eigenvectors, spec.eigenvalues));
  return PositiveMatrix(std::move(rebuilt), std::move(spec));
}

PositiveMatrix PositiveMatrix::strict(const HermitianMatrix& a) {
  return build(a, hermitian_eigendecompose(a), Definiteness::Strict);
}

PositiveMatrix PositiveMatrix::semidefinite(const HermitianMatrix& a) {
  return build(a, hermitian_eigendecompose(a), Definiteness::Semidefinite);
}

PositiveMatrix PositiveMatrix::from_spectrum(Spectrum spectrum, Definiteness kind) {
  const std::size_t n = spectrum.eigenvectors.dim();
  if (spectrum.eigenvalues.size() != n) throw ShapeError("spectrum length does not match eigenvector matrix");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return spectrum.eigenvalues[i] > spectrum.eigenvalues[j];
  });
  Spectrum sorted{std::vector<double>(n), Matrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    sorted.eigenvalues[k] = spectrum.eigenvalues[order[k]];
    for (std::size_t i = 0; i < n; ++i) sorted.eigenvectors(i, k) = spectrum.eigenvectors(i, order[k]);
  }
  HermitianMatrix h(compose_spectral(sorted.eigenvectors, sorted.eigenvalues));
  return build(h, std::move(sorted), kind);
}

HermitianMatrix matrix_function(const PositiveMatrix& a, const ScalarFunction& f) {
  const auto& spec = a.spectrum();
  std::vector<double> values(spec.eigenvalues.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = f(spec.eigenvalues[k]);
    if (!std::isfinite(values[k])) {
      throw DomainError("singular matrix function: f(" + std::to_string(spec.eigenvalues[k]) + ") is not finite");
    }
  }
  return HermitianMatrix(compose_spectral(spec.eigenvectors, values));
}

PositiveMatrix power(const PositiveMatrix& a, double p) {
  if (p < 0.0 && !a.is_strict()) {
    throw DomainError("singular matrix function: negative power of a singular matrix");
  }
  const auto& spec = a.spectrum();
  Spectrum out{std::vector<double>(spec.eigenvalues.size()), spec.eigenvectors};
  for (std::size_t k = 0; k < out.eigenvalues.size(); ++k) {
    const double lambda = spec.eigenvalues[k];
    out.eigenvalues[k] = (lambda == 0.0 && p > 0.0) ? 0.0 : std::pow(lambda, p);
    if (!std::isfinite(out.eigenvalues[k])) {
      throw DomainError("singular matrix function: " + std::to_string(lambda) + "^" + std::to_string(p));
    }
  }
  return PositiveMatrix::from_spectrum(std::move(out), a.is_strict() ? Definiteness::Strict : Definiteness::Semidefinite);
}

PositiveMatrix shifted(const PositiveMatrix& a, double c) {
  if (!(c >= 0.0)) throw DomainError("shift must be nonnegative");
  Spectrum out = a.spectrum();
  for (double& lambda : out.eigenvalues) lambda += c;
  return PositiveMatrix::from_spectrum(std::move(out),
                                       c > 0.0 || a.is_strict() ? Definiteness::Strict : Definiteness::Semidefinite);
}

}  // namespace tgm
