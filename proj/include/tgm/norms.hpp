#pragma once

// Singular values, the unitarily invariant norm family and the
// majorization predicates that certify "for every unitarily invariant norm".

#include <string>
#include <vector>

#include "tgm/linalg.hpp"

namespace tgm {

/// Nonincreasing, nonnegative. Values in [-1e-12 sigma_1, 0) are clamped to
/// zero on construction; anything more negative is rejected.
class SingularValues {
 public:
  explicit SingularValues(std::vector<double> values);

  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double largest() const noexcept { return values_.front(); }

  /// Elementwise sigma_i^p (keeps the order for p > 0).
  SingularValues powered(double p) const;

 private:
  std::vector<double> values_;
};

/// The square roots of the eigenvalues of M*M, computed by one-sided Jacobi
/// on M itself so small values are not lost to squaring.
SingularValues singular_values(const Matrix& m);
/// For a PSD matrix the singular values are its eigenvalues.
SingularValues singular_values(const PositiveMatrix& m);

class NormSpec {
 public:
  enum class Kind { Schatten, KyFan, Operator, Trace };

  /// p >= 1; p = +infinity is the operator norm.
  static NormSpec schatten(double p);
  static NormSpec ky_fan(std::size_t k);
  static NormSpec op() { return NormSpec(Kind::Operator, 0.0, 0); }
  static NormSpec trace() { return NormSpec(Kind::Trace, 0.0, 0); }

  /// "schatten:<p>" (p may be "inf"), "kyfan:<k>", "operator", "trace".
  static NormSpec parse(const std::string& text);
  std::string to_string() const;

  Kind kind() const noexcept { return kind_; }
  double p() const noexcept { return p_; }
  std::size_t k() const noexcept { return k_; }

  friend bool operator==(const NormSpec&, const NormSpec&) = default;

 private:
  NormSpec(Kind kind, double p, std::size_t k) : kind_(kind), p_(p), k_(k) {}
  Kind kind_;
  double p_;
  std::size_t k_;
};

/// Schatten p in {1, 1.5, 2, 3, inf} followed by Ky Fan k = 1..n.
std::vector<NormSpec> default_norm_set(std::size_t n);

/// Throws DomainError("invalid Ky Fan index") when k is outside [1, n].
double ui_norm(const SingularValues& sv, const NormSpec& spec);
double ui_norm(const Matrix& m, const NormSpec& spec);

/// A verdict plus its signed slack. Positive margins are strict.
struct MajorizationResult {
  bool holds;
  double margin;
};

constexpr double kMajorizationRelTol = 1e-9;

/// x weakly majorized by y: every prefix sum of x is at most that of y plus
/// rel_tol (1 + sum y). margin = min_k (prefix_k(y) - prefix_k(x)).
MajorizationResult weak_majorization(const SingularValues& x, const SingularValues& y,
                                     double rel_tol = kMajorizationRelTol);

/// Prefix sums of log sigma (floored at -690) of A against B, allowing
/// k log(1 + rel_tol) of slack at step k.
MajorizationResult log_majorization(const SingularValues& a, const SingularValues& b,
                                    double rel_tol = kMajorizationRelTol);
MajorizationResult log_majorization(const Matrix& a, const Matrix& b, double rel_tol = kMajorizationRelTol);

/// |||A||| <= |||B||| for every unitarily invariant norm, certified through
/// weak majorization of singular values.
MajorizationResult fan_dominance(const Matrix& a, const Matrix& b, double rel_tol = kMajorizationRelTol);

}  // namespace tgm
