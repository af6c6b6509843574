#include "tgm/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tgm {

namespace {

constexpr double kClampTol = 1e-12;
constexpr double kLogFloor = -690.0;

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b) throw ShapeError("majorization needs equal lengths, got " + std::to_string(a) + " and " + std::to_string(b));
}

double floored_log(double x) { return x > 0.0 ? std::max(std::log(x), kLogFloor) : kLogFloor; }

}  // namespace

SingularValues::SingularValues(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw ShapeError("empty singular value sequence");
  std::stable_sort(values_.begin(), values_.end(), std::greater<>());
  const double floor = -kClampTol * std::max(values_.front(), 0.0);
  for (double& v : values_) {
    if (!std::isfinite(v)) throw DomainError("singular value is not finite");
    if (v >= 0.0) continue;
    if (v < floor) throw DomainError("negative singular value " + std::to_string(v));
    v = 0.0;
  }
}

SingularValues SingularValues::powered(double p) const {
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = values_[i] == 0.0 && p > 0.0 ? 0.0 : std::pow(values_[i], p);
  return SingularValues(std::move(out));
}

SingularValues singular_values(const Matrix& m) { return SingularValues(jacobi_svd(m).sigma); }

SingularValues singular_values(const PositiveMatrix& m) { return SingularValues(m.spectrum().eigenvalues); }

NormSpec NormSpec::schatten(double p) {
  if (!(p >= 1.0)) throw DomainError("Schatten exponent must be >= 1, got " + std::to_string(p));
  return NormSpec(Kind::Schatten, p, 0);
}

NormSpec NormSpec::ky_fan(std::size_t k) {
  if (k == 0) throw DomainError("invalid Ky Fan index 0");
  return NormSpec(Kind::KyFan, 0.0, k);
}

NormSpec NormSpec::parse(const std::string& text) {
  if (text == "operator") return op();
  if (text == "trace") return trace();
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  try {
    if (head == "schatten" && !arg.empty()) {
      if (arg == "inf") return schatten(std::numeric_limits<double>::infinity());
      std::size_t used = 0;
      const double p = std::stod(arg, &used);
      if (used == arg.size()) return schatten(p);
    } else if (head == "kyfan" && !arg.empty()) {
      std::size_t used = 0;
      const unsigned long k = std::stoul(arg, &used);
      if (used == arg.size()) return ky_fan(k);
    }
  } catch (const std::logic_error&) {
  }
  throw DomainError("unrecognized norm spec '" + text + "'");
}

std::string NormSpec::to_string() const {
  switch (kind_) {
    case Kind::Operator: return "operator";
    case Kind::Trace: return "trace";
    case Kind::KyFan: return "kyfan:" + std::to_string(k_);
    case Kind::Schatten: {
      if (std::isinf(p_)) return "schatten:inf";
      std::ostringstream os;
      os.precision(17);
      os << "schatten:" << p_;
      return os.str();
    }
  }
  return "?";
}

std::vector<NormSpec> default_norm_set(std::size_t n) {
  std::vector<NormSpec> out{NormSpec::schatten(1.0), NormSpec::schatten(1.5), NormSpec::schatten(2.0),
                            NormSpec::schatten(3.0), NormSpec::schatten(std::numeric_limits<double>::infinity())};
  for (std::size_t k = 1; k <= n; ++k) out.push_back(NormSpec::ky_fan(k));
  return out;
}

double ui_norm(const SingularValues& sv, const NormSpec& spec) {
  const auto& s = sv.values();
  switch (spec.kind()) {
    case NormSpec::Kind::Operator: return s.front();
    case NormSpec::Kind::Trace: {
      double sum = 0.0;
      for (double v : s) sum += v;
      return sum;
    }
    case NormSpec::Kind::KyFan: {
      if (spec.k() < 1 || spec.k() > s.size()) {
        throw DomainError("invalid Ky Fan index " + std::to_string(spec.k()) + " for dimension " + std::to_string(s.size()));
      }
      double sum = 0.0;
      for (std::size_t i = 0; i < spec.k(); ++i) sum += s[i];
      return sum;
    }
    case NormSpec::Kind::Schatten: {
      const double p = spec.p();
      if (std::isinf(p)) return s.front();
      if (p == 1.0) return ui_norm(sv, NormSpec::trace());
      const double top = s.front();
      if (top == 0.0) return 0.0;
      double sum = 0.0;
      for (double v : s) sum += std::pow(v / top, p);
      return top * std::pow(sum, 1.0 / p);
    }
  }
  return 0.0;
}

double ui_norm(const Matrix& m, const NormSpec& spec) { return ui_norm(singular_values(m), spec); }

MajorizationResult weak_majorization(const SingularValues& x, const SingularValues& y, double rel_tol) {
  require_same_length(x.size(), y.size());
  double total_y = 0.0;
  for (double v : y.values()) total_y += v;
  const double tol = rel_tol * (1.0 + total_y);
  double px = 0.0;
  double py = 0.0;
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < x.size(); ++k) {
    px += x[k];
    py += y[k];
    margin = std::min(margin, py - px);
  }
  return {margin >= -tol, margin};
}

MajorizationResult log_majorization(const SingularValues& a, const SingularValues& b, double rel_tol) {
  require_same_length(a.size(), b.size());
  const double step_tol = std::log1p(rel_tol);
  double la = 0.0;
  double lb = 0.0;
  double margin = std::numeric_limits<double>::infinity();
  bool holds = true;
  for (std::size_t k = 0; k < a.size(); ++k) {
    la += floored_log(a[k]);
    lb += floored_log(b[k]);
    margin = std::min(margin, lb - la);
    holds = holds && la <= lb + static_cast<double>(k + 1) * step_tol;
  }
  return {holds, margin};
}

MajorizationResult log_majorization(const Matrix& a, const Matrix& b, double rel_tol) {
  if (a.dim() != b.dim()) throw ShapeError("log_majorization: dimension mismatch");
  return log_majorization(singular_values(a), singular_values(b), rel_tol);
}

MajorizationResult fan_dominance(const Matrix& a, const Matrix& b, double rel_tol) {
  if (a.dim() != b.dim()) throw ShapeError("fan_dominance: dimension mismatch");
  return weak_majorization(singular_values(a), singular_values(b), rel_tol);
}

}  // namespace tgm
