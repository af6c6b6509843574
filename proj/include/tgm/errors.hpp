#pragma once

#include <stdexcept>
#include <string>

namespace tgm {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-conforming dimensions, non-square data, empty lists.
class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what) : Error("shape error: " + what) {}
};

/// A value outside the domain an operation accepts (non-Hermitian input,
/// indefinite matrix where a positive one is required, bad index, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class CommutationError : public Error {
 public:
  CommutationError(std::size_t index, double commutator_norm)
      : Error("inputs do not commute: pair " + std::to_string(index) + " has ||AB - BA||_F = " +
              std::to_string(commutator_norm)),
        commutator_norm_(commutator_norm) {}
  double commutator_norm() const noexcept { return commutator_norm_; }

 private:
  double commutator_norm_;
};

/// Invalid campaign configuration; `field` names the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error("config error in '" + field + "': " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace tgm
