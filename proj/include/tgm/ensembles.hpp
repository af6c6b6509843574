#pragma once

// Seeded random matrix ensembles. Every generator is a pure function of its
// EnsembleSpec; the random stream is SplitMix64 (documented in Rng), so the
// same spec reproduces the same bits on any conforming platform.

#include <cstdint>
#include <string>
#include <utility>

#include "tgm/linalg.hpp"

namespace tgm {

/// SplitMix64 used as a counter-based generator: output k is
/// mix(seed + (k + 1) * 0x9E3779B97F4A7C15) with
///   z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
///   z ^= z >> 27; z *= 0x94D049BB133111EB;
///   z ^= z >> 31.
class Rng {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) noexcept;

  std::uint64_t next_u64() noexcept {
    state_ += kGamma;
    return mix(state_);
  }
  /// Top 53 bits scaled into [0, 1).
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  /// Box-Muller, cosine branch only: sqrt(-2 ln(1 - u1)) cos(2 pi u2).
  double normal() noexcept;

 private:
  std::uint64_t state_;
};

/// mix(seed ^ (index * 0x9E3779B97F4A7C15)). Injective in index for a fixed
/// seed, since mix is a bijection and the multiplier is odd.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) noexcept;

enum class EnsembleKind { PD, PsdRankDeficient, CommutingPair, HermitianIndefinite };
enum class Field { Real, Complex };

std::string to_string(EnsembleKind kind);
EnsembleKind parse_ensemble_kind(const std::string& text);
std::string to_string(Field field);
Field parse_field(const std::string& text);

struct EnsembleSpec {
  std::size_t dim = 4;
  EnsembleKind kind = EnsembleKind::PD;
  std::size_t rank = 0;  // PsdRankDeficient only
  double condition_target = 100.0;
  Field field = Field::Complex;
  std::uint64_t seed = 0;
  /// CommutingPair only: draw both diagonals from the same sub-seed, so A = B.
  bool equal_diagonals = false;

  /// dim >= 1, condition_target >= 1, rank <= dim.
  void validate() const;
};

/// GUE-style draw: N(0,1) diagonal, off-diagonal (N + iN)/sqrt(2) (complex)
/// or N(0,1) (real).
HermitianMatrix random_hermitian(std::size_t n, Field field, std::uint64_t seed);
/// Eigenvector matrix of a random Hermitian draw.
Matrix random_unitary(std::size_t n, Field field, std::uint64_t seed);
/// Unstructured square matrix with N(0,1) entries (complex: N + iN).
Matrix random_matrix(std::size_t n, Field field, std::uint64_t seed);

/// Q diag(lambda) Q*. lambda is log-uniform on [1/sqrt(kappa), sqrt(kappa)]
/// with, for n >= 2, the two extremes pinned so the condition number is
/// exactly kappa.
PositiveMatrix random_pd(const EnsembleSpec& spec);
/// A = U D1 U*, B = U D2 U* with a shared unitary U and independent
/// log-uniform diagonals (extremes not pinned).
std::pair<PositiveMatrix, PositiveMatrix> random_commuting_pair(const EnsembleSpec& spec);
/// Exactly dim - rank zero eigenvalues; the rest as in random_pd. Throws
/// DomainError("invalid rank") unless rank < dim.
PositiveMatrix random_psd_rank_deficient(const EnsembleSpec& spec);

}  // namespace tgm
