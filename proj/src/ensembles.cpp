#include "tgm/ensembles.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace tgm {

namespace {

// Sub-stream indices within one spec's seed.
constexpr std::uint64_t kBasisStream = 0;
constexpr std::uint64_t kSpectrumStream = 1;
constexpr std::uint64_t kSecondSpectrumStream = 2;

std::vector<double> log_uniform_spectrum(std::size_t count, double kappa, std::uint64_t seed, bool pin_extremes) {
  Rng rng(seed);
  const double half_log = 0.5 * std::log(kappa);
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) values[i] = std::exp(half_log * (2.0 * rng.uniform() - 1.0));
  if (pin_extremes && count >= 2) {
    values.front() = std::exp(half_log);
    values.back() = std::exp(-half_log);
  }
  return values;
}

PositiveMatrix with_basis(const Matrix& basis, std::vector<double> values, Definiteness kind) {
  return PositiveMatrix::from_spectrum(Spectrum{std::move(values), basis}, kind);
}

}  // namespace

std::uint64_t Rng::mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::normal() noexcept {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return Rng::mix(seed ^ (index * Rng::kGamma));
}

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::PD: return "pd";
    case EnsembleKind::PsdRankDeficient: return "psd-rank-deficient";
    case EnsembleKind::CommutingPair: return "commuting-pair";
    case EnsembleKind::HermitianIndefinite: return "hermitian-indefinite";
  }
  return "?";
}

EnsembleKind parse_ensemble_kind(const std::string& text) {
  for (auto k : {EnsembleKind::PD, EnsembleKind::PsdRankDeficient, EnsembleKind::CommutingPair,
                 EnsembleKind::HermitianIndefinite}) {
    if (text == to_string(k)) return k;
  }
  throw DomainError("unknown ensemble kind '" + text + "'");
}

std::string to_string(Field field) { return field == Field::Real ? "real" : "complex"; }

Field parse_field(const std::string& text) {
  if (text == "real") return Field::Real;
  if (text == "complex") return Field::Complex;
  throw DomainError("unknown field '" + text + "'");
}

void EnsembleSpec::validate() const {
  if (dim == 0) throw DomainError("ensemble dim must be at least 1");
  if (!(condition_target >= 1.0)) throw DomainError("condition target must be >= 1");
  if (rank > dim) throw DomainError("invalid rank " + std::to_string(rank) + " for dim " + std::to_string(dim));
}

HermitianMatrix random_hermitian(std::size_t n, Field field, std::uint64_t seed) {
  Rng rng(seed);
  Matrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = rng.normal();
    for (std::size_t j = i + 1; j < n; ++j) {
      Complex z;
      if (field == Field::Complex) {
        const double re = rng.normal();
        const double im = rng.normal();
        z = Complex(re, im) * (1.0 / std::numbers::sqrt2);
      } else {
        z = rng.normal();
      }
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  return HermitianMatrix(h);
}

Matrix random_unitary(std::size_t n, Field field, std::uint64_t seed) {
  return hermitian_eigendecompose(random_hermitian(n, field, seed)).eigenvectors;
}

Matrix random_matrix(std::size_t n, Field field, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Complex> entries(n * n);
  for (auto& z : entries) {
    const double re = rng.normal();
    z = field == Field::Complex ? Complex(re, rng.normal()) : Complex(re, 0.0);
  }
  return Matrix(n, std::move(entries));
}

PositiveMatrix random_pd(const EnsembleSpec& spec) {
  spec.validate();
  const Matrix basis = random_unitary(spec.dim, spec.field, split_seed(spec.seed, kBasisStream));
  return with_basis(basis,
                    log_uniform_spectrum(spec.dim, spec.condition_target, split_seed(spec.seed, kSpectrumStream), true),
                    Definiteness::Strict);
}

std::pair<PositiveMatrix, PositiveMatrix> random_commuting_pair(const EnsembleSpec& spec) {
  spec.validate();
  const Matrix basis = random_unitary(spec.dim, spec.field, split_seed(spec.seed, kBasisStream));
  const auto first_seed = split_seed(spec.seed, kSpectrumStream);
  const auto second_seed = spec.equal_diagonals ? first_seed : split_seed(spec.seed, kSecondSpectrumStream);
  // Unpinned: pinning both diagonals would put the same extremes on the same
  // basis vectors and correlate the pair.
  return {with_basis(basis, log_uniform_spectrum(spec.dim, spec.condition_target, first_seed, false),
                     Definiteness::Strict),
          with_basis(basis, log_uniform_spectrum(spec.dim, spec.condition_target, second_seed, false),
                     Definiteness::Strict)};
}

PositiveMatrix random_psd_rank_deficient(const EnsembleSpec& spec) {
  spec.validate();
  if (spec.rank >= spec.dim) {
    throw DomainError("invalid rank " + std::to_string(spec.rank) + ": must be below dim " + std::to_string(spec.dim));
  }
  const Matrix basis = random_unitary(spec.dim, spec.field, split_seed(spec.seed, kBasisStream));
  std::vector<double> values =
      log_uniform_spectrum(spec.rank, spec.condition_target, split_seed(spec.seed, kSpectrumStream), true);
  values.resize(spec.dim, 0.0);
  return with_basis(basis, std::move(values), Definiteness::Semidefinite);
}

}  // namespace tgm
