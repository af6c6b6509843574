#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "tgm/ensembles.hpp"
#include "tgm/norms.hpp"

using namespace tgm;

namespace {

EnsembleSpec spec_of(std::size_t n, EnsembleKind kind, std::uint64_t seed) {
  EnsembleSpec spec;
  spec.dim = n;
  spec.kind = kind;
  spec.seed = seed;
  return spec;
}

}  // namespace

TEST_CASE("SplitMix64 reference outputs for seed 0") {
  Rng rng(0);
  CHECK(rng.next_u64() == 0xE220A8397B1DCDAFULL);
  CHECK(rng.next_u64() == 0x6E789E6AA1B965F4ULL);
  CHECK(rng.next_u64() == 0x06C45D188009454FULL);
}

TEST_CASE("uniform and normal draws") {
  Rng rng(123);
  double sum = 0.0;
  double sum2 = 0.0;
  const int count = 20000;
  for (int i = 0; i < count; ++i) {
    const double u = rng.uniform();
    CHECK((u >= 0.0 && u < 1.0));
    const double z = rng.normal();
    REQUIRE(std::isfinite(z));
    sum += z;
    sum2 += z * z;
  }
  CHECK(std::abs(sum / count) < 0.05);
  CHECK(std::abs(sum2 / count - 1.0) < 0.05);
}

TEST_CASE("split_seed is pure and separates indices") {
  CHECK(split_seed(5, 7) == split_seed(5, 7));
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t s = rng.next_u64();
    CHECK(split_seed(s, 0) != split_seed(s, 1));
  }
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(split_seed(42, i));
  CHECK(seen.size() == 10000);
}

TEST_CASE("generators are deterministic") {
  const auto spec = spec_of(5, EnsembleKind::PD, 99);
  CHECK(random_pd(spec).matrix() == random_pd(spec).matrix());
  CHECK(random_hermitian(4, Field::Complex, 3).matrix() == random_hermitian(4, Field::Complex, 3).matrix());
  CHECK_FALSE(random_pd(spec).matrix() == random_pd(spec_of(5, EnsembleKind::PD, 100)).matrix());
}

TEST_CASE("real field yields real matrices") {
  auto spec = spec_of(4, EnsembleKind::PD, 8);
  spec.field = Field::Real;
  const Matrix a = random_pd(spec).matrix();
  for (const auto& z : a.entries()) CHECK(z.imag() == 0.0);
  const Matrix m = random_matrix(3, Field::Real, 1);
  for (const auto& z : m.entries()) CHECK(z.imag() == 0.0);
}

TEST_CASE("condition target 100, n = 6, seed 17") {
  const PositiveMatrix a = random_pd(spec_of(6, EnsembleKind::PD, 17));
  const SingularValues sv = singular_values(a.matrix());
  const double kappa = sv[0] / sv[5];
  CHECK(kappa >= 50.0);
  CHECK(kappa <= 200.0);
  // The extremes are pinned, so the spectrum's own ratio is exact up to rounding.
  CHECK(a.max_eigenvalue() / a.min_eigenvalue() == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("n = 1 gives a positive scalar inside the condition window") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const PositiveMatrix a = random_pd(spec_of(1, EnsembleKind::PD, seed));
    CHECK(a.min_eigenvalue() >= 0.1 * (1 - 1e-15));
    CHECK(a.max_eigenvalue() <= 10.0 * (1 + 1e-15));
  }
}

TEST_CASE("random unitary is unitary") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix u = random_unitary(1 + seed % 6, Field::Complex, seed);
    CHECK(frobenius_norm(adjoint(u) * u - Matrix::identity(u.dim())) < 1e-13);
  }
}

TEST_CASE("commuting pairs commute") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto [a, b] = random_commuting_pair(spec_of(2 + seed % 5, EnsembleKind::CommutingPair, seed));
    const double bound = 1e-11 * frobenius_norm(a.matrix()) * frobenius_norm(b.matrix());
    CHECK(commutator_norm(a.matrix(), b.matrix()) <= bound);
    CHECK_FALSE(a.matrix() == b.matrix());
  }
}

TEST_CASE("n = 1 commuting pairs are two positive scalars") {
  const auto [a, b] = random_commuting_pair(spec_of(1, EnsembleKind::CommutingPair, 4));
  CHECK(a.min_eigenvalue() > 0.0);
  CHECK(b.min_eigenvalue() > 0.0);
  CHECK(a.max_eigenvalue() != b.max_eigenvalue());
}

TEST_CASE("equal diagonals give A = B") {
  auto spec = spec_of(4, EnsembleKind::CommutingPair, 6);
  spec.equal_diagonals = true;
  const auto [a, b] = random_commuting_pair(spec);
  CHECK(a.matrix() == b.matrix());
}

TEST_CASE("rank-deficient PSD") {
  auto spec = spec_of(4, EnsembleKind::PsdRankDeficient, 12);

  spec.rank = 0;
  CHECK(random_psd_rank_deficient(spec).matrix() == Matrix(4));

  spec.rank = 3;
  const SingularValues sv = singular_values(random_psd_rank_deficient(spec).matrix());
  CHECK(sv[2] > 1e-3);
  CHECK(sv[3] <= 1e-14 * sv[0]);

  spec.rank = 1;
  const PositiveMatrix one = random_psd_rank_deficient(spec);
  const double lambda = one.max_eigenvalue();
  Matrix v(4);
  for (std::size_t i = 0; i < 4; ++i) v(i, 0) = one.spectrum().eigenvectors(i, 0);
  const Matrix outer = lambda * (v * adjoint(v));
  CHECK(frobenius_norm(outer - one.matrix()) <= 1e-14 * lambda);

  spec.rank = 4;
  CHECK_THROWS_WITH_AS(random_psd_rank_deficient(spec), doctest::Contains("invalid rank"), DomainError);
  spec.rank = 5;
  CHECK_THROWS_AS(spec.validate(), DomainError);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(spec_of(0, EnsembleKind::PD, 0).validate(), DomainError);
  auto spec = spec_of(3, EnsembleKind::PD, 0);
  spec.condition_target = 0.5;
  CHECK_THROWS_AS(spec.validate(), DomainError);
  CHECK(parse_ensemble_kind("psd-rank-deficient") == EnsembleKind::PsdRankDeficient);
  CHECK(to_string(EnsembleKind::CommutingPair) == "commuting-pair");
  CHECK_THROWS_AS(parse_ensemble_kind("wishart"), DomainError);
  CHECK(parse_field("real") == Field::Real);
}
