#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracle.hpp"
#include "tgm/ensembles.hpp"
#include "tgm/means.hpp"
#include "tgm/norms.hpp"

using namespace tgm;

namespace {

Matrix real_matrix(std::size_t n, std::initializer_list<double> values) {
  std::vector<Complex> entries;
  for (double v : values) entries.emplace_back(v, 0.0);
  return Matrix(n, std::move(entries));
}

PositiveMatrix pd(std::size_t n, std::uint64_t seed) {
  EnsembleSpec spec;
  spec.dim = n;
  spec.seed = seed;
  return random_pd(spec);
}

SingularValues sv(std::vector<double> v) { return SingularValues(std::move(v)); }

const double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("singular values of simple matrices") {
  CHECK(singular_values(Matrix::diagonal(std::vector<double>{3.0, -2.0})).values() == std::vector<double>{3.0, 2.0});
  const SingularValues nil = singular_values(real_matrix(2, {0, 1, 0, 0}));
  CHECK(nil[0] == doctest::Approx(1.0));
  CHECK(nil[1] == 0.0);
}

TEST_CASE("singular values, random 5x5 seed 9, against the extended-precision SVD") {
  const Matrix m = random_matrix(5, Field::Complex, 9);
  const SingularValues got = singular_values(m);
  const auto ref = oracle::singular_values(oracle::lift(m));
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(std::abs(got[k] - static_cast<double>(ref[k])) <= 1e-11 * static_cast<double>(ref[0]));
  }
}

TEST_CASE("SingularValues sorts, clamps and rejects") {
  CHECK(sv({1.0, 3.0, 2.0}).values() == std::vector<double>{3.0, 2.0, 1.0});
  CHECK(sv({1.0, -1e-14}).values() == std::vector<double>{1.0, 0.0});
  CHECK_THROWS_AS(sv({1.0, -1e-3}), DomainError);
  CHECK(sv({2.0, 3.0}).powered(2.0).values() == std::vector<double>{9.0, 4.0});
}

TEST_CASE("norm values on sigma = (3, 4)") {
  const SingularValues s = sv({3.0, 4.0});
  CHECK(ui_norm(s, NormSpec::schatten(2.0)) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(ui_norm(s, NormSpec::schatten(1.0)) == 7.0);
  CHECK(ui_norm(s, NormSpec::schatten(kInf)) == 4.0);
  CHECK(ui_norm(s, NormSpec::trace()) == 7.0);
  CHECK(ui_norm(s, NormSpec::op()) == 4.0);
  CHECK(ui_norm(s, NormSpec::ky_fan(1)) == 4.0);
  CHECK(ui_norm(s, NormSpec::ky_fan(2)) == 7.0);
  CHECK(ui_norm(s, NormSpec::schatten(3.0)) == doctest::Approx(std::cbrt(91.0)).epsilon(1e-15));
}

TEST_CASE("invalid norm requests") {
  CHECK_THROWS_WITH_AS(ui_norm(sv({1.0, 2.0}), NormSpec::ky_fan(3)), doctest::Contains("invalid Ky Fan index"),
                       DomainError);
  CHECK_THROWS_AS(NormSpec::ky_fan(0), DomainError);
  CHECK_THROWS_AS(NormSpec::schatten(0.5), DomainError);
  CHECK_THROWS_AS(NormSpec::parse("frobenius"), DomainError);
  CHECK_THROWS_AS(NormSpec::parse("kyfan:x"), DomainError);
}

TEST_CASE("norm spec text round trip") {
  for (const char* text : {"schatten:1", "schatten:1.5", "schatten:inf", "kyfan:3", "operator", "trace"}) {
    CHECK(NormSpec::parse(text).to_string() == text);
  }
  CHECK(NormSpec::parse("schatten:inf") == NormSpec::schatten(kInf));
}

TEST_CASE("default norm set") {
  const auto set = default_norm_set(3);
  REQUIRE(set.size() == 8);
  CHECK(set[0] == NormSpec::schatten(1.0));
  CHECK(set[4] == NormSpec::schatten(kInf));
  CHECK(set[5] == NormSpec::ky_fan(1));
  CHECK(set[7] == NormSpec::ky_fan(3));
}

TEST_CASE("Schatten norms survive large and tiny scales") {
  CHECK(ui_norm(sv({1e200, 1e200}), NormSpec::schatten(2.0)) == doctest::Approx(std::sqrt(2.0) * 1e200));
  CHECK(ui_norm(sv({1e-200, 1e-200}), NormSpec::schatten(3.0)) == doctest::Approx(std::cbrt(2.0) * 1e-200));
  CHECK(ui_norm(sv({0.0, 0.0}), NormSpec::schatten(1.5)) == 0.0);
}

TEST_CASE("weak majorization examples") {
  CHECK(weak_majorization(sv({1.0, 1.0}), sv({2.0, 0.0})).holds);
  CHECK_FALSE(weak_majorization(sv({2.0, 0.0}), sv({1.0, 0.5})).holds);
  const auto r = weak_majorization(sv({3.0, 1.0}), sv({3.0, 2.0}));
  CHECK(r.holds);
  CHECK(r.margin == 0.0);
}

TEST_CASE("log majorization examples") {
  CHECK(log_majorization(sv({2.0, 2.0}), sv({4.0, 1.0})).holds);
  CHECK_FALSE(log_majorization(sv({4.0, 1.0}), sv({2.0, 1.0})).holds);
  // Zeros are floored rather than producing -inf.
  CHECK(log_majorization(sv({1.0, 0.0}), sv({1.0, 0.0})).holds);
}

TEST_CASE("A #_(1/2) B is log-majorized by A^(1/2) B^(1/2), seed 7") {
  const PositiveMatrix a = pd(4, split_seed(7, 0));
  const PositiveMatrix b = pd(4, split_seed(7, 1));
  const Matrix mean = geometric_mean(a, b, 0.5).matrix();
  const Matrix product = power(a, 0.5).matrix() * power(b, 0.5).matrix();
  CHECK(log_majorization(mean, product).holds);
}

TEST_CASE("fan dominance examples") {
  const Matrix a = pd(3, 1).matrix();
  CHECK(fan_dominance(a, 2.0 * a).holds);
  CHECK_FALSE(fan_dominance(2.0 * a, a).holds);

  const std::vector<PositiveMatrix> as{pd(3, split_seed(11, 0)), pd(3, split_seed(11, 2))};
  const std::vector<PositiveMatrix> bs{pd(3, split_seed(11, 1)), pd(3, split_seed(11, 3))};
  CHECK(fan_dominance(mid_main(as, bs, 2.0).matrix(), rhs_main(as, bs, 2.0)).holds);
}

TEST_CASE("property: norm family consistency") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 1 + seed % 6;
    const Matrix m = random_matrix(n, Field::Complex, split_seed(2, seed));
    const SingularValues s = singular_values(m);
    const double trace_norm = ui_norm(s, NormSpec::trace());
    CHECK(ui_norm(s, NormSpec::schatten(1.0)) == doctest::Approx(trace_norm).epsilon(1e-12));
    CHECK(ui_norm(s, NormSpec::ky_fan(n)) == doctest::Approx(trace_norm).epsilon(1e-12));
    CHECK(ui_norm(s, NormSpec::schatten(kInf)) == ui_norm(s, NormSpec::op()));
    CHECK(ui_norm(s, NormSpec::ky_fan(1)) == ui_norm(s, NormSpec::op()));
    CHECK(ui_norm(s, NormSpec::schatten(2.0)) == doctest::Approx(frobenius_norm(m)).epsilon(1e-12));
    // Monotone decreasing in p.
    CHECK(ui_norm(s, NormSpec::schatten(1.5)) <= trace_norm * (1 + 1e-12));
    CHECK(ui_norm(s, NormSpec::schatten(3.0)) <= ui_norm(s, NormSpec::schatten(2.0)) * (1 + 1e-12));
  }
}

TEST_CASE("property: unitary invariance, triangle inequality, homogeneity") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 2 + seed % 5;
    const Matrix a = random_matrix(n, Field::Complex, split_seed(3, seed));
    const Matrix b = random_matrix(n, Field::Complex, split_seed(4, seed));
    const Matrix u = random_unitary(n, Field::Complex, split_seed(5, seed));
    const Matrix v = random_unitary(n, Field::Complex, split_seed(6, seed));
    for (const NormSpec& spec : default_norm_set(n)) {
      const double na = ui_norm(a, spec);
      CHECK(ui_norm(u * a * v, spec) == doctest::Approx(na).epsilon(1e-11));
      CHECK(ui_norm(a + b, spec) <= (na + ui_norm(b, spec)) * (1 + 1e-12));
      CHECK(ui_norm(-2.5 * a, spec) == doctest::Approx(2.5 * na).epsilon(1e-13));
    }
  }
}

TEST_CASE("property: log majorization implies weak majorization") {
  std::size_t log_count = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const std::size_t n = 2 + seed % 4;
    const Matrix a = random_matrix(n, Field::Complex, split_seed(8, seed));
    const Matrix b = random_matrix(n, Field::Complex, split_seed(9, seed));
    const SingularValues sa = singular_values(a);
    const SingularValues sb = singular_values(b);
    if (log_majorization(sa, sb).holds) {
      ++log_count;
      CHECK(weak_majorization(sa, sb).holds);
    }
  }
  CHECK(log_count > 10);
}

TEST_CASE("property: fan dominance implies every norm inequality") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 2 + seed % 4;
    const Matrix a = random_matrix(n, Field::Complex, split_seed(10, seed));
    const Matrix b = a + 0.3 * random_matrix(n, Field::Complex, split_seed(11, seed));
    if (!fan_dominance(a, b).holds) continue;
    for (const NormSpec& spec : default_norm_set(n)) CHECK(ui_norm(a, spec) <= ui_norm(b, spec) * (1 + 1e-9));
  }
}

TEST_CASE("norms of small explicit matrices") {
  CHECK(ui_norm(Matrix::diagonal(std::vector<double>{3.0, 2.0, 1.0}), NormSpec::ky_fan(2)) == doctest::Approx(5.0));
  CHECK(ui_norm(real_matrix(2, {0, 1, 0, 0}), NormSpec::schatten(2.0)) == doctest::Approx(1.0));
}

TEST_CASE("majorization on listed vectors") {
  CHECK(weak_majorization(sv({2.0, 2.0}), sv({3.0, 1.0})).holds);
  CHECK_FALSE(weak_majorization(sv({3.0, 1.0}), sv({2.0, 2.0})).holds);
  CHECK(weak_majorization(sv({1.0, 1.0, 1.0}), sv({3.0, 0.0, 0.0})).holds);
  CHECK_THROWS_AS(weak_majorization(sv({1.0}), sv({1.0, 0.0})), ShapeError);

  const Matrix a = random_matrix(4, Field::Complex, 12);
  const auto self = log_majorization(a, a);
  CHECK(self.holds);
  CHECK(self.margin == 0.0);
}
