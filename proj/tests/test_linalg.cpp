#include <catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "sumdiff/errors.hpp"
#include "sumdiff/linalg.hpp"
#include "sumdiff/random.hpp"

using namespace sumdiff;
using Catch::Matchers::WithinAbs;

namespace {

const ComplexMatrix kSigmaZ{{1, 0}, {0, -1}};
const Complex kI(0.0, 1.0);

ComplexMatrix bell_projector() {
  ComplexVector phi{1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0)};
  return ComplexMatrix::outer(phi, phi);
}

double orthonormality_error(const EigenSystem& es) {
  double worst = 0.0;
  for (std::size_t i = 0; i < es.size(); ++i) {
    for (std::size_t j = 0; j < es.size(); ++j) {
      const Complex expected = i == j ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(inner(es.vectors[i], es.vectors[j]) - expected));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("kron small cases", "[linalg]") {
  CHECK(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) == ComplexMatrix::identity(4));
  CHECK(kron(ComplexMatrix::diagonal({1, 0}), ComplexMatrix::identity(2)) ==
        ComplexMatrix::diagonal({1, 1, 0, 0}));
  CHECK(kron(kSigmaZ, kSigmaZ) == ComplexMatrix::diagonal({1, -1, -1, 1}));
}

TEST_CASE("kron obeys the mixed product rule", "[linalg]") {
  Rng rng(11);
  const auto a = random_ginibre(2, rng), b = random_ginibre(3, rng);
  const auto c = random_ginibre(2, rng), d = random_ginibre(3, rng);
  CHECK(max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) < 1e-12);
}

TEST_CASE("unfold and fold", "[linalg]") {
  CHECK(unfold(ComplexMatrix::identity(2)) == ComplexVector{1, 0, 0, 1});
  CHECK(unfold(kSigmaZ) == ComplexVector{1, 0, 0, -1});
  CHECK(fold(ComplexVector{1, 0, 0, 1}) == ComplexMatrix::identity(2));

  // Component (j, k) carries <k|A|j>.
  const ComplexMatrix a{{1, 2}, {3, 4}};
  CHECK(unfold(a) == ComplexVector{1, 3, 2, 4});

  Rng rng(3);
  for (int n = 0; n < 10; ++n) {
    const ComplexMatrix m = random_ginibre(4, rng);
    CHECK(fold(unfold(m)) == m);
  }
  CHECK_THROWS_AS(fold(ComplexVector(5)), DimensionError);
}

TEST_CASE("unfold ket reproduces the Choi matrix of a single Kraus operator", "[linalg]") {
  Rng rng(4);
  const std::size_t d = 3;
  const ComplexMatrix a = random_ginibre(d, rng);
  const ComplexVector v = unfold(a);
  ComplexMatrix expected(d * d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      const ComplexMatrix unit = ComplexMatrix::unit(d, j, k);
      expected += kron(unit, a * unit * a.dagger());
    }
  }
  CHECK(max_abs_diff(ComplexMatrix::outer(v, v), expected) < 1e-12);
}

TEST_CASE("folding a J pair vector gives the diagonal operator shape", "[linalg]") {
  const double phi = -0.83;
  const double mag = 0.4;
  ComplexVector v(16);
  v[0] = std::sqrt(mag / 2.0);
  v[5] = std::sqrt(mag / 2.0) * std::polar(1.0, phi);
  const ComplexMatrix k = fold(v);
  ComplexMatrix expected(4);
  expected(0, 0) = std::sqrt(mag / 2.0);
  expected(1, 1) = std::sqrt(mag / 2.0) * std::polar(1.0, phi);
  CHECK(max_abs_diff(k, expected) < 1e-15);
}

TEST_CASE("Jacobi eigensolver small cases", "[linalg]") {
  const EigenSystem z = eig_hermitian(kSigmaZ);
  REQUIRE(z.size() == 2);
  CHECK_THAT(z.values[0], WithinAbs(1.0, 1e-15));
  CHECK_THAT(z.values[1], WithinAbs(-1.0, 1e-15));

  const EigenSystem d = eig_hermitian(ComplexMatrix::diagonal({0.3, 0.9, 0.1, 0.5}));
  CHECK(d.values == std::vector<double>{0.9, 0.5, 0.3, 0.1});

  // GAD B- at lambda = 0.36: corner block a +- |b| with a = 0.4, b = -0.2.
  const ComplexMatrix b_minus{{0.4, 0, 0, -0.2}, {0, 0, 0, 0}, {0, 0, 0, 0}, {-0.2, 0, 0, 0.4}};
  const EigenSystem g = eig_hermitian(b_minus);
  CHECK_THAT(g.values[0], WithinAbs(0.6, 1e-14));
  CHECK_THAT(g.values[1], WithinAbs(0.2, 1e-14));
  CHECK_THAT(g.values[2], WithinAbs(0.0, 1e-14));
  CHECK_THAT(g.values[3], WithinAbs(0.0, 1e-14));
}

TEST_CASE("Jacobi eigensolver on random Hermitian matrices", "[linalg]") {
  Rng rng(5);
  for (std::size_t dim : {1u, 2u, 3u, 4u, 8u, 16u}) {
    for (int n = 0; n < 5; ++n) {
      const ComplexMatrix h = random_hermitian(dim, rng);
      const EigenSystem es = eig_hermitian(h);
      CHECK(max_abs_diff(es.reconstruct(dim), h) <= 10 * 1e-13 * std::max(1.0, h.max_abs()) * dim);
      CHECK(orthonormality_error(es) < 1e-12);
      CHECK(std::is_sorted(es.values.rbegin(), es.values.rend()));
      double trace = 0.0;
      for (double x : es.values) trace += x;
      CHECK_THAT(trace, WithinAbs(h.trace().real(), 1e-12));
    }
  }
}

TEST_CASE("Jacobi contract violations", "[linalg]") {
  CHECK_THROWS_AS(eig_hermitian(ComplexMatrix{{1, 2}, {0, 1}}), ContractError);
  Rng rng(6);
  const ComplexMatrix h = random_hermitian(8, rng);
  CHECK_THROWS_AS(eig_hermitian(h, JacobiOptions{1e-13, 1}), ConvergenceError);
}

TEST_CASE("eigenvector phase convention", "[linalg]") {
  ComplexVector v{Complex(0, 0.6), Complex(0, -0.8)};
  normalize_phase(v);
  CHECK(std::abs(v[1].imag()) < 1e-15);
  CHECK(v[1].real() >= 0.0);
  CHECK_THAT(v.norm(), WithinAbs(1.0, 1e-15));
}

TEST_CASE("rank-2 pair closed form", "[linalg]") {
  const EigenSystem one = eig_rank2_pair(1.0, 0, 1, 2);
  REQUIRE(one.size() == 2);
  CHECK_THAT(one.values[0], WithinAbs(1.0, 1e-15));
  CHECK_THAT(one.values[1], WithinAbs(-1.0, 1e-15));
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(one.vectors[0][0] - h) < 1e-15);
  CHECK(std::abs(one.vectors[0][1] - h) < 1e-15);

  // z = i: vectors (|0> -+ i|1>)/sqrt(2), up to a global phase.
  const EigenSystem im = eig_rank2_pair(kI, 0, 1, 2);
  const ComplexMatrix pair{{0, kI}, {-kI, 0}};
  for (std::size_t k = 0; k < 2; ++k) {
    const ComplexVector hv = pair * im.vectors[k];
    for (std::size_t r = 0; r < 2; ++r) {
      CHECK(std::abs(hv[r] - im.values[k] * im.vectors[k][r]) < 1e-15);
    }
  }
  CHECK(std::abs(std::abs(inner(ComplexVector{h, -kI * h}, im.vectors[0])) - 1.0) < 1e-15);
  CHECK(std::abs(std::abs(inner(ComplexVector{h, kI * h}, im.vectors[1])) - 1.0) < 1e-15);

  CHECK_THROWS_AS(eig_rank2_pair(1.0, 2, 2, 4), ContractError);
  CHECK_THROWS_AS(eig_rank2_pair(0.0, 0, 1, 4), ContractError);
  CHECK_THROWS_AS(eig_rank2_pair(1.0, 0, 4, 4), DimensionError);
}

TEST_CASE("rank-2 closed form agrees with Jacobi", "[linalg]") {
  Rng rng(7);
  for (int n = 0; n < 50; ++n) {
    const Complex z(oracle::rand_uniform(rng, -2, 2), oracle::rand_uniform(rng, -2, 2));
    const std::size_t r = n % 15;
    const std::size_t c = 15 - r / 2;
    if (r == c) continue;
    ComplexMatrix m(16);
    m(r, c) = z;
    m(c, r) = std::conj(z);

    const EigenSystem closed = eig_rank2_pair(z, r, c, 16);
    const EigenSystem jacobi = eig_hermitian(m);
    CHECK_THAT(closed.values[0], WithinAbs(std::abs(z), 1e-12));
    CHECK_THAT(closed.values[1], WithinAbs(-std::abs(z), 1e-12));
    CHECK_THAT(jacobi.values.front(), WithinAbs(closed.values[0], 1e-12));
    CHECK_THAT(jacobi.values.back(), WithinAbs(closed.values[1], 1e-12));
    CHECK(max_abs_diff(closed.reconstruct(16), m) < 1e-12);
    // Same rank-1 projectors, whatever the phase.
    CHECK(max_abs_diff(ComplexMatrix::outer(closed.vectors[0], closed.vectors[0]),
                       ComplexMatrix::outer(jacobi.vectors.front(), jacobi.vectors.front())) < 1e-12);
  }
}

TEST_CASE("partial transpose", "[linalg]") {
  const ComplexMatrix d = ComplexMatrix::diagonal({0.1, 0.2, 0.3, 0.4});
  CHECK(partial_transpose(d, 2, 2) == d);

  const ComplexMatrix pt = partial_transpose(bell_projector(), 2, 2);
  CHECK_THAT(min_eigenvalue(pt), WithinAbs(-0.5, 1e-14));

  Rng rng(8);
  const ComplexMatrix m = random_ginibre(6, rng);
  CHECK(partial_transpose(partial_transpose(m, 2, 3), 2, 3) == m);
  CHECK_THROWS_AS(partial_transpose(m, 2, 2), DimensionError);
}

TEST_CASE("partial trace", "[linalg]") {
  Rng rng(9);
  const ComplexMatrix a = random_density_matrix(2, rng).matrix();
  const ComplexMatrix b = 2.5 * random_density_matrix(3, rng).matrix();
  CHECK(max_abs_diff(partial_trace(kron(a, b), 2, 3, Subsystem::Second), 2.5 * a) < 1e-14);
  CHECK(max_abs_diff(partial_trace(bell_projector(), 2, 2, Subsystem::First),
                     0.5 * ComplexMatrix::identity(2)) < 1e-15);

  const ComplexMatrix m = random_ginibre(6, rng);
  const Complex both = partial_trace(partial_trace(m, 2, 3, Subsystem::Second), 1, 2,
                                     Subsystem::Second)
                           .trace();
  const Complex other = partial_trace(m, 2, 3, Subsystem::First).trace();
  CHECK(std::abs(both - m.trace()) < 1e-13);
  CHECK(std::abs(other - m.trace()) < 1e-13);
}

TEST_CASE("matrix basics and dimension errors", "[linalg]") {
  ComplexMatrix m(2);
  CHECK_THROWS_AS(m.at(2, 0), DimensionError);
  CHECK_THROWS_AS(m + ComplexMatrix(3), DimensionError);
  CHECK_THROWS_AS(max_abs_diff(m, ComplexMatrix(3)), DimensionError);
  const ComplexMatrix a{{1, kI}, {2, 3}};
  CHECK(a.dagger() == ComplexMatrix{{1, 2}, {-kI, 3}});
  CHECK(a.transpose() == ComplexMatrix{{1, 2}, {kI, 3}});
  CHECK(a.trace() == Complex(4));
  CHECK_FALSE(a.is_hermitian(1e-12));
  CHECK(ComplexMatrix::diagonal({1, 2}).is_diagonal());
}

TEST_CASE("swap of tensor factors", "[linalg]") {
  Rng rng(10);
  const ComplexMatrix a = random_ginibre(2, rng), b = random_ginibre(3, rng);
  CHECK(max_abs_diff(swap_factors(kron(a, b), 2, 3), kron(b, a)) < 1e-15);
  const ComplexMatrix m = random_ginibre(6, rng);
  CHECK(swap_factors(swap_factors(m, 2, 3), 3, 2) == m);
}
