#include "sumdiff/random.hpp"

#include <cmath>

namespace sumdiff {

ComplexMatrix random_ginibre(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im);
    }
  }
  return g;
}

DensityMatrix random_density_matrix(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = random_ginibre(dim, rng);
  ComplexMatrix rho = g * g.dagger();
  rho *= 1.0 / rho.trace().real();
  // Remove the rounding-level anti-Hermitian part.
  rho = 0.5 * (rho + rho.dagger());
  return DensityMatrix(std::move(rho));
}

ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = random_ginibre(dim, rng);
  return 0.5 * (g + g.dagger());
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = random_ginibre(dim, rng);
  std::vector<ComplexVector> cols;
  for (std::size_t c = 0; c < dim; ++c) {
    ComplexVector v(dim);
    for (std::size_t r = 0; r < dim; ++r) v[r] = g(r, c);
    for (const auto& u : cols) {
      const Complex proj = inner(u, v);
      for (std::size_t r = 0; r < dim; ++r) v[r] -= proj * u[r];
    }
    v *= 1.0 / v.norm();
    cols.push_back(std::move(v));
  }
  ComplexMatrix u(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t r = 0; r < dim; ++r) u(r, c) = cols[c][r];
  }
  return u;
}

TwoQubitAdParams random_ad2_params(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  TwoQubitAdParams p;
  p.gamma = 0.2 + 2.8 * unit(rng);
  p.gamma12 = (-0.95 + 1.9 * unit(rng)) * p.gamma;
  p.omega12 = -5.0 + 10.0 * unit(rng);
  p.omega0 = -20.0 + 40.0 * unit(rng);
  p.t = 4.0 * unit(rng) / p.gamma;
  return p;
}

}  // namespace sumdiff
