#pragma once

#include <cstddef>
#include <random>

#include "sumdiff/channels.hpp"
#include "sumdiff/linalg.hpp"

namespace sumdiff {

using Rng = std::mt19937_64;

/// Independent standard complex Gaussian entries (real and imaginary parts
/// each N(0, 1/2)).
ComplexMatrix random_ginibre(std::size_t dim, Rng& rng);

/// G G^dag / Tr(G G^dag) with G Ginibre.
DensityMatrix random_density_matrix(std::size_t dim, Rng& rng);

/// (G + G^dag) / 2 with G Ginibre.
ComplexMatrix random_hermitian(std::size_t dim, Rng& rng);

/// Haar-ish unitary from Gram-Schmidt on a Ginibre matrix.
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);

/// Uniform draw from the accepted 2AD parameter region: gamma in [0.2, 3],
/// gamma12 in (-0.95, 0.95) * gamma, omega12 in [-5, 5], omega0 in [-20, 20],
/// gamma * t in [0, 4].
TwoQubitAdParams random_ad2_params(Rng& rng);

}  // namespace sumdiff
