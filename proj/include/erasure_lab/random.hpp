#pragma once

// Seeded generators for randomized states and operators.

#include <cstdint>
#include <random>

#include "erasure_lab/entanglement.hpp"
#include "erasure_lab/linalg.hpp"
#include "erasure_lab/thermo.hpp"

namespace erasure_lab {

using Rng = std::mt19937_64;

ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng);
ComplexVector random_pure(std::size_t dim, Rng& rng);
ComplexMatrix random_hermitian(std::size_t dim, Rng& rng);
/// Eigenvector frame of a random Hermitian matrix.
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);
/// Ginibre-induced mixed state; full rank unless `rank` is given.
ComplexMatrix random_density_matrix(std::size_t dim, Rng& rng, std::size_t rank = 0);
DensityOperator random_density(const TensorSpace& space, Rng& rng, std::size_t rank = 0);
HamiltonianSpec random_hamiltonian(std::size_t dim, Rng& rng);
SeparableMixture random_separable(std::size_t dim_a, std::size_t dim_b, std::size_t terms, Rng& rng);

}  // namespace erasure_lab
