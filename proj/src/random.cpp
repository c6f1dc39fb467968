#include "erasure_lab/random.hpp"

namespace erasure_lab {

ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = Complex(normal(rng), normal(rng));
  return g;
}

ComplexVector random_pure(std::size_t dim, Rng& rng) {
  ComplexVector v = random_ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

ComplexMatrix random_hermitian(std::size_t dim, Rng& rng) {
  const ComplexMatrix g = random_ginibre(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

ComplexMatrix random_unitary(std::size_t dim, Rng& rng) {
  return hermitian_eig(random_hermitian(dim, rng)).vectors;
}

ComplexMatrix random_density_matrix(std::size_t dim, Rng& rng, std::size_t rank) {
  const ComplexMatrix g = random_ginibre(dim, rank == 0 ? dim : rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

DensityOperator random_density(const TensorSpace& space, Rng& rng, std::size_t rank) {
  return DensityOperator(space, random_density_matrix(space.dim(), rng, rank));
}

HamiltonianSpec random_hamiltonian(std::size_t dim, Rng& rng) {
  std::uniform_real_distribution<double> beta(0.1, 3.0);
  return HamiltonianSpec(random_hermitian(dim, rng), beta(rng));
}

SeparableMixture random_separable(std::size_t dim_a, std::size_t dim_b, std::size_t terms, Rng& rng) {
  std::uniform_real_distribution<double> uniform(0.05, 1.0);
  std::vector<ProductTerm> out;
  double total = 0.0;
  for (std::size_t i = 0; i < terms; ++i) {
    out.push_back({uniform(rng), random_pure(dim_a, rng), random_pure(dim_b, rng)});
    total += out.back().weight;
  }
  for (auto& t : out) t.weight /= total;
  return SeparableMixture(dim_a, dim_b, std::move(out));
}

}  // namespace erasure_lab
