#include <random>

#include "erasure_lab/entanglement.hpp"
#include "erasure_lab/errors.hpp"

namespace erasure_lab {

namespace {

// (I (x) <b|) G (I (x) |b>)
ComplexMatrix condition_on_b(const ComplexMatrix& g, const ComplexVector& b, Eigen::Index da,
                             Eigen::Index db) {
  ComplexMatrix out(da, da);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j)
      out(i, j) = b.dot(g.block(i * db, j * db, db, db) * b);
  return 0.5 * (out + out.adjoint());
}

// (<a| (x) I) G (|a> (x) I)
ComplexMatrix condition_on_a(const ComplexMatrix& g, const ComplexVector& a, Eigen::Index da,
                             Eigen::Index db) {
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j)
      out += std::conj(a(i)) * a(j) * g.block(i * db, j * db, db, db);
  return 0.5 * (out + out.adjoint());
}

ProductState alternate(const ComplexMatrix& g, ComplexVector b, Eigen::Index da, Eigen::Index db,
                       const ProductOracleOptions& opts) {
  ProductState best;
  double previous = -std::numeric_limits<double>::infinity();
  for (int it = 0; it < opts.max_alternations; ++it) {
    const auto ea = hermitian_eig(condition_on_b(g, b, da, db));
    const ComplexVector a = ea.vectors.col(0);
    const auto eb = hermitian_eig(condition_on_a(g, a, da, db));
    b = eb.vectors.col(0);
    const double value = eb.values(0);
    best = {a, b, value};
    if (value - previous < opts.gain_tol) break;
    previous = value;
  }
  return best;
}

}  // namespace

ProductState closest_product_state(const ComplexMatrix& g, std::size_t dim_a, std::size_t dim_b,
                                   const ProductOracleOptions& opts) {
  const auto da = static_cast<Eigen::Index>(dim_a);
  const auto db = static_cast<Eigen::Index>(dim_b);
  if (g.rows() != da * db || g.cols() != da * db)
    throw InputError("closest_product_state: operator does not match dA x dB");
  if (hermiticity_defect(g) > kDefaultTolerances.hermitian)
    throw InputError("closest_product_state: operator is not Hermitian");

  std::vector<ComplexVector> starts;
  // Top Schmidt vector on B of the dominant eigenvector of G.
  {
    const ComplexVector top = hermitian_eig(g).vectors.col(0);
    const auto form = schmidt_decompose(top / top.norm(), TensorSpace::bipartite(dim_a, dim_b));
    if (form.rank() > 0) starts.push_back(form.right.col(0));
  }
  if (opts.warm_start_b && opts.warm_start_b->size() == db) starts.push_back(*opts.warm_start_b);
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal;
  for (int s = 0; s < opts.random_starts; ++s) {
    ComplexVector b(db);
    for (Eigen::Index k = 0; k < db; ++k) b(k) = Complex(normal(rng), normal(rng));
    starts.push_back(b / b.norm());
  }

  ProductState best;
  best.objective = -std::numeric_limits<double>::infinity();
  for (const auto& b : starts) {
    auto candidate = alternate(g, b, da, db, opts);
    if (candidate.objective > best.objective) best = std::move(candidate);
  }
  return best;
}

}  // namespace erasure_lab
