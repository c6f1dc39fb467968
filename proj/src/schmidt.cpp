#include <cmath>

#include "erasure_lab/entanglement.hpp"
#include "erasure_lab/errors.hpp"

namespace erasure_lab {

void require_bipartite(const TensorSpace& space, std::size_t max_dim) {
  if (space.size() != 2)
    throw InputError("expected a bipartite space, got " + std::to_string(space.size()) + " factors");
  if (max_dim > 0)
    for (const auto& f : space.factors())
      if (f.dim > max_dim)
        throw InputError("factor '" + f.label + "' has dimension " + std::to_string(f.dim) +
                         " above the configured cap " + std::to_string(max_dim));
}

// ---------------------------------------------------------------------------
// SeparableMixture

SeparableMixture::SeparableMixture(std::size_t dim_a, std::size_t dim_b, std::vector<ProductTerm> terms)
    : dim_a_(dim_a), dim_b_(dim_b), terms_(std::move(terms)) {
  constexpr double kTol = 1e-9;
  if (terms_.empty()) throw InputError("separable mixture needs at least one term");
  double total = 0.0;
  for (const auto& t : terms_) {
    if (!(t.weight >= 0.0)) throw InputError("separable mixture: negative weight");
    if (static_cast<std::size_t>(t.ket_a.size()) != dim_a_ ||
        static_cast<std::size_t>(t.ket_b.size()) != dim_b_)
      throw InputError("separable mixture: ket dimension mismatch");
    if (std::abs(t.ket_a.norm() - 1.0) > kTol || std::abs(t.ket_b.norm() - 1.0) > kTol)
      throw InputError("separable mixture: kets must be unit vectors");
    total += t.weight;
  }
  if (std::abs(total - 1.0) > kTol) throw InputError("separable mixture: weights do not sum to 1");
}

SeparableMixture SeparableMixture::maximally_mixed(std::size_t dim_a, std::size_t dim_b) {
  std::vector<ProductTerm> terms;
  const double w = 1.0 / static_cast<double>(dim_a * dim_b);
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_b; ++j) {
      ComplexVector a = ComplexVector::Zero(static_cast<Eigen::Index>(dim_a));
      ComplexVector b = ComplexVector::Zero(static_cast<Eigen::Index>(dim_b));
      a(static_cast<Eigen::Index>(i)) = 1.0;
      b(static_cast<Eigen::Index>(j)) = 1.0;
      terms.push_back({w, a, b});
    }
  return SeparableMixture(dim_a, dim_b, std::move(terms));
}

ComplexMatrix SeparableMixture::assemble() const {
  const auto d = static_cast<Eigen::Index>(dim_a_ * dim_b_);
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (const auto& t : terms_) {
    const ComplexVector ab = tensor_product(t.ket_a, t.ket_b);
    out += t.weight * ab * ab.adjoint();
  }
  return out;
}

DensityOperator SeparableMixture::to_density(const TensorSpace& space) const {
  require_bipartite(space);
  if (space.factors()[0].dim != dim_a_ || space.factors()[1].dim != dim_b_)
    throw InputError("separable mixture does not match the target space");
  return DensityOperator(space, assemble());
}

// ---------------------------------------------------------------------------
// Schmidt decomposition

ComplexVector SchmidtForm::reconstruct() const {
  ComplexVector out = ComplexVector::Zero(left.rows() * right.rows());
  for (Eigen::Index k = 0; k < coefficients.size(); ++k)
    out += coefficients(k) * tensor_product(ComplexVector(left.col(k)), ComplexVector(right.col(k)));
  return out;
}

SchmidtForm schmidt_decompose(const ComplexVector& psi, const TensorSpace& space, const Tolerances& tol) {
  require_bipartite(space);
  if (static_cast<std::size_t>(psi.size()) != space.dim())
    throw InputError("schmidt_decompose: vector length does not match the space");
  if (std::abs(psi.norm() - 1.0) > 1e-9) throw InputError("schmidt_decompose: vector is not normalized");

  const auto da = static_cast<Eigen::Index>(space.factors()[0].dim);
  const auto db = static_cast<Eigen::Index>(space.factors()[1].dim);
  ComplexMatrix c(da, db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < db; ++j) c(i, j) = psi(i * db + j);

  const auto eig = hermitian_eig(c * c.adjoint(), tol);
  // Coefficients below this are indistinguishable from round-off in c c^dagger.
  constexpr double kCoefficientFloor = 1e-10;
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k)
    if (std::sqrt(std::max(eig.values(k), 0.0)) > kCoefficientFloor) kept.push_back(k);

  SchmidtForm out;
  const auto r = static_cast<Eigen::Index>(kept.size());
  out.coefficients.resize(r);
  out.left.resize(da, r);
  out.right.resize(db, r);
  for (Eigen::Index k = 0; k < r; ++k) {
    const Eigen::Index src = kept[static_cast<std::size_t>(k)];
    const double sigma = std::sqrt(eig.values(src));
    out.coefficients(k) = sigma;
    out.left.col(k) = eig.vectors.col(src);
    out.right.col(k) = (eig.vectors.col(src).adjoint() * c).transpose() / sigma;
  }
  // Renormalize away the dropped tail.
  if (r > 0) out.coefficients /= out.coefficients.norm();
  return out;
}

EntropyValue entropy_of_entanglement(const ComplexVector& psi, const TensorSpace& space,
                                     const Tolerances& tol) {
  const auto form = schmidt_decompose(psi, space, tol);
  return EntropyValue(entropy_of_spectrum(form.coefficients.array().square().matrix()));
}

// ---------------------------------------------------------------------------
// Bounds

double purification_bound(const DensityOperator& rho, int n, const EreResult& ere) {
  if (n < 2) throw InputError("purification_bound: N must be at least 2");
  require_bipartite(rho.space());
  if (ere.argmin.dim_a() * ere.argmin.dim_b() != rho.dim())
    throw InputError("purification_bound: E_RE result belongs to a different space");
  return std::min(1.0, std::max(0.0, ere.value) / std::log(static_cast<double>(n)));
}

double single_shot_probability(const ComplexVector& psi, const TensorSpace& space, const Tolerances& tol) {
  const auto form = schmidt_decompose(psi, space, tol);
  if (form.rank() > 2) throw InputError("single_shot_probability: Schmidt rank exceeds 2");
  if (form.rank() < 2) return 0.0;
  const double b = form.coefficients(1);
  return std::min(1.0, 2.0 * b * b);
}

double schumacher_rate(const DensityOperator& rho, int n, const Tolerances& tol) {
  if (n < 2) throw InputError("schumacher_rate: N must be at least 2");
  return von_neumann_entropy(rho, tol).nats() / std::log(static_cast<double>(n));
}

PurificationReport purification_report(const DensityOperator& rho, int n, const EreResult& ere,
                                       const Tolerances& tol) {
  PurificationReport r;
  r.n = n;
  r.ensemble_bound = purification_bound(rho, n, ere);
  r.schumacher_rate = schumacher_rate(rho, n, tol);
  const auto& f = rho.space().factors();
  if (f[0].dim == 2 && f[1].dim == 2 && von_neumann_entropy(rho.matrix(), tol) <= 1e-10) {
    const ComplexVector psi = hermitian_eig(rho.matrix(), tol).vectors.col(0);
    r.single_shot = single_shot_probability(psi, rho.space(), tol);
  }
  return r;
}

std::string to_string(SolverStatus s) {
  return s == SolverStatus::converged ? "converged" : "iteration-cap";
}

}  // namespace erasure_lab
