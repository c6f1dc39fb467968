#include "erasure_lab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "erasure_lab/errors.hpp"

namespace erasure_lab {

// ---------------------------------------------------------------------------
// TensorSpace

TensorSpace::TensorSpace(std::vector<Factor> factors)
    : factors_(std::move(factors)) {
  std::set<std::string> seen;
  dim_ = 1;
  for (const auto& f : factors_) {
    if (f.dim == 0) throw InputError("tensor factor '" + f.label + "' has dimension 0");
    if (!seen.insert(f.label).second)
      throw InputError("duplicate tensor factor label '" + f.label + "'");
    dim_ *= f.dim;
  }
}

TensorSpace TensorSpace::single(std::size_t dim, std::string label) {
  return TensorSpace({{std::move(label), dim}});
}

TensorSpace TensorSpace::bipartite(std::size_t dim_a, std::size_t dim_b,
                                   std::string label_a, std::string label_b) {
  return TensorSpace({{std::move(label_a), dim_a}, {std::move(label_b), dim_b}});
}

std::vector<std::size_t> TensorSpace::dims() const {
  std::vector<std::size_t> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.dim);
  return out;
}

bool TensorSpace::contains(const std::string& label) const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [&](const Factor& f) { return f.label == label; });
}

std::size_t TensorSpace::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i].label == label) return i;
  throw InputError("unknown tensor factor label '" + label + "'");
}

std::vector<std::string> TensorSpace::labels() const {
  std::vector<std::string> out;
  for (const auto& f : factors_) out.push_back(f.label);
  return out;
}

TensorSpace TensorSpace::restrict_to(const std::vector<std::string>& labels) const {
  std::vector<bool> keep(factors_.size(), false);
  for (const auto& l : labels) keep[index_of(l)] = true;
  std::vector<Factor> kept;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (keep[i]) kept.push_back(factors_[i]);
  return TensorSpace(std::move(kept));
}

TensorSpace TensorSpace::operator*(const TensorSpace& other) const {
  auto combined = factors_;
  combined.insert(combined.end(), other.factors_.begin(), other.factors_.end());
  return TensorSpace(std::move(combined));
}

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator::DensityOperator(TensorSpace space, ComplexMatrix matrix,
                                 const Tolerances& tol)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  const auto d = static_cast<Eigen::Index>(space_.dim());
  if (matrix_.rows() != d || matrix_.cols() != d) {
    std::ostringstream msg;
    msg << "density matrix is " << matrix_.rows() << "x" << matrix_.cols()
        << " but its space has dimension " << d;
    throw InputError(msg.str());
  }
  if (double h = hermiticity_defect(matrix_); h > tol.hermitian)
    throw InputError("density matrix is not Hermitian (defect " + std::to_string(h) + ")");
  if (double t = std::abs(matrix_.trace() - Complex(1.0)); t > tol.trace)
    throw InputError("density matrix trace differs from 1 by " + std::to_string(t));
  const auto eig = hermitian_eig(matrix_, tol);
  if (double lo = eig.values.minCoeff(); lo < -tol.psd)
    throw InputError("density matrix has negative eigenvalue " + std::to_string(lo));
}

DensityOperator DensityOperator::from_pure(TensorSpace space, const ComplexVector& psi,
                                           const Tolerances& tol) {
  if (static_cast<std::size_t>(psi.size()) != space.dim())
    throw InputError("state vector length does not match space dimension");
  if (std::abs(psi.norm() - 1.0) > tol.trace)
    throw InputError("state vector is not normalized");
  return DensityOperator(Trusted{}, std::move(space), psi * psi.adjoint());
}

DensityOperator DensityOperator::maximally_mixed(TensorSpace space) {
  const auto d = static_cast<Eigen::Index>(space.dim());
  ComplexMatrix m = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
  return DensityOperator(Trusted{}, std::move(space), std::move(m));
}

DensityOperator DensityOperator::diagonal(TensorSpace space, const RealVector& probs,
                                          const Tolerances& tol) {
  ComplexMatrix m = probs.cast<Complex>().asDiagonal();
  return DensityOperator(std::move(space), std::move(m), tol);
}

// ---------------------------------------------------------------------------
// Products and partial traces

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator(a.space() * b.space(), tensor_product(a.matrix(), b.matrix()));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<std::size_t>& dims,
                            const std::vector<bool>& keep) {
  if (dims.size() != keep.size()) throw InputError("partial_trace: dims/keep size mismatch");
  const std::size_t total =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  if (static_cast<std::size_t>(m.rows()) != total || m.rows() != m.cols())
    throw InputError("partial_trace: matrix does not match factor dimensions");

  std::size_t kept_dim = 1, traced_dim = 1;
  for (std::size_t f = 0; f < dims.size(); ++f) (keep[f] ? kept_dim : traced_dim) *= dims[f];

  // Split every composite index into its kept and traced parts.
  std::vector<std::size_t> kept_index(total), traced_index(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx, k = 0, t = 0, k_scale = 1, t_scale = 1;
    for (std::size_t f = dims.size(); f-- > 0;) {
      const std::size_t digit = rest % dims[f];
      rest /= dims[f];
      if (keep[f]) {
        k += digit * k_scale;
        k_scale *= dims[f];
      } else {
        t += digit * t_scale;
        t_scale *= dims[f];
      }
    }
    kept_index[idx] = k;
    traced_index[idx] = t;
  }

  std::vector<std::vector<std::size_t>> groups(traced_dim);
  for (std::size_t idx = 0; idx < total; ++idx) groups[traced_index[idx]].push_back(idx);

  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(kept_dim),
                                          static_cast<Eigen::Index>(kept_dim));
  for (const auto& group : groups)
    for (std::size_t i : group)
      for (std::size_t j : group)
        out(static_cast<Eigen::Index>(kept_index[i]), static_cast<Eigen::Index>(kept_index[j])) +=
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<std::string>& keep) {
  if (keep.empty()) throw InputError("partial_trace: keep set is empty");
  const auto& space = rho.space();
  std::vector<bool> mask(space.size(), false);
  for (const auto& label : keep) mask[space.index_of(label)] = true;
  return DensityOperator(space.restrict_to(keep), partial_trace(rho.matrix(), space.dims(), mask));
}

// ---------------------------------------------------------------------------
// Spectral routines

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return std::sqrt((m - m.adjoint()).cwiseAbs2().maxCoeff());
}

namespace {

double offdiag_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

EigenSystem hermitian_eig(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) throw InputError("hermitian_eig: matrix is not square");
  if (double h = hermiticity_defect(m); h > tol.hermitian)
    throw InputError("hermitian_eig: matrix is not Hermitian (defect " + std::to_string(h) + ")");

  const Eigen::Index n = m.rows();
  ComplexMatrix a = 0.5 * (m + m.adjoint());
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  const double threshold = tol.jacobi_offdiag * std::max(1.0, a.norm());
  const double skip = 1e-3 * threshold / static_cast<double>(std::max<Eigen::Index>(n, 1));

  EigenSystem out;
  out.converged = false;
  for (int sweep = 0; sweep < tol.jacobi_max_sweeps; ++sweep) {
    if (offdiag_norm(a) <= threshold) {
      out.converged = true;
      out.sweeps = sweep;
      break;
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::sqrt(std::norm(apq));
        // Elements this small cannot move the off-diagonal norm.
        if (mag <= skip) continue;
        // Phase the (p,q) element real, then a real symmetric rotation.
        const Complex phase = apq / mag;
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // Unitary G acting on columns p, q: G_pp = c, G_pq = s,
        // G_qp = -s conj(phase), G_qq = c conj(phase).
        const Complex cph = std::conj(phase);
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q) * cph;
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k) * phase;
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q) * cph;
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!out.converged) {
    out.sweeps = tol.jacobi_max_sweeps;
    out.converged = offdiag_norm(a) <= threshold;
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() > a(j, j).real(); });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]).real();
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

ComplexMatrix matrix_function(const ComplexMatrix& m, const std::function<Complex(double)>& f,
                              const Tolerances& tol) {
  const auto eig = hermitian_eig(m, tol);
  ComplexVector fl(eig.values.size());
  for (Eigen::Index i = 0; i < fl.size(); ++i) fl(i) = f(eig.values(i));
  return eig.vectors * fl.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix matrix_log(const ComplexMatrix& m, LogPolicy policy, const Tolerances& tol) {
  const Eigen::Index d = m.rows();
  ComplexMatrix input = m;
  if (policy == LogPolicy::regularize) {
    const double eps = tol.log_regularization;
    input = (1.0 - eps) * m + eps * ComplexMatrix::Identity(d, d) / static_cast<double>(d);
  }
  const auto eig = hermitian_eig(input, tol);
  if (d > 0 && eig.values.minCoeff() < tol.log_floor)
    throw SupportError("matrix_log: eigenvalue " + std::to_string(eig.values.minCoeff()) +
                       " is below the floor");
  ComplexVector fl = eig.values.array().log().cast<Complex>();
  return eig.vectors * fl.asDiagonal() * eig.vectors.adjoint();
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol) {
  const auto eig = hermitian_eig(a - b, tol);
  return 0.5 * eig.values.cwiseAbs().sum();
}

double fidelity(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol) {
  auto clamp_sqrt = [](double x) { return Complex(std::sqrt(std::max(x, 0.0))); };
  const ComplexMatrix sa = matrix_function(a, clamp_sqrt, tol);
  ComplexMatrix inner = sa * b * sa;
  inner = 0.5 * (inner + inner.adjoint());
  const auto eig = hermitian_eig(inner, tol);
  double root = 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) root += std::sqrt(std::max(eig.values(i), 0.0));
  return root * root;
}

ComplexMatrix swap_operator(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix s = ComplexMatrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) s(j * n + i, i * n + j) = 1.0;
  return s;
}

}  // namespace erasure_lab
