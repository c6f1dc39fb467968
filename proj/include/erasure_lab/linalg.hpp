#pragma once

// Dense complex linear algebra over labeled tensor-product spaces.
//
// Composite indices are row-major with the first tensor factor most
// significant: for factors (A, B) the basis state |i>_A |j>_B has index
// i * dim(B) + j.

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace erasure_lab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Numerical thresholds shared by the linear-algebra and entropy layers.
/// Every field is a default; callers may pass their own copy.
struct Tolerances {
  double hermitian = 1e-10;   // max |M - M^dagger| entry
  double trace = 1e-10;       // |tr M - 1|
  double psd = 1e-10;         // min eigenvalue >= -psd
  double jacobi_offdiag = 1e-12;
  int jacobi_max_sweeps = 100;
  double log_floor = 1e-12;   // eigenvalues below this are outside the support
  double log_regularization = 1e-9;
};

inline const Tolerances kDefaultTolerances{};

class TensorSpace {
 public:
  struct Factor {
    std::string label;
    std::size_t dim;
    bool operator==(const Factor&) const = default;
  };

  TensorSpace() = default;
  explicit TensorSpace(std::vector<Factor> factors);

  static TensorSpace single(std::size_t dim, std::string label = "S");
  static TensorSpace bipartite(std::size_t dim_a, std::size_t dim_b,
                               std::string label_a = "A",
                               std::string label_b = "B");

  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return factors_.size(); }
  std::vector<std::size_t> dims() const;

  bool contains(const std::string& label) const;
  /// Position of `label` among the factors; throws InputError if absent.
  std::size_t index_of(const std::string& label) const;
  std::vector<std::string> labels() const;

  /// Subspace made of the given labels, kept in this space's factor order.
  TensorSpace restrict_to(const std::vector<std::string>& labels) const;
  /// Concatenation; labels must stay unique.
  TensorSpace operator*(const TensorSpace& other) const;

  bool operator==(const TensorSpace&) const = default;

 private:
  std::vector<Factor> factors_;
  std::size_t dim_ = 1;
};

/// A validated density operator: Hermitian, unit trace, positive
/// semidefinite, each within the tolerances it was constructed with.
class DensityOperator {
 public:
  DensityOperator(TensorSpace space, ComplexMatrix matrix,
                  const Tolerances& tol = kDefaultTolerances);

  /// |psi><psi| for a unit vector; only the norm needs checking.
  static DensityOperator from_pure(TensorSpace space, const ComplexVector& psi,
                                   const Tolerances& tol = kDefaultTolerances);
  static DensityOperator maximally_mixed(TensorSpace space);
  static DensityOperator diagonal(TensorSpace space, const RealVector& probs,
                                  const Tolerances& tol = kDefaultTolerances);

  const TensorSpace& space() const { return space_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return space_.dim(); }

 private:
  struct Trusted {};
  DensityOperator(Trusted, TensorSpace space, ComplexMatrix matrix)
      : space_(std::move(space)), matrix_(std::move(matrix)) {}

  TensorSpace space_;
  ComplexMatrix matrix_;
};

/// Kronecker product; the first argument owns the most significant index.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b);
DensityOperator tensor_product(const DensityOperator& a,
                               const DensityOperator& b);

/// Raw partial trace over the factors whose `keep` flag is false.
ComplexMatrix partial_trace(const ComplexMatrix& m,
                            const std::vector<std::size_t>& dims,
                            const std::vector<bool>& keep);
DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<std::string>& keep);

struct EigenSystem {
  RealVector values;     // descending
  ComplexMatrix vectors; // orthonormal columns, matching `values`
  int sweeps = 0;
  bool converged = true;
};

/// Cyclic Jacobi eigensolver for Hermitian matrices.
EigenSystem hermitian_eig(const ComplexMatrix& m,
                          const Tolerances& tol = kDefaultTolerances);

/// V f(Lambda) V^dagger for Hermitian m.
ComplexMatrix matrix_function(const ComplexMatrix& m,
                              const std::function<Complex(double)>& f,
                              const Tolerances& tol = kDefaultTolerances);

enum class LogPolicy { strict, regularize };

/// Natural matrix logarithm. With LogPolicy::strict an eigenvalue below
/// tol.log_floor raises SupportError; with LogPolicy::regularize the input
/// is first mixed as (1 - eps) m + eps I / d, eps = tol.log_regularization.
ComplexMatrix matrix_log(const ComplexMatrix& m,
                         LogPolicy policy = LogPolicy::strict,
                         const Tolerances& tol = kDefaultTolerances);

double hermiticity_defect(const ComplexMatrix& m);

/// 1/2 sum |eigenvalues(a - b)|.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b,
                      const Tolerances& tol = kDefaultTolerances);

/// Uhlmann fidelity (tr sqrt(sqrt(a) b sqrt(a)))^2.
double fidelity(const ComplexMatrix& a, const ComplexMatrix& b,
                const Tolerances& tol = kDefaultTolerances);

/// SWAP on C^d (x) C^d.
ComplexMatrix swap_operator(std::size_t d);

}  // namespace erasure_lab
