#pragma once

// Entanglement measures and purification bounds for bipartite states:
// Schmidt analysis, relative entropy of entanglement (Frank-Wolfe over the
// separable set), entanglement of creation (search over pure-state
// decompositions), and the ensemble / single-shot / compression bounds.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "erasure_lab/entropy.hpp"
#include "erasure_lab/linalg.hpp"

namespace erasure_lab {

struct ProductTerm {
  double weight = 0.0;
  ComplexVector ket_a;
  ComplexVector ket_b;
};

/// Explicit convex combination sum_i p_i |a_i><a_i| (x) |b_i><b_i|.
class SeparableMixture {
 public:
  SeparableMixture(std::size_t dim_a, std::size_t dim_b, std::vector<ProductTerm> terms);

  /// I/(dA dB) written over the computational product basis.
  static SeparableMixture maximally_mixed(std::size_t dim_a, std::size_t dim_b);

  std::size_t dim_a() const { return dim_a_; }
  std::size_t dim_b() const { return dim_b_; }
  const std::vector<ProductTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  ComplexMatrix assemble() const;
  DensityOperator to_density(const TensorSpace& space) const;

 private:
  std::size_t dim_a_, dim_b_;
  std::vector<ProductTerm> terms_;
};

struct SchmidtForm {
  RealVector coefficients;  // descending, squares sum to 1
  ComplexMatrix left;       // columns |u_i> on A
  ComplexMatrix right;      // columns |v_i> on B

  std::size_t rank() const { return static_cast<std::size_t>(coefficients.size()); }
  ComplexVector reconstruct() const;
};

/// `space` must have exactly two factors.
SchmidtForm schmidt_decompose(const ComplexVector& psi, const TensorSpace& space,
                              const Tolerances& tol = kDefaultTolerances);

/// Entropy of either reduced state of a bipartite pure state.
EntropyValue entropy_of_entanglement(const ComplexVector& psi, const TensorSpace& space,
                                     const Tolerances& tol = kDefaultTolerances);

struct ProductState {
  ComplexVector ket_a;
  ComplexVector ket_b;
  double objective = 0.0;  // <a,b| G |a,b>
};

struct ProductOracleOptions {
  int random_starts = 8;
  int max_alternations = 200;
  double gain_tol = 1e-10;
  std::uint64_t seed = 1;
  /// Extra starting ket on B, e.g. the previous answer.
  std::optional<ComplexVector> warm_start_b;
};

/// Product unit vector locally maximizing <a,b|G|a,b> by alternating
/// top-eigenvector updates, best over several starts.
ProductState closest_product_state(const ComplexMatrix& g, std::size_t dim_a, std::size_t dim_b,
                                   const ProductOracleOptions& opts = {});

enum class SolverStatus { converged, iteration_cap };
std::string to_string(SolverStatus s);

struct SolverOptions {
  double gap_tol = 1e-5;  // nats
  int max_iter = 2000;
  int oracle_starts = 8;
  std::uint64_t seed = 20240601;
  std::size_t max_factor_dim = 4;
  // Entanglement of creation search.
  int eoc_restarts = 32;
  int eoc_step_cap = 5000;
  /// Largest decomposition length tried is min(rank^2, this).
  std::size_t eoc_max_terms = 64;
};

struct ConvergencePoint {
  int iteration = 0;
  double objective = 0.0;
  double gap = 0.0;
};

struct EreResult {
  double value = 0.0;  // nats; a feasible objective, hence an upper bound
  SeparableMixture argmin = SeparableMixture::maximally_mixed(1, 1);
  std::vector<ConvergencePoint> convergence;
  SolverStatus status = SolverStatus::iteration_cap;
};

/// min over separable omega of S(rho||omega).
EreResult relative_entropy_of_entanglement(const DensityOperator& rho, const SolverOptions& opts = {});

struct PureComponent {
  double weight = 0.0;
  ComplexVector state;  // normalized
};

struct EocResult {
  double value = 0.0;  // nats; an upper bound unless the search hit the optimum
  std::vector<PureComponent> decomposition;
  SolverStatus status = SolverStatus::converged;
};

/// min over pure-state decompositions of the average entanglement entropy.
EocResult entanglement_of_creation(const DensityOperator& rho, const SolverOptions& opts = {});

/// min(1, E_RE / ln N).
double purification_bound(const DensityOperator& rho, int n, const EreResult& ere);

/// 2 b^2 for a|00> + b|11>, b <= a.
double single_shot_probability(const ComplexVector& psi, const TensorSpace& space,
                               const Tolerances& tol = kDefaultTolerances);

/// S(rho) / ln N.
double schumacher_rate(const DensityOperator& rho, int n, const Tolerances& tol = kDefaultTolerances);

struct PurificationReport {
  int n = 2;
  double ensemble_bound = 0.0;
  std::optional<double> single_shot;  // pure two-qubit inputs only
  double schumacher_rate = 0.0;
};

PurificationReport purification_report(const DensityOperator& rho, int n, const EreResult& ere,
                                       const Tolerances& tol = kDefaultTolerances);

/// Checks that `space` is bipartite with factors no larger than `max_dim`.
void require_bipartite(const TensorSpace& space, std::size_t max_dim = 0);

}  // namespace erasure_lab
