#pragma once

// Gibbs states, free energies, reservoir erasure accounting and a
// collision-model approach to equilibrium. k_B = 1, so T = 1 / beta and
// entropies are in nats.

#include <vector>

#include "erasure_lab/entropy.hpp"
#include "erasure_lab/linalg.hpp"

namespace erasure_lab {

class HamiltonianSpec {
 public:
  /// Throws InputError unless `matrix` is Hermitian and beta > 0.
  HamiltonianSpec(ComplexMatrix matrix, double beta, const Tolerances& tol = kDefaultTolerances);

  const ComplexMatrix& matrix() const { return matrix_; }
  double beta() const { return beta_; }
  double temperature() const { return 1.0 / beta_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const RealVector& energies() const { return eig_.values; }

  /// ln Z, evaluated with the ground energy factored out.
  double log_partition_function() const;
  double partition_function() const;

 private:
  ComplexMatrix matrix_;
  double beta_;
  EigenSystem eig_;
};

DensityOperator gibbs_state(const HamiltonianSpec& h, const TensorSpace& space);
DensityOperator gibbs_state(const HamiltonianSpec& h);

/// tr(rho H) - T S(rho).
double free_energy(const DensityOperator& rho, const HamiltonianSpec& h,
                   const Tolerances& tol = kDefaultTolerances);

/// Entropy bookkeeping for resetting an apparatus in a thermal reservoir.
struct ErasureReport {
  EntropyValue delta_app;   // S(omega)
  double delta_res = 0.0;   // tr((omega - rho) ln omega), may be negative
  double delta_total = 0.0; // -tr(rho ln omega)
  EntropyValue info_gain;
  bool landauer_satisfied = false;
};

ErasureReport erasure_entropy(const DensityOperator& apparatus, const HamiltonianSpec& reservoir,
                              const EntropyValue& info_gain,
                              const Tolerances& tol = kDefaultTolerances);

/// One partial-swap collision: U = cos(t) I + i sin(t) SWAP with
/// t = (pi/2) swap_fraction acting on apparatus (x) reservoir copy, after
/// which the copy is traced out.
DensityOperator collision_step(const DensityOperator& apparatus,
                               const DensityOperator& reservoir_state, double swap_fraction);

struct CollisionRecord {
  int step = 0;
  DensityOperator apparatus;
  double trace_distance = 0.0;
  double relative_entropy = 0.0;  // nats, +inf if the support is violated
};

struct CollisionTrace {
  std::vector<CollisionRecord> steps;  // steps[0] is the initial state
  bool converged = false;

  int steps_taken() const { return steps.empty() ? 0 : steps.back().step; }
  /// Relative-entropy column non-increasing within `slack` per step.
  bool monotone(double slack = 1e-9) const;
};

CollisionTrace thermalize(const DensityOperator& apparatus, const HamiltonianSpec& reservoir,
                          double swap_fraction, int max_steps, double tol);

}  // namespace erasure_lab
