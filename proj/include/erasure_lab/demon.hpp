#pragma once

// Error correction cycles viewed as Maxwell's demon: a classical two-atom
// cycle and a quantum cycle (encode, error, observe, correct, reset into a
// garbage can), each producing a step-by-step entropy ledger.

#include <optional>
#include <string>
#include <vector>

#include "erasure_lab/entropy.hpp"
#include "erasure_lab/linalg.hpp"

namespace erasure_lab {

struct LedgerStep {
  std::string name;
  double ds_system = 0.0;     // change of the system marginal entropy
  double ds_apparatus = 0.0;  // change of the apparatus marginal entropy
  double ds_joint = 0.0;      // change of the system+apparatus entropy
  double ds_garbage = 0.0;
  double df = 0.0;            // free-energy bookkeeping, energy units
  double info_gain = 0.0;
  std::string note;
};

struct EntropyLedger {
  std::vector<LedgerStep> steps;

  double total_system() const;
  double total_apparatus() const;
  double total_joint() const;
  double total_garbage() const;
  double total_info_gain() const;

  /// System and apparatus entropies return to their initial values.
  bool closed(double tol = 1e-9) const;
  /// Garbage entropy at least the information gained.
  bool satisfies_landauer(double tol = 1e-9) const;
};

/// Two-atom cycle with error probability p; every nonzero entry equals
/// H_bin(p) in magnitude (ln 2 at p = 1/2).
EntropyLedger classical_cycle(double error_probability, double temperature = 1.0);

struct WeightedError {
  ComplexMatrix op;  // unitary on the code (system) space
  double weight = 0.0;
};

struct QecScenario {
  std::vector<ComplexVector> codewords;
  DensityOperator input_state = DensityOperator::maximally_mixed(TensorSpace::single(1, "L"));
  std::vector<WeightedError> errors;
  /// One apparatus state per error; pairwise |<m_i|m_j>| = apparatus_overlap.
  std::vector<ComplexVector> apparatus_states;
  double apparatus_overlap = 0.0;
  /// Ready state |m> of apparatus and garbage can; defaults to the first basis vector.
  std::optional<ComplexVector> ready_state;
  double temperature = 1.0;

  /// Throws InputError on any invariant violation.
  void validate(const Tolerances& tol = kDefaultTolerances) const;

  std::size_t system_dim() const;
  std::size_t apparatus_dim() const;
  ComplexVector ready() const;

  /// n real unit vectors with pairwise overlap a (columns of sqrt of the Gram matrix).
  static std::vector<ComplexVector> symmetric_apparatus_states(std::size_t n, double a);
};

struct QecCycleResult {
  EntropyLedger ledger;
  DensityOperator recovered_state;
  double recovery_fidelity = 0.0;
  double gc_entropy = 0.0;
  double info_gain = 0.0;
  /// Entropy of system+apparatus+environment before the environment is
  /// traced out; only computed for pure inputs.
  std::optional<double> total_entropy_before_trace;
};

QecCycleResult qec_cycle(const QecScenario& scenario, const Tolerances& tol = kDefaultTolerances);

/// S(1/2 (|m1><m1| + |m2><m2|)) = H_bin((1 + a) / 2).
double imperfect_erasure_entropy(const QecScenario& scenario,
                                 const Tolerances& tol = kDefaultTolerances);

struct OverlapRow {
  double overlap = 0.0;
  double fidelity = 0.0;
  double erasure_entropy = 0.0;
  double info_gain = 0.0;
};

/// Re-runs a two-error template with symmetric apparatus states of each overlap.
std::vector<OverlapRow> recovery_fidelity_vs_overlap(const QecScenario& tmpl,
                                                     const std::vector<double>& overlaps,
                                                     const Tolerances& tol = kDefaultTolerances);

/// 3-qubit bit-flip code |000>, |111> with errors {I, X1, X2, X3} at weight 1/4 each.
QecScenario bit_flip_scenario(const DensityOperator& logical_input);

/// Same code with the two errors {I, X1} at weight 1/2 and orthogonal
/// apparatus states; the template for overlap sweeps.
QecScenario bit_flip_overlap_template(const DensityOperator& logical_input);

/// Pauli string on qubits, e.g. "XII"; first character acts on the most significant qubit.
ComplexMatrix pauli_string(const std::string& paulis);

}  // namespace erasure_lab
