#pragma once

// Entropy functionals. Everything is computed in nats (k_B = 1); bits are a
// display conversion only.

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "erasure_lab/linalg.hpp"

namespace erasure_lab {

enum class EntropyUnit { nats, bits };

/// A nonnegative entropy, or an explicit infinity (support violation).
class EntropyValue {
 public:
  constexpr EntropyValue() = default;
  /// Throws InputError on negative or NaN input.
  explicit EntropyValue(double nats);
  static constexpr EntropyValue infinite() { return EntropyValue(Infinite{}); }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  /// +inf when infinite.
  double nats() const { return infinite_ ? std::numeric_limits<double>::infinity() : nats_; }
  double bits() const;
  double in(EntropyUnit unit) const { return unit == EntropyUnit::nats ? nats() : bits(); }

  std::string to_string(EntropyUnit unit = EntropyUnit::nats) const;

 private:
  struct Infinite {};
  constexpr explicit EntropyValue(Infinite) : infinite_(true) {}

  double nats_ = 0.0;
  bool infinite_ = false;
};

/// Eigenvalues of a density matrix with [-psd, 0) round-off clamped to 0.
RealVector clamped_spectrum(const ComplexMatrix& rho, const Tolerances& tol = kDefaultTolerances);

/// -sum p ln p over a spectrum, with 0 ln 0 = 0.
double entropy_of_spectrum(const RealVector& p);

EntropyValue von_neumann_entropy(const DensityOperator& rho,
                                 const Tolerances& tol = kDefaultTolerances);
/// Same functional on a raw matrix; no invariant checks.
double von_neumann_entropy(const ComplexMatrix& rho, const Tolerances& tol = kDefaultTolerances);

/// -tr(rho ln omega); infinite when supp(rho) is not inside supp(omega).
EntropyValue cross_term(const DensityOperator& rho, const DensityOperator& omega,
                        const Tolerances& tol = kDefaultTolerances);
/// Raw-matrix version; returns +inf on support violation.
double cross_term(const ComplexMatrix& rho, const ComplexMatrix& omega,
                  const Tolerances& tol = kDefaultTolerances);

/// S(rho||omega) = -tr(rho ln omega) - S(rho).
EntropyValue relative_entropy(const DensityOperator& rho, const DensityOperator& omega,
                              const Tolerances& tol = kDefaultTolerances);

using Cut = std::pair<std::vector<std::string>, std::vector<std::string>>;

/// S(rho_X) + S(rho_Y) - S(rho_XY) for a partition (X, Y) of rho's factors.
EntropyValue mutual_information(const DensityOperator& rho, const Cut& cut,
                                const Tolerances& tol = kDefaultTolerances);

EntropyValue shannon_entropy(const std::vector<double>& p);
EntropyValue binary_entropy(double x);

}  // namespace erasure_lab
