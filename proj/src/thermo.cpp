#include "erasure_lab/thermo.hpp"

#include <cmath>
#include <numbers>

#include "erasure_lab/errors.hpp"

namespace erasure_lab {

HamiltonianSpec::HamiltonianSpec(ComplexMatrix matrix, double beta, const Tolerances& tol)
    : matrix_(std::move(matrix)), beta_(beta) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols())
    throw InputError("Hamiltonian must be a nonempty square matrix");
  if (hermiticity_defect(matrix_) > tol.hermitian) throw InputError("Hamiltonian is not Hermitian");
  if (!(beta > 0.0) || std::isinf(beta)) throw InputError("beta must be positive and finite");
  eig_ = hermitian_eig(matrix_, tol);
}

double HamiltonianSpec::log_partition_function() const {
  const double ground = eig_.values.minCoeff();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < eig_.values.size(); ++i)
    sum += std::exp(-beta_ * (eig_.values(i) - ground));
  return -beta_ * ground + std::log(sum);
}

double HamiltonianSpec::partition_function() const { return std::exp(log_partition_function()); }

DensityOperator gibbs_state(const HamiltonianSpec& h, const TensorSpace& space) {
  const double ground = h.energies().minCoeff();
  const double log_z_shifted = h.log_partition_function() + h.beta() * ground;
  ComplexMatrix omega = matrix_function(h.matrix(), [&](double e) {
    return Complex(std::exp(-h.beta() * (e - ground) - log_z_shifted));
  });
  omega = 0.5 * (omega + omega.adjoint());
  return DensityOperator(space, std::move(omega));
}

DensityOperator gibbs_state(const HamiltonianSpec& h) {
  return gibbs_state(h, TensorSpace::single(h.dim()));
}

double free_energy(const DensityOperator& rho, const HamiltonianSpec& h, const Tolerances& tol) {
  if (rho.dim() != h.dim()) throw InputError("free_energy: dimension mismatch");
  const double energy = (rho.matrix() * h.matrix()).trace().real();
  return energy - h.temperature() * von_neumann_entropy(rho, tol).nats();
}

ErasureReport erasure_entropy(const DensityOperator& apparatus, const HamiltonianSpec& reservoir,
                              const EntropyValue& info_gain, const Tolerances& tol) {
  if (apparatus.dim() != reservoir.dim()) throw InputError("erasure_entropy: dimension mismatch");
  const auto omega = gibbs_state(reservoir, apparatus.space());
  const ComplexMatrix log_omega = matrix_log(omega.matrix(), LogPolicy::strict, tol);

  ErasureReport r;
  r.delta_app = von_neumann_entropy(omega, tol);
  r.delta_res = ((omega.matrix() - apparatus.matrix()) * log_omega).trace().real();
  r.delta_total = -(apparatus.matrix() * log_omega).trace().real();
  r.info_gain = info_gain;
  r.landauer_satisfied = info_gain.is_finite() && r.delta_total >= info_gain.nats() - 1e-9;
  return r;
}

DensityOperator collision_step(const DensityOperator& apparatus,
                               const DensityOperator& reservoir_state, double swap_fraction) {
  if (apparatus.dim() != reservoir_state.dim())
    throw InputError("collision_step: apparatus and reservoir dimensions differ");
  if (!(swap_fraction > 0.0 && swap_fraction <= 1.0))
    throw InputError("collision_step: swap_fraction must lie in (0, 1]");

  const std::size_t d = apparatus.dim();
  const auto n = static_cast<Eigen::Index>(d * d);
  const double theta = 0.5 * std::numbers::pi * swap_fraction;
  const ComplexMatrix unitary = std::cos(theta) * ComplexMatrix::Identity(n, n) +
                                Complex(0.0, std::sin(theta)) * swap_operator(d);
  const ComplexMatrix joint = tensor_product(apparatus.matrix(), reservoir_state.matrix());
  const ComplexMatrix evolved = unitary * joint * unitary.adjoint();
  ComplexMatrix out = partial_trace(evolved, {d, d}, {true, false});
  out = 0.5 * (out + out.adjoint());
  return DensityOperator(apparatus.space(), std::move(out));
}

bool CollisionTrace::monotone(double slack) const {
  for (std::size_t i = 1; i < steps.size(); ++i)
    if (steps[i].relative_entropy > steps[i - 1].relative_entropy + slack) return false;
  return true;
}

CollisionTrace thermalize(const DensityOperator& apparatus, const HamiltonianSpec& reservoir,
                          double swap_fraction, int max_steps, double tol) {
  if (!(tol > 0.0)) throw InputError("thermalize: tol must be positive");
  if (max_steps < 0) throw InputError("thermalize: max_steps must be nonnegative");
  const auto omega = gibbs_state(reservoir, apparatus.space());

  CollisionTrace trace;
  auto record = [&](int step, DensityOperator state) {
    const double dist = trace_distance(state.matrix(), omega.matrix());
    const double rel = relative_entropy(state, omega).nats();
    trace.steps.push_back({step, std::move(state), dist, rel});
    return dist;
  };

  double dist = record(0, apparatus);
  for (int step = 1; dist > tol && step <= max_steps; ++step)
    dist = record(step, collision_step(trace.steps.back().apparatus, omega, swap_fraction));
  trace.converged = dist <= tol;
  return trace;
}

}  // namespace erasure_lab
