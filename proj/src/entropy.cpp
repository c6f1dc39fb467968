#include "erasure_lab/entropy.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "erasure_lab/errors.hpp"

namespace erasure_lab {

EntropyValue::EntropyValue(double nats) : nats_(nats) {
  if (std::isnan(nats) || nats < 0.0)
    throw InputError("entropy must be nonnegative, got " + std::to_string(nats));
  if (std::isinf(nats)) {
    nats_ = 0.0;
    infinite_ = true;
  }
}

double EntropyValue::bits() const { return nats() / std::numbers::ln2; }

std::string EntropyValue::to_string(EntropyUnit unit) const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os.precision(12);
  os << in(unit) << (unit == EntropyUnit::nats ? " nats" : " bits");
  return os.str();
}

RealVector clamped_spectrum(const ComplexMatrix& rho, const Tolerances& tol) {
  RealVector ev = hermitian_eig(rho, tol).values;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) < 0.0 && ev(i) >= -tol.psd) ev(i) = 0.0;
  return ev;
}

double entropy_of_spectrum(const RealVector& p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p(i) > 0.0) s -= p(i) * std::log(p(i));
  return s;
}

double von_neumann_entropy(const ComplexMatrix& rho, const Tolerances& tol) {
  return entropy_of_spectrum(clamped_spectrum(rho, tol));
}

EntropyValue von_neumann_entropy(const DensityOperator& rho, const Tolerances& tol) {
  return EntropyValue(std::max(0.0, von_neumann_entropy(rho.matrix(), tol)));
}

double cross_term(const ComplexMatrix& rho, const ComplexMatrix& omega, const Tolerances& tol) {
  if (rho.rows() != omega.rows() || rho.cols() != omega.cols())
    throw InputError("cross_term: dimension mismatch");
  const auto eig = hermitian_eig(omega, tol);
  // Diagonal of rho in omega's eigenbasis.
  const RealVector weights =
      (eig.vectors.adjoint() * rho * eig.vectors).diagonal().real();
  double s = 0.0;
  for (Eigen::Index j = 0; j < weights.size(); ++j) {
    if (eig.values(j) < tol.log_floor) {
      if (weights(j) > tol.psd) return std::numeric_limits<double>::infinity();
      continue;
    }
    s -= weights(j) * std::log(eig.values(j));
  }
  return s;
}

EntropyValue cross_term(const DensityOperator& rho, const DensityOperator& omega,
                        const Tolerances& tol) {
  if (rho.dim() != omega.dim()) throw InputError("cross_term: dimension mismatch");
  const double v = cross_term(rho.matrix(), omega.matrix(), tol);
  return std::isinf(v) ? EntropyValue::infinite() : EntropyValue(std::max(0.0, v));
}

EntropyValue relative_entropy(const DensityOperator& rho, const DensityOperator& omega,
                              const Tolerances& tol) {
  if (rho.dim() != omega.dim()) throw InputError("relative_entropy: dimension mismatch");
  const double cross = cross_term(rho.matrix(), omega.matrix(), tol);
  if (std::isinf(cross)) return EntropyValue::infinite();
  const double d = cross - von_neumann_entropy(rho.matrix(), tol);
  // Klein: only round-off can push this below zero.
  return EntropyValue(std::max(0.0, d));
}

EntropyValue mutual_information(const DensityOperator& rho, const Cut& cut,
                                const Tolerances& tol) {
  const auto& [left, right] = cut;
  if (left.empty() || right.empty()) throw InputError("mutual_information: empty side of cut");
  std::set<std::string> seen;
  for (const auto* side : {&left, &right})
    for (const auto& label : *side) {
      rho.space().index_of(label);
      if (!seen.insert(label).second)
        throw InputError("mutual_information: label '" + label + "' on both sides of the cut");
    }
  if (seen.size() != rho.space().size())
    throw InputError("mutual_information: cut does not cover every factor");

  const double s_left = von_neumann_entropy(partial_trace(rho, left), tol).nats();
  const double s_right = von_neumann_entropy(partial_trace(rho, right), tol).nats();
  const double s_all = von_neumann_entropy(rho, tol).nats();
  return EntropyValue(std::max(0.0, s_left + s_right - s_all));
}

EntropyValue shannon_entropy(const std::vector<double>& p) {
  double total = 0.0, s = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || std::isinf(x)) throw InputError("shannon_entropy: invalid probability");
    total += x;
    if (x > 0.0) s -= x * std::log(x);
  }
  if (std::abs(total - 1.0) > 1e-9) throw InputError("shannon_entropy: probabilities do not sum to 1");
  return EntropyValue(std::max(0.0, s));
}

EntropyValue binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw InputError("binary_entropy: argument outside [0, 1]");
  return shannon_entropy({x, 1.0 - x});
}

}  // namespace erasure_lab
