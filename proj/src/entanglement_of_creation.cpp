// Entanglement of creation by search over pure-state decompositions.
//
// With rho = sum_i l_i |e_i><e_i| of rank r, every decomposition into K
// pure states is |psi_k~> = sum_i U_ki sqrt(l_i) |e_i> for a K x r isometry
// U, with weights p_k = || psi_k~ ||^2. The search perturbs U by random
// two-row rotations (which keep it an isometry), accepts improvements and
// halves the step size after a run of rejections.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/QR>

#include "erasure_lab/entanglement.hpp"
#include "erasure_lab/errors.hpp"

namespace erasure_lab {

namespace {

constexpr double kRankFloor = 1e-12;
constexpr double kMinStep = 1e-6;

// p * E(psi / sqrt(p)) for an unnormalized pure state.
double weighted_entanglement(const ComplexVector& psi, Eigen::Index da, Eigen::Index db) {
  const double p = psi.squaredNorm();
  if (p <= 0.0) return 0.0;
  ComplexMatrix c(da, db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < db; ++j) c(i, j) = psi(i * db + j);
  const ComplexMatrix reduced = (da <= db) ? ComplexMatrix(c * c.adjoint()) : ComplexMatrix(c.adjoint() * c);
  if (reduced.rows() == 2) {
    // Closed-form 2x2 spectrum.
    const double x = reduced(0, 0).real() / p, z = reduced(1, 1).real() / p;
    const double r = std::hypot(x - z, 2.0 * std::abs(reduced(0, 1)) / p);
    const double hi = std::clamp(0.5 * (x + z + r), 0.0, 1.0), lo = std::clamp(0.5 * (x + z - r), 0.0, 1.0);
    auto h = [](double q) { return q > 0.0 ? -q * std::log(q) : 0.0; };
    return p * (h(hi) + h(lo));
  }
  const RealVector mu = clamped_spectrum(reduced / p);
  return p * entropy_of_spectrum(mu);
}

struct Search {
  const ComplexMatrix& scaled_vectors;  // d x r, columns sqrt(l_i) |e_i>
  Eigen::Index da, db;

  ComplexVector component(const ComplexMatrix& u, Eigen::Index k) const {
    return scaled_vectors * u.row(k).transpose();
  }
};

ComplexMatrix random_isometry(Eigen::Index k, Eigen::Index r, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix g(k, k);
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < k; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  const Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(k, k);
  return q.leftCols(r);
}

struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  ComplexMatrix u;
  bool settled = false;
};

Candidate descend(const Search& s, ComplexMatrix u, int step_cap, std::mt19937_64& rng) {
  const Eigen::Index k_terms = u.rows();
  std::vector<double> terms(static_cast<std::size_t>(k_terms));
  double value = 0.0;
  for (Eigen::Index k = 0; k < k_terms; ++k) {
    terms[static_cast<std::size_t>(k)] = weighted_entanglement(s.component(u, k), s.da, s.db);
    value += terms[static_cast<std::size_t>(k)];
  }

  std::uniform_int_distribution<Eigen::Index> pick(0, k_terms - 1);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const int patience = static_cast<int>(2 * k_terms * k_terms);

  double step = 0.5;
  int failures = 0;
  bool settled = false;
  for (int it = 0; it < step_cap; ++it) {
    if (k_terms < 2) {
      settled = true;
      break;
    }
    Eigen::Index k = pick(rng), l = pick(rng);
    while (l == k) l = pick(rng);
    const double angle = step * normal(rng);
    const Complex rot = std::polar(1.0, phase(rng));
    const double c = std::cos(angle), sn = std::sin(angle);

    const Eigen::RowVectorXcd row_k = u.row(k), row_l = u.row(l);
    const Eigen::RowVectorXcd new_k = c * row_k + sn * rot * row_l;
    const Eigen::RowVectorXcd new_l = -sn * std::conj(rot) * row_k + c * row_l;
    const double tk = weighted_entanglement(s.scaled_vectors * new_k.transpose(), s.da, s.db);
    const double tl = weighted_entanglement(s.scaled_vectors * new_l.transpose(), s.da, s.db);
    const double delta = tk + tl - terms[static_cast<std::size_t>(k)] - terms[static_cast<std::size_t>(l)];
    if (delta < -1e-15) {
      u.row(k) = new_k;
      u.row(l) = new_l;
      terms[static_cast<std::size_t>(k)] = tk;
      terms[static_cast<std::size_t>(l)] = tl;
      value += delta;
      failures = 0;
    } else if (++failures >= patience) {
      step *= 0.5;
      failures = 0;
      if (step < kMinStep) {
        settled = true;
        break;
      }
    }
  }
  // Re-sum to shed accumulated drift.
  value = 0.0;
  for (Eigen::Index k = 0; k < k_terms; ++k) value += weighted_entanglement(s.component(u, k), s.da, s.db);
  return {value, std::move(u), settled};
}

}  // namespace

EocResult entanglement_of_creation(const DensityOperator& rho, const SolverOptions& opts) {
  require_bipartite(rho.space(), opts.max_factor_dim);
  if (opts.eoc_restarts < 1) throw InputError("eoc_restarts must be at least 1");
  const auto da = static_cast<Eigen::Index>(rho.space().factors()[0].dim);
  const auto db = static_cast<Eigen::Index>(rho.space().factors()[1].dim);

  const auto eig = hermitian_eig(rho.matrix());
  Eigen::Index rank = 0;
  while (rank < eig.values.size() && eig.values(rank) > kRankFloor) ++rank;
  ComplexMatrix scaled(rho.matrix().rows(), rank);
  for (Eigen::Index i = 0; i < rank; ++i) scaled.col(i) = std::sqrt(eig.values(i)) * eig.vectors.col(i);
  const Search search{scaled, da, db};

  Candidate best;
  const auto max_terms = std::max<Eigen::Index>(
      rank, std::min<Eigen::Index>(rank * rank, static_cast<Eigen::Index>(opts.eoc_max_terms)));
  for (Eigen::Index k_terms = rank; k_terms <= max_terms; ++k_terms) {
    // A pure state has a single decomposition.
    const int restarts = (rank == 1) ? 1 : opts.eoc_restarts;
    for (int restart = 0; restart < restarts; ++restart) {
      std::mt19937_64 rng(opts.seed ^ (static_cast<std::uint64_t>(k_terms) << 32) ^
                          static_cast<std::uint64_t>(restart) * 0xBF58476D1CE4E5B9ULL);
      ComplexMatrix u = (rank == 1) ? ComplexMatrix(ComplexMatrix::Identity(1, 1))
                                    : random_isometry(k_terms, rank, rng);
      auto cand = descend(search, std::move(u), opts.eoc_step_cap, rng);
      if (cand.value < best.value) best = std::move(cand);
    }
  }

  EocResult out;
  out.value = std::max(0.0, best.value);
  out.status = best.settled ? SolverStatus::converged : SolverStatus::iteration_cap;
  for (Eigen::Index k = 0; k < best.u.rows(); ++k) {
    const ComplexVector psi = search.component(best.u, k);
    const double p = psi.squaredNorm();
    if (p <= kRankFloor) continue;
    out.decomposition.push_back({p, psi / std::sqrt(p)});
  }
  return out;
}

}  // namespace erasure_lab
