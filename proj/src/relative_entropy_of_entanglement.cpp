// Relative entropy of entanglement by pairwise Frank-Wolfe over explicit
// separable mixtures.
//
// The objective f(omega) = -tr(rho ln omega) - S(rho) is convex; its
// gradient is -D ln(omega)[rho], evaluated with the divided-difference
// (Daleckii-Krein) form of the matrix-log derivative. Each iteration asks
// the product-state oracle for the vertex minimizing <v|grad|v>, then moves
// weight from the worst active atom to that vertex (pairwise step) with an
// exact line search. A plain Frank-Wolfe step is the fallback when the
// pairwise step makes no progress.

#include <cmath>

#include <Eigen/LU>
#include <boost/math/tools/minima.hpp>

#include "erasure_lab/entanglement.hpp"
#include "erasure_lab/errors.hpp"

namespace erasure_lab {

namespace {

constexpr double kWeightFloor = 1e-12;
constexpr int kInnerSteps = 50;
constexpr int kPolishSteps = 10;

struct Atom {
  double weight;
  ComplexVector a, b;
  ComplexVector ab;
};

struct Objective {
  const ComplexMatrix& rho;
  double rho_entropy;
  const Tolerances& tol;

  double operator()(const ComplexMatrix& omega) const {
    const double cross = cross_term(rho, omega, tol);
    return std::isinf(cross) ? cross : cross - rho_entropy;
  }

  ComplexMatrix gradient(const ComplexMatrix& omega) const {
    const auto eig = hermitian_eig(omega, tol);
    const ComplexMatrix rho_eig = eig.vectors.adjoint() * rho * eig.vectors;
    const Eigen::Index d = omega.rows();
    ComplexMatrix weighted(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        const double li = eig.values(i), lj = eig.values(j);
        double gamma;
        if (li < tol.log_floor || lj < tol.log_floor) {
          gamma = 0.0;  // outside the support of omega
        } else if (std::abs(li - lj) < 1e-10) {
          gamma = 2.0 / (li + lj);
        } else {
          gamma = (std::log(li) - std::log(lj)) / (li - lj);
        }
        weighted(i, j) = gamma * rho_eig(i, j);
      }
    }
    ComplexMatrix grad = -(eig.vectors * weighted * eig.vectors.adjoint());
    return 0.5 * (grad + grad.adjoint());
  }
};

double expectation(const ComplexMatrix& g, const ComplexVector& v) { return v.dot(g * v).real(); }

ComplexMatrix assemble(const std::vector<Atom>& atoms, Eigen::Index d) {
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (const auto& at : atoms) out += at.weight * at.ab * at.ab.adjoint();
  return out;
}

// Caratheodory reduction: with more atoms than the real dimension of the
// Hermitian matrices (plus the weight constraint), the atoms are affinely
// dependent, and weight can be shifted along a null vector until one atom
// vanishes. The assembled operator is unchanged.
void reduce_atoms(std::vector<Atom>& atoms, std::size_t cap, Eigen::Index d) {
  while (atoms.size() > cap) {
    const auto k = static_cast<Eigen::Index>(atoms.size());
    Eigen::MatrixXd m(d * d + 1, k);
    for (Eigen::Index c = 0; c < k; ++c) {
      const ComplexMatrix p = atoms[static_cast<std::size_t>(c)].ab * atoms[static_cast<std::size_t>(c)].ab.adjoint();
      Eigen::Index r = 0;
      for (Eigen::Index i = 0; i < d; ++i) {
        m(r++, c) = p(i, i).real();
        for (Eigen::Index j = i + 1; j < d; ++j) {
          m(r++, c) = p(i, j).real();
          m(r++, c) = p(i, j).imag();
        }
      }
      m(r, c) = 1.0;
    }
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    Eigen::VectorXd z = lu.kernel().col(0);
    if (z.maxCoeff() <= 0.0) z = -z;
    std::size_t drop = 0;
    double t = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < atoms.size(); ++c) {
      const double zc = z(static_cast<Eigen::Index>(c));
      if (zc > 1e-14 && atoms[c].weight / zc < t) {
        t = atoms[c].weight / zc;
        drop = c;
      }
    }
    for (std::size_t c = 0; c < atoms.size(); ++c)
      atoms[c].weight = std::max(0.0, atoms[c].weight - t * z(static_cast<Eigen::Index>(c)));
    atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(drop));
    std::erase_if(atoms, [](const Atom& at) { return at.weight <= kWeightFloor; });
  }
  double total = 0.0;
  for (const auto& at : atoms) total += at.weight;
  for (auto& at : atoms) at.weight /= total;
}

// Minimizes phi on [0, hi]; returns (step, value) with value <= phi(0).
std::pair<double, double> line_search(const std::function<double(double)>& phi, double hi, double f0,
                                      bool backtrack = false) {
  std::uintmax_t max_iter = 200;
  const auto [x, fx] = boost::math::tools::brent_find_minima(phi, 0.0, hi, 20, max_iter);
  std::pair<double, double> best{0.0, f0};
  if (fx < best.second) best = {x, fx};
  if (const double fh = phi(hi); fh < best.second) best = {hi, fh};
  // Near a rank-deficient iterate most of [0, hi] can be infeasible; Brent
  // then never samples the short decreasing stretch next to 0.
  for (double t = 0.5 * hi; backtrack && best.first == 0.0 && t > 1e-18 * hi; t *= 0.5)
    if (const double ft = phi(t); ft < f0) best = {t, ft};
  return best;
}

// Conditional blocks of G for a product ket a (x) b.
ComplexVector contract_b(const ComplexMatrix& g, const Atom& at, Eigen::Index da, Eigen::Index db) {
  // (I (x) <b|) G (|a> (x) |b>)
  const ComplexVector gx = g * at.ab;
  ComplexVector out = ComplexVector::Zero(da);
  for (Eigen::Index i = 0; i < da; ++i) out(i) = at.b.dot(gx.segment(i * db, db));
  return out;
}

ComplexVector contract_a(const ComplexMatrix& g, const Atom& at, Eigen::Index da, Eigen::Index db) {
  // (<a| (x) I) G (|a> (x) |b>)
  const ComplexVector gx = g * at.ab;
  ComplexVector out = ComplexVector::Zero(db);
  for (Eigen::Index i = 0; i < da; ++i) out += std::conj(at.a(i)) * gx.segment(i * db, db);
  return out;
}

ComplexVector tangent(const ComplexVector& x, const ComplexVector& g) { return g - x.dot(g) * x; }

}  // namespace

EreResult relative_entropy_of_entanglement(const DensityOperator& rho, const SolverOptions& opts) {
  require_bipartite(rho.space(), opts.max_factor_dim);
  if (!(opts.gap_tol > 0.0)) throw InputError("gap_tol must be positive");
  if (opts.max_iter < 0) throw InputError("max_iter must be nonnegative");
  const Tolerances& tol = kDefaultTolerances;
  const std::size_t da = rho.space().factors()[0].dim;
  const std::size_t db = rho.space().factors()[1].dim;
  const auto d = static_cast<Eigen::Index>(da * db);
  const auto da_i = static_cast<Eigen::Index>(da), db_i = static_cast<Eigen::Index>(db);
  const std::size_t max_atoms = (da * db) * (da * db);

  const Objective f{rho.matrix(), von_neumann_entropy(rho.matrix(), tol), tol};

  std::vector<Atom> atoms;
  const auto start = SeparableMixture::maximally_mixed(da, db);
  for (const auto& t : start.terms())
    atoms.push_back({t.weight, t.ket_a, t.ket_b, tensor_product(t.ket_a, t.ket_b)});
  ComplexMatrix omega = assemble(atoms, d);
  double value = f(omega);

  EreResult result;
  std::optional<ComplexVector> warm_b;
  for (int it = 0;; ++it) {
    const ComplexMatrix grad = f.gradient(omega);

    ProductOracleOptions oracle;
    oracle.random_starts = opts.oracle_starts;
    oracle.seed = opts.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(it + 1);
    oracle.warm_start_b = warm_b;
    const ProductState vertex = closest_product_state(-grad, da, db, oracle);
    warm_b = vertex.ket_b;
    const ComplexVector v = tensor_product(vertex.ket_a, vertex.ket_b);

    const double gap = std::max(0.0, (grad * omega).trace().real() + vertex.objective);
    result.convergence.push_back({it, value, gap});
    if (gap <= opts.gap_tol) {
      result.status = SolverStatus::converged;
      break;
    }
    if (it >= opts.max_iter) {
      result.status = SolverStatus::iteration_cap;
      break;
    }

    // Pairwise candidate: shift weight to the vertex from the atom the
    // gradient likes least.
    std::size_t away = 0;
    for (std::size_t k = 1; k < atoms.size(); ++k)
      if (expectation(grad, atoms[k].ab) > expectation(grad, atoms[away].ab)) away = k;
    const ComplexMatrix vv = v * v.adjoint();
    const ComplexMatrix pair_dir = vv - atoms[away].ab * atoms[away].ab.adjoint();
    auto [step, next] =
        line_search([&](double g) { return f(omega + g * pair_dir); }, atoms[away].weight, value, true);
    const bool pairwise = step > 0.0;
    if (!pairwise) {
      const ComplexMatrix fw_dir = vv - omega;
      std::tie(step, next) = line_search([&](double g) { return f(omega + g * fw_dir); }, 1.0, value, true);
    }
    if (step <= 0.0) {
      // Neither direction decreases the objective at this precision.
      result.status = SolverStatus::iteration_cap;
      break;
    }

    if (pairwise) {
      atoms[away].weight -= step;
    } else {
      for (auto& at : atoms) at.weight *= (1.0 - step);
    }
    // Merge with an existing atom when the oracle returned the same vertex.
    bool merged = false;
    for (auto& at : atoms) {
      if (std::norm(at.ab.dot(v)) > 1.0 - 1e-12) {
        at.weight += step;
        merged = true;
        break;
      }
    }
    if (!merged) atoms.push_back({step, vertex.ket_a, vertex.ket_b, v});
    std::erase_if(atoms, [](const Atom& at) { return at.weight <= kWeightFloor; });
    omega = assemble(atoms, d);
    value = f(omega);

    // Fully corrective pass: pairwise steps inside the active set, no oracle
    // calls, until the local gap is small next to the last global gap.
    for (int inner = 0; inner < kInnerSteps && atoms.size() > 1; ++inner) {
      const ComplexMatrix g = f.gradient(omega);
      std::size_t best = 0, worst = 0;
      std::vector<double> slope(atoms.size());
      for (std::size_t k = 0; k < atoms.size(); ++k) {
        slope[k] = expectation(g, atoms[k].ab);
        if (slope[k] < slope[best]) best = k;
        if (slope[k] > slope[worst]) worst = k;
      }
      const double local_gap = (slope[worst] - slope[best]) * atoms[worst].weight;
      if (best == worst || local_gap < 0.5 * gap || local_gap < 0.1 * opts.gap_tol) break;
      const ComplexMatrix dir = atoms[best].ab * atoms[best].ab.adjoint() -
                                atoms[worst].ab * atoms[worst].ab.adjoint();
      const auto [local_step, local_value] =
          line_search([&](double t) { return f(omega + t * dir); }, atoms[worst].weight, value);
      if (local_step <= 0.0) break;
      atoms[best].weight += local_step;
      atoms[worst].weight -= local_step;
      std::erase_if(atoms, [](const Atom& at) { return at.weight <= kWeightFloor; });
      omega = assemble(atoms, d);
      value = f(omega);
      (void)local_value;
    }

    // Local refinement of the atom positions: geodesic descent of every
    // ket on its sphere along -<x|G|x>'s gradient, one shared step length.
    for (int polish = 0; polish < kPolishSteps; ++polish) {
      const ComplexMatrix g = f.gradient(omega);
      std::vector<ComplexVector> ta(atoms.size()), tb(atoms.size());
      double largest = 0.0;
      for (std::size_t k = 0; k < atoms.size(); ++k) {
        ta[k] = tangent(atoms[k].a, contract_b(g, atoms[k], da_i, db_i));
        tb[k] = tangent(atoms[k].b, contract_a(g, atoms[k], da_i, db_i));
        largest = std::max({largest, ta[k].norm(), tb[k].norm()});
      }
      if (largest < 1e-12) break;
      ComplexVector a(da_i), b(db_i), ab(d);
      auto moved_omega = [&](double t) {
        ComplexMatrix out = ComplexMatrix::Zero(d, d);
        for (std::size_t k = 0; k < atoms.size(); ++k) {
          a = atoms[k].a - t * ta[k];
          b = atoms[k].b - t * tb[k];
          const double scale = atoms[k].weight / (a.squaredNorm() * b.squaredNorm());
          for (Eigen::Index i = 0; i < da_i; ++i) ab.segment(i * db_i, db_i) = a(i) * b;
          out.selfadjointView<Eigen::Lower>().rankUpdate(ab, scale);
        }
        return ComplexMatrix(out.selfadjointView<Eigen::Lower>());
      };
      const auto [t, ft] = line_search([&](double t) { return f(moved_omega(t)); }, 1.0 / largest, value);
      if (t <= 0.0 || value - ft < 1e-15) break;
      for (std::size_t k = 0; k < atoms.size(); ++k) {
        atoms[k].a = (atoms[k].a - t * ta[k]).normalized();
        atoms[k].b = (atoms[k].b - t * tb[k]).normalized();
        atoms[k].ab = tensor_product(atoms[k].a, atoms[k].b);
      }
      omega = assemble(atoms, d);
      value = f(omega);
    }

    // Keep the active set bounded without moving omega.
    reduce_atoms(atoms, max_atoms, d);
    omega = assemble(atoms, d);
    value = f(omega);
  }

  result.value = std::max(0.0, value);
  double total = 0.0;
  for (const auto& at : atoms) total += at.weight;
  std::vector<ProductTerm> terms;
  for (const auto& at : atoms) terms.push_back({at.weight / total, at.a, at.b});
  result.argmin = SeparableMixture(da, db, std::move(terms));
  return result;
}

}  // namespace erasure_lab
