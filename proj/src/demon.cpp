#include "erasure_lab/demon.hpp"

#include <cmath>

#include "erasure_lab/errors.hpp"

namespace erasure_lab {

// ---------------------------------------------------------------------------
// Ledger

namespace {

template <typename Field>
double sum_field(const EntropyLedger& l, Field field) {
  double s = 0.0;
  for (const auto& step : l.steps) s += step.*field;
  return s;
}

}  // namespace

double EntropyLedger::total_system() const { return sum_field(*this, &LedgerStep::ds_system); }
double EntropyLedger::total_apparatus() const { return sum_field(*this, &LedgerStep::ds_apparatus); }
double EntropyLedger::total_joint() const { return sum_field(*this, &LedgerStep::ds_joint); }
double EntropyLedger::total_garbage() const { return sum_field(*this, &LedgerStep::ds_garbage); }
double EntropyLedger::total_info_gain() const { return sum_field(*this, &LedgerStep::info_gain); }

bool EntropyLedger::closed(double tol) const {
  return std::abs(total_system()) <= tol && std::abs(total_apparatus()) <= tol;
}

bool EntropyLedger::satisfies_landauer(double tol) const {
  return total_garbage() >= total_info_gain() - tol;
}

// ---------------------------------------------------------------------------
// Classical two-atom cycle

namespace {

// Joint distribution of atom A (rows) and atom B (columns); 0 = ready half.
using Joint = Eigen::Matrix2d;

struct ClassicalEntropies {
  double a, b, ab;
};

ClassicalEntropies entropies(const Joint& p) {
  auto h = [](std::vector<double> v) { return shannon_entropy(v).nats(); };
  const Eigen::Vector2d pa = p.rowwise().sum();
  const Eigen::Vector2d pb = p.colwise().sum();
  return {h({pa(0), pa(1)}), h({pb(0), pb(1)}), h({p(0, 0), p(0, 1), p(1, 0), p(1, 1)})};
}

}  // namespace

EntropyLedger classical_cycle(double p, double temperature) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("classical_cycle: error probability outside [0, 1]");
  if (!(temperature > 0.0)) throw InputError("classical_cycle: temperature must be positive");

  Joint initial;
  initial << 1.0, 0.0, 0.0, 0.0;
  Joint after_error;  // A jumps with probability p
  after_error << 1.0 - p, 0.0, p, 0.0;
  Joint after_observe;  // B copies A
  after_observe << 1.0 - p, 0.0, 0.0, p;
  Joint after_correct;  // A compressed back according to B
  after_correct << 1.0 - p, p, 0.0, 0.0;
  Joint after_reset = initial;

  EntropyLedger ledger;
  ClassicalEntropies prev = entropies(initial);
  double mutual_prev = 0.0;
  auto push = [&](std::string name, const Joint& state, double garbage, std::string note) {
    const auto now = entropies(state);
    const double mutual = now.a + now.b - now.ab;
    LedgerStep step;
    step.name = std::move(name);
    step.ds_system = now.a - prev.a;
    step.ds_apparatus = now.b - prev.b;
    step.ds_joint = now.ab - prev.ab;
    step.ds_garbage = garbage;
    step.df = -temperature * garbage;
    step.info_gain = std::max(0.0, mutual - mutual_prev);
    step.note = std::move(note);
    ledger.steps.push_back(std::move(step));
    prev = now;
    mutual_prev = mutual;
  };

  push("initial", initial, 0.0, "both atoms in their ready halves");
  push("error", after_error, 0.0, "atom A jumps with probability p");
  push("observe", after_observe, 0.0, "atom B correlates with A");
  push("correct", after_correct, 0.0, "A compressed conditional on B");
  push("reset", after_reset, prev.b, "B compressed isothermally; entropy dumped to the environment");
  return ledger;
}

// ---------------------------------------------------------------------------
// Quantum scenario

std::size_t QecScenario::system_dim() const {
  return codewords.empty() ? 0 : static_cast<std::size_t>(codewords.front().size());
}

std::size_t QecScenario::apparatus_dim() const {
  return apparatus_states.empty() ? 0 : static_cast<std::size_t>(apparatus_states.front().size());
}

ComplexVector QecScenario::ready() const {
  if (ready_state) return *ready_state;
  ComplexVector e0 = ComplexVector::Zero(static_cast<Eigen::Index>(apparatus_dim()));
  if (e0.size() > 0) e0(0) = 1.0;
  return e0;
}

void QecScenario::validate(const Tolerances& tol) const {
  constexpr double kTol = 1e-9;
  if (codewords.empty()) throw InputError("scenario: no codewords");
  const auto n = static_cast<Eigen::Index>(system_dim());
  for (std::size_t i = 0; i < codewords.size(); ++i) {
    if (codewords[i].size() != n) throw InputError("scenario: codewords differ in dimension");
    for (std::size_t j = 0; j <= i; ++j) {
      const Complex g = codewords[j].dot(codewords[i]);
      if (std::abs(g - Complex(i == j ? 1.0 : 0.0)) > kTol)
        throw InputError("scenario: codewords are not orthonormal");
    }
  }
  if (input_state.dim() != codewords.size())
    throw InputError("scenario: input state dimension differs from the number of codewords");

  if (errors.empty()) throw InputError("scenario: no error operators");
  double total = 0.0;
  for (const auto& e : errors) {
    if (e.op.rows() != n || e.op.cols() != n)
      throw InputError("scenario: error operator does not act on the code space");
    if ((e.op.adjoint() * e.op - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > kTol)
      throw InputError("scenario: error operators must be unitary");
    if (!(e.weight >= 0.0)) throw InputError("scenario: negative error weight");
    total += e.weight;
  }
  if (std::abs(total - 1.0) > kTol) throw InputError("scenario: error weights do not sum to 1");

  if (apparatus_states.size() != errors.size())
    throw InputError("scenario: need one apparatus state per error");
  if (!(apparatus_overlap >= 0.0 && apparatus_overlap <= 1.0))
    throw InputError("scenario: apparatus overlap outside [0, 1]");
  const auto d = static_cast<Eigen::Index>(apparatus_dim());
  for (std::size_t i = 0; i < apparatus_states.size(); ++i) {
    if (apparatus_states[i].size() != d) throw InputError("scenario: apparatus states differ in dimension");
    if (std::abs(apparatus_states[i].norm() - 1.0) > kTol)
      throw InputError("scenario: apparatus state is not normalized");
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(std::abs(apparatus_states[j].dot(apparatus_states[i])) - apparatus_overlap) > kTol)
        throw InputError("scenario: apparatus overlaps differ from the declared overlap");
  }
  if (ready_state && (ready_state->size() != d || std::abs(ready_state->norm() - 1.0) > kTol))
    throw InputError("scenario: ready state must be a unit vector in the apparatus space");
  if (!(temperature > 0.0)) throw InputError("scenario: temperature must be positive");
  (void)tol;
}

std::vector<ComplexVector> QecScenario::symmetric_apparatus_states(std::size_t n, double a) {
  if (n == 0) throw InputError("symmetric_apparatus_states: need at least one state");
  if (!(a >= 0.0 && a <= 1.0)) throw InputError("symmetric_apparatus_states: overlap outside [0, 1]");
  const auto m = static_cast<Eigen::Index>(n);
  const ComplexMatrix gram =
      (1.0 - a) * ComplexMatrix::Identity(m, m) + a * ComplexMatrix::Ones(m, m);
  const ComplexMatrix root =
      matrix_function(gram, [](double x) { return Complex(std::sqrt(std::max(x, 0.0))); });
  std::vector<ComplexVector> out;
  for (Eigen::Index k = 0; k < m; ++k) {
    ComplexVector v = root.col(k).real().cast<Complex>();
    out.push_back(v / v.norm());
  }
  return out;
}

namespace {

// P(outcome k | apparatus state m_i): projective read-out for orthogonal
// records, the Helstrom measurement for two non-orthogonal ones.
Eigen::MatrixXd confusion_matrix(const QecScenario& s, const Tolerances& tol) {
  const std::size_t n = s.apparatus_states.size();
  Eigen::MatrixXd conf = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  if (n == 1) {
    conf(0, 0) = 1.0;
    return conf;
  }
  if (s.apparatus_overlap <= 1e-9) {
    conf.setIdentity();
    return conf;
  }
  if (n != 2)
    throw UnsupportedScenarioError(
        "imperfect observation is modeled for exactly two apparatus states");

  const auto& m1 = s.apparatus_states[0];
  const auto& m2 = s.apparatus_states[1];
  const ComplexMatrix gamma =
      s.errors[0].weight * m1 * m1.adjoint() - s.errors[1].weight * m2 * m2.adjoint();
  const auto eig = hermitian_eig(gamma, tol);
  const auto d = m1.size();
  ComplexMatrix pi1 = ComplexMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k)
    if (eig.values(k) >= 0.0) pi1 += eig.vectors.col(k) * eig.vectors.col(k).adjoint();
  for (int i = 0; i < 2; ++i) {
    const auto& m = s.apparatus_states[static_cast<std::size_t>(i)];
    const double p1 = std::clamp(m.dot(pi1 * m).real(), 0.0, 1.0);
    conf(0, i) = p1;
    conf(1, i) = 1.0 - p1;
  }
  return conf;
}

struct Marginals {
  double system, apparatus, joint;
};

Marginals marginal_entropies(const ComplexMatrix& joint, std::size_t ds, std::size_t da,
                             const Tolerances& tol) {
  return {von_neumann_entropy(partial_trace(joint, {ds, da}, {true, false}), tol),
          von_neumann_entropy(partial_trace(joint, {ds, da}, {false, true}), tol),
          von_neumann_entropy(joint, tol)};
}

}  // namespace

QecCycleResult qec_cycle(const QecScenario& s, const Tolerances& tol) {
  s.validate(tol);
  const std::size_t ds = s.system_dim();
  const std::size_t da = s.apparatus_dim();
  const auto n_err = s.errors.size();

  ComplexMatrix encoder(static_cast<Eigen::Index>(ds), static_cast<Eigen::Index>(s.codewords.size()));
  for (std::size_t i = 0; i < s.codewords.size(); ++i) encoder.col(static_cast<Eigen::Index>(i)) = s.codewords[i];
  const ComplexMatrix rho_c = encoder * s.input_state.matrix() * encoder.adjoint();

  const ComplexVector ready = s.ready();
  const ComplexMatrix ready_proj = ready * ready.adjoint();
  const Eigen::MatrixXd conf = confusion_matrix(s, tol);

  // Branches sigma_i = E_i rho_c E_i^dagger and their corrected versions.
  std::vector<ComplexMatrix> branch(n_err), corrected(n_err);
  ComplexMatrix rho_f = ComplexMatrix::Zero(rho_c.rows(), rho_c.cols());
  for (std::size_t i = 0; i < n_err; ++i) {
    const auto& e = s.errors[i].op;
    branch[i] = e * rho_c * e.adjoint();
    rho_f += s.errors[i].weight * branch[i];
    corrected[i] = ComplexMatrix::Zero(rho_c.rows(), rho_c.cols());
    for (std::size_t k = 0; k < n_err; ++k) {
      const double pk = conf(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i));
      if (pk == 0.0) continue;
      const auto& recovery = s.errors[k].op;  // unitary, so E^-1 = E^dagger
      corrected[i] += pk * recovery.adjoint() * branch[i] * recovery;
    }
  }

  ComplexMatrix record = ComplexMatrix::Zero(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(da));
  ComplexMatrix observed = ComplexMatrix::Zero(static_cast<Eigen::Index>(ds * da), static_cast<Eigen::Index>(ds * da));
  ComplexMatrix after_correction = observed;
  ComplexMatrix recovered = ComplexMatrix::Zero(rho_c.rows(), rho_c.cols());
  for (std::size_t i = 0; i < n_err; ++i) {
    const double w = s.errors[i].weight;
    const ComplexMatrix mi = s.apparatus_states[i] * s.apparatus_states[i].adjoint();
    record += w * mi;
    observed += w * tensor_product(branch[i], mi);
    after_correction += w * tensor_product(corrected[i], mi);
    recovered += w * corrected[i];
  }

  const std::vector<ComplexMatrix> states = {
      tensor_product(rho_c, ready_proj),      // initial
      tensor_product(rho_f, ready_proj),      // 1: errors, environment still attached
      tensor_product(rho_f, ready_proj),      // 2: environment traced out
      observed,                               // 3: apparatus records the error
      after_correction,                       // 4: conditional recovery
      tensor_product(recovered, ready_proj),  // 5: apparatus swapped with the garbage can
  };
  const std::vector<std::pair<std::string, std::string>> names = {
      {"error", "errors entangle the code with the environment"},
      {"trace_environment", "environment discarded; bookkeeping only"},
      {"observe", "apparatus correlates with the error syndrome"},
      {"correct", "conditional inverse error applied to the system"},
      {"reset", "apparatus swapped with a ready garbage can"},
  };

  QecCycleResult result{EntropyLedger{}, DensityOperator(TensorSpace::single(ds), recovered, tol),
                        0.0, 0.0, 0.0, std::nullopt};
  std::vector<Marginals> ent;
  for (const auto& st : states) ent.push_back(marginal_entropies(st, ds, da, tol));
  auto mutual = [&](std::size_t k) { return ent[k].system + ent[k].apparatus - ent[k].joint; };

  const double gc = von_neumann_entropy(record, tol) - von_neumann_entropy(ready_proj, tol);
  for (std::size_t k = 1; k < states.size(); ++k) {
    LedgerStep step;
    step.name = names[k - 1].first;
    step.note = names[k - 1].second;
    step.ds_system = ent[k].system - ent[k - 1].system;
    step.ds_apparatus = ent[k].apparatus - ent[k - 1].apparatus;
    step.ds_joint = ent[k].joint - ent[k - 1].joint;
    if (step.name == "observe") step.info_gain = std::max(0.0, mutual(k) - mutual(k - 1));
    if (step.name == "reset") {
      step.ds_garbage = gc;
      step.df = -s.temperature * gc;
    }
    result.ledger.steps.push_back(std::move(step));
  }
  result.gc_entropy = gc;
  result.info_gain = result.ledger.total_info_gain();
  result.recovery_fidelity = std::clamp(fidelity(rho_c, recovered, tol), 0.0, 1.0);

  if (von_neumann_entropy(rho_c, tol) <= 1e-12) {
    // sum_i sqrt(p_i) E_i |psi_c>|m>|e_i> with orthonormal environment records.
    const ComplexVector top = hermitian_eig(rho_c, tol).vectors.col(0);
    const auto de = static_cast<Eigen::Index>(n_err);
    ComplexVector total = ComplexVector::Zero(static_cast<Eigen::Index>(ds * da) * de);
    for (std::size_t i = 0; i < n_err; ++i) {
      ComplexVector env = ComplexVector::Zero(de);
      env(static_cast<Eigen::Index>(i)) = 1.0;
      total += std::sqrt(s.errors[i].weight) *
               tensor_product(tensor_product(ComplexVector(s.errors[i].op * top), ready), env);
    }
    result.total_entropy_before_trace = von_neumann_entropy(ComplexMatrix(total * total.adjoint()), tol);
  }
  return result;
}

double imperfect_erasure_entropy(const QecScenario& s, const Tolerances& tol) {
  if (s.apparatus_states.size() > 2)
    throw UnsupportedScenarioError("imperfect_erasure_entropy: more than two apparatus states");
  if (s.apparatus_states.size() != 2)
    throw InputError("imperfect_erasure_entropy: exactly two apparatus states required");
  if (s.errors.size() == 2 && std::abs(s.errors[0].weight - s.errors[1].weight) > 1e-9)
    throw InputError("imperfect_erasure_entropy: error weights must be equal");
  const auto& m1 = s.apparatus_states[0];
  const auto& m2 = s.apparatus_states[1];
  const ComplexMatrix mix = 0.5 * (m1 * m1.adjoint() + m2 * m2.adjoint());
  return von_neumann_entropy(mix, tol);
}

std::vector<OverlapRow> recovery_fidelity_vs_overlap(const QecScenario& tmpl,
                                                     const std::vector<double>& overlaps,
                                                     const Tolerances& tol) {
  if (tmpl.errors.size() != 2)
    throw InputError("recovery_fidelity_vs_overlap: template must have exactly two errors");
  std::vector<OverlapRow> rows;
  for (double a : overlaps) {
    QecScenario s = tmpl;
    s.apparatus_states = QecScenario::symmetric_apparatus_states(2, a);
    s.apparatus_overlap = a;
    s.ready_state.reset();
    const auto r = qec_cycle(s, tol);
    rows.push_back({a, r.recovery_fidelity, imperfect_erasure_entropy(s, tol), r.info_gain});
  }
  return rows;
}

ComplexMatrix pauli_string(const std::string& paulis) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (char c : paulis) {
    ComplexMatrix p(2, 2);
    switch (c) {
      case 'I': p << 1, 0, 0, 1; break;
      case 'X': p << 0, 1, 1, 0; break;
      case 'Y': p << 0, Complex(0, -1), Complex(0, 1), 0; break;
      case 'Z': p << 1, 0, 0, -1; break;
      default: throw InputError(std::string("pauli_string: unknown Pauli '") + c + "'");
    }
    out = tensor_product(out, p);
  }
  return out;
}

namespace {

QecScenario bit_flip_base(const DensityOperator& logical_input) {
  if (logical_input.dim() != 2) throw InputError("bit-flip code protects one qubit");
  QecScenario s;
  ComplexVector c0 = ComplexVector::Zero(8), c1 = ComplexVector::Zero(8);
  c0(0) = 1.0;
  c1(7) = 1.0;
  s.codewords = {c0, c1};
  s.input_state = logical_input;
  return s;
}

}  // namespace

QecScenario bit_flip_scenario(const DensityOperator& logical_input) {
  QecScenario s = bit_flip_base(logical_input);
  for (const char* p : {"III", "XII", "IXI", "IIX"}) s.errors.push_back({pauli_string(p), 0.25});
  s.apparatus_states = QecScenario::symmetric_apparatus_states(4, 0.0);
  return s;
}

QecScenario bit_flip_overlap_template(const DensityOperator& logical_input) {
  QecScenario s = bit_flip_base(logical_input);
  for (const char* p : {"III", "XII"}) s.errors.push_back({pauli_string(p), 0.5});
  s.apparatus_states = QecScenario::symmetric_apparatus_states(2, 0.0);
  return s;
}

}  // namespace erasure_lab
