// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Reference values are recomputed here from closed forms rather than read
// back from the library.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "erasure_lab/demon.hpp"
#include "erasure_lab/entanglement.hpp"
#include "erasure_lab/random.hpp"
#include "erasure_lab/thermo.hpp"

using namespace erasure_lab;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double h2(double x) {
  auto t = [](double p) { return p > 0.0 ? -p * std::log(p) : 0.0; };
  return t(x) + t(1.0 - x);
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Reduced-state entropy of a two-qubit pure vector via det(rho_A) = |ad - bc|^2.
double pure_pair_entropy(const ComplexVector& psi) {
  const double c = std::abs(psi(0) * psi(3) - psi(1) * psi(2));
  const double disc = std::sqrt(std::max(0.0, 1.0 - 4.0 * c * c));
  return h2(0.5 * (1.0 + disc));
}

Outcome landauer() {
  Rng rng(kSeed);
  double worst = 0.0, worst_eq = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t d = 2 + static_cast<std::size_t>(i % 2);
    const auto rho = random_density(TensorSpace::single(d), rng);
    const auto h = random_hamiltonian(d, rng);
    const auto s = von_neumann_entropy(rho);
    worst = std::min(worst, erasure_entropy(rho, h, s).delta_total - s.nats());
    const auto omega = gibbs_state(h);
    const auto so = von_neumann_entropy(omega);
    worst_eq = std::max(worst_eq, std::abs(erasure_entropy(omega, h, so).delta_total - so.nats()));
  }
  return {worst >= -1e-9 && worst_eq <= 1e-8,
          "min margin " + num(worst) + ", equality defect " + num(worst_eq)};
}

Outcome free_energy_identity() {
  Rng rng(kSeed + 1);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t d = 2 + static_cast<std::size_t>(i % 2);
    const auto rho = random_density(TensorSpace::single(d), rng);
    const auto h = random_hamiltonian(d, rng);
    const auto omega = gibbs_state(h);
    const double lhs = free_energy(rho, h) - free_energy(omega, h);
    const double rhs = h.temperature() * relative_entropy(rho, omega).nats();
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  return {worst <= 1e-9, "max relative error " + num(worst)};
}

Outcome classical_ledger() {
  const auto ledger = classical_cycle(0.5);
  const double ln2 = std::log(2.0);
  double worst = 0.0;
  for (const auto& s : ledger.steps)
    for (double v : {s.ds_system, s.ds_apparatus, s.ds_garbage, s.info_gain})
      if (v != 0.0) worst = std::max(worst, std::abs(std::abs(v) - ln2));
  const bool closure = ledger.total_system() == 0.0 && ledger.total_apparatus() == 0.0;
  const double garbage_gap = std::abs(ledger.total_garbage() - ledger.total_info_gain());
  return {worst <= 1e-12 && closure && garbage_gap <= 1e-12,
          "step defect " + num(worst) + ", garbage - info " + num(garbage_gap)};
}

Outcome qec_saturation() {
  Rng rng(kSeed + 3);
  const auto logical = TensorSpace::single(2, "L");
  double worst_f = 0.0, worst_e = 0.0;
  for (int i = 0; i < 3; ++i) {
    const auto input = i == 0 ? DensityOperator::from_pure(logical, random_pure(2, rng))
                              : random_density(logical, rng);
    const auto r = qec_cycle(bit_flip_scenario(input));
    worst_f = std::max(worst_f, 1.0 - r.recovery_fidelity);
    worst_e = std::max({worst_e, std::abs(r.gc_entropy - std::log(4.0)), std::abs(r.info_gain - std::log(4.0))});
  }
  return {worst_f <= 1e-9 && worst_e <= 1e-9, "1 - F " + num(worst_f) + ", |S - ln 4| " + num(worst_e)};
}

Outcome imperfect_observation() {
  const auto input = DensityOperator::from_pure(TensorSpace::single(2, "L"), ComplexVector::Unit(2, 0));
  std::vector<double> overlaps;
  for (int i = 0; i <= 10; ++i) overlaps.push_back(0.1 * i);
  const auto rows = recovery_fidelity_vs_overlap(bit_flip_overlap_template(input), overlaps);
  double worst = 0.0;
  bool decreasing = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    worst = std::max(worst, std::abs(rows[i].erasure_entropy - h2(0.5 * (1.0 + overlaps[i]))));
    if (i > 0 && !(rows[i].fidelity < rows[i - 1].fidelity)) decreasing = false;
  }
  return {worst <= 1e-9 && decreasing && rows.size() == overlaps.size(),
          "entropy defect " + num(worst) + ", F(0)=" + num(rows.front().fidelity) +
              " F(1)=" + num(rows.back().fidelity) + (decreasing ? "" : ", not strictly decreasing")};
}

Outcome pure_collapse() {
  Rng rng(kSeed + 5);
  const auto space = TensorSpace::bipartite(2, 2);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const ComplexVector psi = random_pure(4, rng);
    const auto r = relative_entropy_of_entanglement(DensityOperator::from_pure(space, psi));
    worst = std::max(worst, std::abs(r.value - pure_pair_entropy(psi)));
  }
  ComplexVector bell = ComplexVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const double bell_err =
      std::abs(relative_entropy_of_entanglement(DensityOperator::from_pure(space, bell)).value - std::log(2.0));
  return {worst <= 1e-3 && bell_err <= 1e-3, "max error " + num(worst) + ", Bell error " + num(bell_err)};
}

Outcome separable_zero() {
  Rng rng(kSeed + 6);
  const auto space = TensorSpace::bipartite(2, 2);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto mix = random_separable(2, 2, 1 + static_cast<std::size_t>(i % 6), rng);
    worst = std::max(worst, relative_entropy_of_entanglement(mix.to_density(space)).value);
  }
  return {worst <= 1e-4, "max E_RE " + num(worst)};
}

Outcome single_shot_gap() {
  const auto space = TensorSpace::bipartite(2, 2);
  auto state = [](double b2) {
    ComplexVector psi = ComplexVector::Zero(4);
    psi(0) = std::sqrt(1.0 - b2);
    psi(3) = std::sqrt(b2);
    return psi;
  };
  bool ok = true;
  double min_gap = std::numeric_limits<double>::infinity(), last_gap = 0.0;
  for (int k = 1; k <= 9; ++k) {
    const double b2 = 0.05 * k;
    const ComplexVector psi = state(b2);
    const auto rho = DensityOperator::from_pure(space, psi);
    const double p = single_shot_probability(psi, space);
    const double bound = purification_bound(rho, 2, relative_entropy_of_entanglement(rho));
    const double gap = bound - p;
    ok = ok && std::abs(p - 2.0 * b2) <= 1e-12 && gap > 0.0;
    // Closed-form bound: h2(b^2) / ln 2.
    ok = ok && std::abs(bound - h2(b2) / std::log(2.0)) <= 1e-3;
    last_gap = gap;
    min_gap = std::min(min_gap, gap);
  }
  const ComplexVector half = state(0.5);
  const auto rho = DensityOperator::from_pure(space, half);
  const double p = single_shot_probability(half, space);
  const double bound = purification_bound(rho, 2, relative_entropy_of_entanglement(rho));
  ok = ok && std::abs(p - 1.0) <= 1e-6 && std::abs(bound - 1.0) <= 1e-6 && bound - p < last_gap;
  return {ok, "smallest gap " + num(min_gap) + ", gap at 0.45 " + num(last_gap) + ", at b^2=0.5 p=" + num(p) +
                  " bound=" + num(bound)};
}

Outcome measure_ordering() {
  Rng rng(kSeed + 8);
  const auto space = TensorSpace::bipartite(2, 2);
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 20; ++i) {
    const auto rho = random_density(space, rng, 2 + static_cast<std::size_t>(i % 3));
    const double ec = entanglement_of_creation(rho).value;
    const double er = relative_entropy_of_entanglement(rho).value;
    worst = std::min(worst, ec + 1e-3 - er);
  }
  double pure_err = 0.0;
  for (int i = 0; i < 5; ++i) {
    const ComplexVector psi = random_pure(4, rng);
    const auto rho = DensityOperator::from_pure(space, psi);
    const double s = pure_pair_entropy(psi);
    pure_err = std::max({pure_err, std::abs(entanglement_of_creation(rho).value - s),
                         std::abs(relative_entropy_of_entanglement(rho).value - s)});
  }
  return {worst >= 0.0 && pure_err <= 1e-3,
          "min (E_C + 1e-3 - E_RE) " + num(worst) + ", pure error " + num(pure_err)};
}

Outcome thermalization() {
  Rng rng(kSeed + 9);
  double worst_td = 0.0;
  bool ok = true;
  for (int i = 0; i < 6; ++i) {
    const std::size_t d = 2 + static_cast<std::size_t>(i % 2);
    const auto rho = random_density(TensorSpace::single(d), rng);
    const auto h = random_hamiltonian(d, rng);
    const auto trace = thermalize(rho, h, 0.5, 200, 1e-6);
    for (std::size_t k = 1; k < trace.steps.size(); ++k)
      ok = ok && trace.steps[k].relative_entropy <= trace.steps[k - 1].relative_entropy + 1e-12;
    const double td = trace.steps.back().trace_distance;
    ok = ok && td <= 1e-6 && trace.steps_taken() <= 200;
    worst_td = std::max(worst_td, td);
  }
  return {ok, "worst final trace distance " + num(worst_td)};
}

Outcome schumacher() {
  const auto q = TensorSpace::single(2);
  const double pure = schumacher_rate(DensityOperator::from_pure(q, ComplexVector::Unit(2, 0)), 2);
  const double mixed = schumacher_rate(DensityOperator::maximally_mixed(q), 2);
  RealVector p(2);
  p << 0.25, 0.75;
  const double diag = schumacher_rate(DensityOperator::diagonal(q, p), 2);
  const double want = h2(0.25) / std::log(2.0);
  const bool ok = std::abs(pure) <= 1e-9 && std::abs(mixed - 1.0) <= 1e-9 && std::abs(diag - want) <= 1e-9;
  return {ok, "pure " + num(pure) + ", mixed " + num(mixed) + ", diag(0.25,0.75) " + num(diag)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"landauer inequality", 10, landauer},
      {"free-energy identity", 10, free_energy_identity},
      {"classical demon ledger", 1, classical_ledger},
      {"quantum EC saturation", 5, qec_saturation},
      {"imperfect observation", 10, imperfect_observation},
      {"pure-state E_RE collapse", 60, pure_collapse},
      {"separable zero", 60, separable_zero},
      {"single-shot gap", 10, single_shot_gap},
      {"measure ordering", 120, measure_ordering},
      {"thermalization", 5, thermalization},
      {"schumacher rate", 1, schumacher},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.pass && secs <= c.budget_s;
    if (!pass) ++failed;
    std::printf("[%s] %2zu %-26s %s (%.2fs, budget %.0fs)\n", pass ? "PASS" : "FAIL", i + 1, c.name,
                o.detail.c_str(), secs, c.budget_s);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
