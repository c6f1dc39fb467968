// Python module erasure_lab._core. Matrices cross the boundary as complex
// numpy arrays; reports come back as plain dicts built from the JSON encoders.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "erasure_lab/demon.hpp"
#include "erasure_lab/entanglement.hpp"
#include "erasure_lab/errors.hpp"
#include "erasure_lab/io.hpp"
#include "erasure_lab/thermo.hpp"

namespace py = pybind11;
using namespace erasure_lab;

namespace {

py::object to_python(const io::Json& j) {
  switch (j.type()) {
    case io::Json::value_t::null: return py::none();
    case io::Json::value_t::boolean: return py::bool_(j.get<bool>());
    case io::Json::value_t::number_integer: return py::int_(j.get<long long>());
    case io::Json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
    case io::Json::value_t::number_float: return py::float_(j.get<double>());
    case io::Json::value_t::string: return py::str(j.get<std::string>());
    case io::Json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(to_python(v));
      return out;
    }
    case io::Json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it) out[py::str(it.key())] = to_python(it.value());
      return out;
    }
    default: return py::none();
  }
}

TensorSpace space_of(const ComplexMatrix& m, const std::optional<std::vector<std::size_t>>& dims) {
  if (!dims) return TensorSpace::single(static_cast<std::size_t>(m.rows()));
  std::vector<TensorSpace::Factor> f;
  for (std::size_t i = 0; i < dims->size(); ++i) f.push_back({std::string(1, static_cast<char>('A' + i)), (*dims)[i]});
  return TensorSpace(std::move(f));
}

DensityOperator density(const ComplexMatrix& m, const std::optional<std::vector<std::size_t>>& dims = std::nullopt) {
  return DensityOperator(space_of(m, dims), m);
}

SolverOptions solver(double gap_tol, int max_iter, std::uint64_t seed) {
  SolverOptions o;
  o.gap_tol = gap_tol;
  o.max_iter = max_iter;
  o.seed = seed;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Entropy bookkeeping for erasure, error correction and entanglement (natural-log units)";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<SupportError>(m, "SupportError", PyExc_ValueError);
  py::register_exception<UnsupportedScenarioError>(m, "UnsupportedScenarioError", PyExc_NotImplementedError);

  // entropy
  m.def(
      "von_neumann_entropy", [](const ComplexMatrix& rho) { return von_neumann_entropy(density(rho)).nats(); },
      py::arg("rho"));
  m.def(
      "relative_entropy",
      [](const ComplexMatrix& rho, const ComplexMatrix& sigma) {
        return relative_entropy(density(rho), density(sigma)).nats();
      },
      py::arg("rho"), py::arg("sigma"), "S(rho||sigma); inf when the support condition fails");
  m.def(
      "mutual_information",
      [](const ComplexMatrix& rho, std::size_t dim_a, std::size_t dim_b) {
        return mutual_information(DensityOperator(TensorSpace::bipartite(dim_a, dim_b), rho), {{"A"}, {"B"}}).nats();
      },
      py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"));
  m.def("binary_entropy", [](double x) { return binary_entropy(x).nats(); }, py::arg("x"));
  m.def(
      "partial_trace",
      [](const ComplexMatrix& mat, const std::vector<std::size_t>& dims, const std::vector<bool>& keep) {
        return partial_trace(mat, dims, keep);
      },
      py::arg("m"), py::arg("dims"), py::arg("keep"));

  // thermo
  m.def(
      "gibbs_state", [](const ComplexMatrix& h, double beta) { return gibbs_state(HamiltonianSpec(h, beta)).matrix(); },
      py::arg("hamiltonian"), py::arg("beta"));
  m.def(
      "free_energy",
      [](const ComplexMatrix& rho, const ComplexMatrix& h, double beta) {
        return free_energy(density(rho), HamiltonianSpec(h, beta));
      },
      py::arg("rho"), py::arg("hamiltonian"), py::arg("beta"));
  m.def(
      "erasure_entropy",
      [](const ComplexMatrix& rho, const ComplexMatrix& h, double beta, std::optional<double> info_gain) {
        const auto app = density(rho);
        const EntropyValue gain = info_gain ? EntropyValue(*info_gain) : von_neumann_entropy(app);
        return to_python(io::to_json(erasure_entropy(app, HamiltonianSpec(h, beta), gain)));
      },
      py::arg("rho"), py::arg("hamiltonian"), py::arg("beta"), py::arg("info_gain") = py::none());
  m.def(
      "thermalize",
      [](const ComplexMatrix& rho, const ComplexMatrix& h, double beta, double swap_fraction, int max_steps,
         double tol) {
        return to_python(io::to_json(thermalize(density(rho), HamiltonianSpec(h, beta), swap_fraction, max_steps, tol)));
      },
      py::arg("rho"), py::arg("hamiltonian"), py::arg("beta"), py::arg("swap_fraction") = 0.5,
      py::arg("max_steps") = 200, py::arg("tol") = 1e-6);

  // demon
  m.def(
      "classical_cycle",
      [](double p, double temperature) { return to_python(io::to_json(classical_cycle(p, temperature))); },
      py::arg("error_probability") = 0.5, py::arg("temperature") = 1.0);
  m.def(
      "bit_flip_cycle",
      [](const ComplexMatrix& logical) {
        return to_python(io::to_json(qec_cycle(bit_flip_scenario(density(logical)))));
      },
      py::arg("logical_input"), "three-qubit bit-flip code with four equiprobable errors");
  m.def(
      "recovery_fidelity_vs_overlap",
      [](const ComplexMatrix& logical, const std::vector<double>& overlaps) {
        return to_python(
            io::to_json(recovery_fidelity_vs_overlap(bit_flip_overlap_template(density(logical)), overlaps)));
      },
      py::arg("logical_input"), py::arg("overlaps"));

  // entanglement
  m.def(
      "entropy_of_entanglement",
      [](const ComplexVector& psi, std::size_t dim_a, std::size_t dim_b) {
        return entropy_of_entanglement(psi, TensorSpace::bipartite(dim_a, dim_b)).nats();
      },
      py::arg("psi"), py::arg("dim_a"), py::arg("dim_b"));
  m.def(
      "relative_entropy_of_entanglement",
      [](const ComplexMatrix& rho, std::size_t dim_a, std::size_t dim_b, double gap_tol, int max_iter,
         std::uint64_t seed) {
        const auto r = relative_entropy_of_entanglement(DensityOperator(TensorSpace::bipartite(dim_a, dim_b), rho),
                                                        solver(gap_tol, max_iter, seed));
        py::dict out = to_python(io::to_json(r));
        out["closest_separable"] = r.argmin.assemble();
        return out;
      },
      py::arg("rho"), py::arg("dim_a") = 2, py::arg("dim_b") = 2, py::arg("gap_tol") = 1e-5,
      py::arg("max_iter") = 2000, py::arg("seed") = 20240601);
  m.def(
      "entanglement_of_creation",
      [](const ComplexMatrix& rho, std::size_t dim_a, std::size_t dim_b, std::uint64_t seed) {
        SolverOptions o;
        o.seed = seed;
        return to_python(
            io::to_json(entanglement_of_creation(DensityOperator(TensorSpace::bipartite(dim_a, dim_b), rho), o)));
      },
      py::arg("rho"), py::arg("dim_a") = 2, py::arg("dim_b") = 2, py::arg("seed") = 20240601);
  m.def(
      "single_shot_probability",
      [](const ComplexVector& psi) { return single_shot_probability(psi, TensorSpace::bipartite(2, 2)); },
      py::arg("psi"));
  m.def(
      "schumacher_rate", [](const ComplexMatrix& rho, int n) { return schumacher_rate(density(rho), n); },
      py::arg("rho"), py::arg("n") = 2);
}
