#pragma once

// JSON and CSV encodings of states, reports and scenario files.
//
// Matrix literal:  {"re": [[...], ...], "im": [[...], ...]}  ("im" optional)
//                  or a plain nested array of reals.
// Vector literal:  {"re": [...], "im": [...]} or a plain array of reals.
// State literal:   exactly one of "density" (matrix), "pure" (vector),
//                  "diagonal" (probabilities), "maximally_mixed" (dimension),
//                  plus optional "dims" (factor dimensions) and "labels".

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "erasure_lab/demon.hpp"
#include "erasure_lab/entanglement.hpp"
#include "erasure_lab/errors.hpp"
#include "erasure_lab/thermo.hpp"

namespace erasure_lab::io {

using Json = nlohmann::json;

/// Schema violation; `path` is a JSON-pointer-like location such as /hamiltonian/beta.
class SchemaError : public InputError {
 public:
  SchemaError(std::string path, const std::string& message);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

Json to_json(const ComplexMatrix& m);
Json to_json(const ComplexVector& v);
Json to_json(const EntropyValue& e);
Json to_json(const TensorSpace& space);
Json to_json(const ErasureReport& r);
Json to_json(const CollisionTrace& t);
Json to_json(const EntropyLedger& ledger);
Json to_json(const QecCycleResult& r);
Json to_json(const std::vector<OverlapRow>& rows);
Json to_json(const SeparableMixture& m);
Json to_json(const EreResult& r);
Json to_json(const EocResult& r);
Json to_json(const PurificationReport& r);

ComplexMatrix matrix_from_json(const Json& j, const std::string& path = "");
ComplexVector vector_from_json(const Json& j, const std::string& path = "");
EntropyValue entropy_from_json(const Json& j, const std::string& path = "");
DensityOperator state_from_json(const Json& j, const std::string& path = "");

/// step,name,dS_system,dS_apparatus,dS_garbage,dF,info_gain
void write_ledger_csv(std::ostream& os, const EntropyLedger& ledger, std::optional<std::uint64_t> seed);
/// iteration,objective,gap
void write_convergence_csv(std::ostream& os, const std::vector<ConvergencePoint>& trace,
                           std::optional<std::uint64_t> seed);
/// overlap,fidelity,erasure_entropy,info_gain
void write_sweep_csv(std::ostream& os, const std::vector<OverlapRow>& rows, std::optional<std::uint64_t> seed);
/// step,trace_distance,relative_entropy
void write_collision_csv(std::ostream& os, const CollisionTrace& trace, std::optional<std::uint64_t> seed);

// ---------------------------------------------------------------------------
// Scenario files (version 1)

struct ErasureScenario {
  DensityOperator apparatus;
  HamiltonianSpec hamiltonian;
  std::optional<double> info_gain;  // defaults to S(apparatus)
  struct Thermalize {
    double swap_fraction = 0.5;
    int max_steps = 200;
    double tol = 1e-6;
  };
  std::optional<Thermalize> thermalize;
};

struct DemonScenario {
  enum class Mode { classical, qec, sweep };
  Mode mode = Mode::classical;
  double error_probability = 0.5;  // classical
  double temperature = 1.0;
  std::optional<QecScenario> qec;  // qec, and the template for sweep
  std::vector<double> overlaps;    // sweep
};

struct EntanglementScenario {
  DensityOperator state;
  int n = 2;
  SolverOptions solver;
  bool with_eoc = false;
};

struct ScenarioHeader {
  int version = 1;
  std::optional<std::string> command;
  std::optional<std::uint64_t> seed;
};

/// Parses a file into JSON; throws SchemaError on unreadable or malformed input.
Json load_json_file(const std::string& path);

ScenarioHeader parse_header(const Json& j, const std::string& expected_command);
ErasureScenario parse_erasure(const Json& j);
DemonScenario parse_demon(const Json& j);
EntanglementScenario parse_entanglement(const Json& j);

}  // namespace erasure_lab::io
