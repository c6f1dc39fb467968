#include <doctest.h>

#include <sstream>

#include "erasure_lab/io.hpp"

using namespace erasure_lab;
using io::Json;

namespace {

std::string schema_path(const std::function<void()>& f) {
  try {
    f();
  } catch (const io::SchemaError& e) {
    return e.path();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("matrix and vector literals round-trip") {
  ComplexMatrix m(2, 2);
  m << Complex(1, 0), Complex(0, -2), Complex(0, 2), Complex(3, 0);
  const Json j = io::to_json(m);
  CHECK(j["dim"] == 2);
  CHECK((io::matrix_from_json(j) - m).norm() == 0.0);
  CHECK((io::matrix_from_json(Json::parse("[[1,2],[3,4]]")) - ComplexMatrix{{1, 2}, {3, 4}}).norm() == 0.0);

  ComplexVector v(3);
  v << Complex(1, 2), 0.5, Complex(0, -1);
  CHECK((io::vector_from_json(io::to_json(v)) - v).norm() == 0.0);
}

TEST_CASE("malformed literals report their location") {
  CHECK(schema_path([] { io::matrix_from_json(Json::parse("[[1,2],[3]]"), "/m"); }) == "/m/1");
  CHECK(schema_path([] { io::matrix_from_json(Json::parse(R"({"re": [[1]], "bogus": 1})"), "/m"); }) == "/m/bogus");
  CHECK(schema_path([] { io::vector_from_json(Json::parse(R"({"re": [1, 0], "im": [1]})"), "/v"); }) == "/v/im");
}

TEST_CASE("entropy literals") {
  CHECK(io::entropy_from_json(Json(0.5)).nats() == 0.5);
  CHECK(io::entropy_from_json(Json::parse(R"({"infinite": true})")).is_infinite());
  CHECK(io::to_json(EntropyValue::infinite())["infinite"] == true);
  CHECK_THROWS_AS(io::entropy_from_json(Json(-1.0)), io::SchemaError);
}

TEST_CASE("state literals") {
  const auto bell = io::state_from_json(
      Json::parse(R"({"pure": [0.7071067811865476, 0, 0, 0.7071067811865476], "dims": [2, 2], "labels": ["L", "R"]})"));
  CHECK(bell.space().labels() == std::vector<std::string>{"L", "R"});
  CHECK(bell.matrix()(0, 3).real() == doctest::Approx(0.5));
  CHECK(io::state_from_json(Json::parse(R"({"maximally_mixed": 3})")).dim() == 3);
  CHECK(schema_path([] { io::state_from_json(Json::parse(R"({"diagonal": [0.5, 0.5], "pure": [1, 0]})"), "/s"); }) ==
        "/s");
  CHECK(schema_path([] { io::state_from_json(Json::parse(R"({"diagonal": [0.5, 0.6]})"), "/s"); }) == "/s/diagonal");
  CHECK(schema_path([] { io::state_from_json(Json::parse(R"({"maximally_mixed": 4, "dims": [3, 2]})"), "/s"); }) ==
        "/s/dims");
}

TEST_CASE("scenario header") {
  CHECK_NOTHROW(io::parse_header(Json::parse(R"({"version": 1})"), "erasure"));
  CHECK(schema_path([] { io::parse_header(Json::parse(R"({"version": 2})"), "erasure"); }) == "/version");
  CHECK(schema_path([] { io::parse_header(Json::parse(R"({"version": 1, "command": "demon"})"), "erasure"); }) ==
        "/command");
  CHECK(io::parse_header(Json::parse(R"({"version": 1, "seed": 9})"), "demon").seed == 9u);
}

TEST_CASE("erasure scenario parsing") {
  const auto s = io::parse_erasure(Json::parse(R"({
    "version": 1,
    "apparatus": {"diagonal": [0.25, 0.75]},
    "hamiltonian": {"energies": [0, 1], "temperature": 2.0},
    "thermalize": {"max_steps": 10}
  })"));
  CHECK(s.hamiltonian.beta() == doctest::Approx(0.5));
  REQUIRE(s.thermalize.has_value());
  CHECK(s.thermalize->max_steps == 10);
  CHECK(s.thermalize->swap_fraction == 0.5);
  CHECK(schema_path([] {
          io::parse_erasure(Json::parse(R"({"version": 1, "apparatus": {"diagonal": [1, 0]},
            "hamiltonian": {"energies": [0, 1], "beta": 1, "temperature": 1}})"));
        }) == "/hamiltonian/beta");
  CHECK(schema_path([] {
          io::parse_erasure(Json::parse(R"({"version": 1, "apparatus": {"diagonal": [1, 0]},
            "hamiltonian": {"energies": [0, 1, 2], "beta": 1}})"));
        }) == "/hamiltonian/matrix");
  CHECK(schema_path([] {
          io::parse_erasure(Json::parse(R"({"version": 1, "apparatus": {"diagonal": [1, 0]},
            "hamiltonian": {"energies": [0, 1], "beta": 1}, "extra": 0})"));
        }) == "/extra");
}

TEST_CASE("demon scenario parsing") {
  const auto c = io::parse_demon(Json::parse(R"({"version": 1, "mode": "classical", "error_probability": 0.2})"));
  CHECK(c.mode == io::DemonScenario::Mode::classical);
  CHECK(c.error_probability == 0.2);

  const auto sweep = io::parse_demon(
      Json::parse(R"({"version": 1, "mode": "sweep", "input": {"pure": [1, 0]},
                      "overlaps": {"start": 0, "stop": 1, "step": 0.25}})"));
  CHECK(sweep.overlaps.size() == 5);
  CHECK(sweep.overlaps.back() == doctest::Approx(1.0));

  const auto custom = io::parse_demon(Json::parse(R"({
    "version": 1, "mode": "qec", "code": "custom", "input": {"pure": [1, 0]},
    "codewords": [[1, 0, 0, 0], [0, 0, 0, 1]],
    "errors": [{"op": "II", "weight": 0.5}, {"op": {"pauli": "XI"}, "weight": 0.5}]
  })"));
  REQUIRE(custom.qec.has_value());
  CHECK(custom.qec->errors.size() == 2);

  CHECK(schema_path([] { io::parse_demon(Json::parse(R"({"version": 1, "mode": "quantum"})")); }) == "/mode");
  CHECK(schema_path([] {
          io::parse_demon(Json::parse(R"({"version": 1, "mode": "sweep", "input": {"pure": [1, 0]},
                                          "overlaps": [0.5, 1.5]})"));
        }) == "/overlaps/1");
}

TEST_CASE("entanglement scenario parsing") {
  const auto s = io::parse_entanglement(Json::parse(R"({
    "version": 1, "state": {"maximally_mixed": 4, "dims": [2, 2]}, "n": 3,
    "solver": {"gap_tol": 1e-4, "max_iter": 10}
  })"));
  CHECK(s.n == 3);
  CHECK(s.solver.gap_tol == 1e-4);
  CHECK(s.solver.max_iter == 10);
  CHECK(schema_path([] {
          io::parse_entanglement(Json::parse(R"({"version": 1, "state": {"maximally_mixed": 4}})"));
        }) == "/state/dims");
  CHECK(schema_path([] {
          io::parse_entanglement(
              Json::parse(R"({"version": 1, "state": {"maximally_mixed": 4, "dims": [2, 2]}, "solver": {"tol": 1}})"));
        }) == "/solver/tol");
}

TEST_CASE("CSV writers carry the seed and a header row") {
  std::ostringstream os;
  io::write_ledger_csv(os, classical_cycle(0.5), 42);
  const std::string s = os.str();
  CHECK(s.rfind("# seed=42\n", 0) == 0);
  CHECK(s.find("step,name,dS_system,dS_apparatus,dS_garbage,dF,info_gain\n") != std::string::npos);
  std::size_t lines = 0;
  for (char c : s) lines += c == '\n';
  CHECK(lines == 2 + classical_cycle(0.5).steps.size());
}

TEST_CASE("report encodings") {
  const Json ledger = io::to_json(classical_cycle(0.5));
  CHECK(ledger["closed"] == true);
  CHECK(ledger["steps"].size() == 5);
  const Json mix = io::to_json(SeparableMixture::maximally_mixed(2, 2));
  CHECK(mix.is_object());
}
