#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "commands.hpp"

namespace fs = std::filesystem;
using erasure_lab::cli::main_entry;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "erasure_lab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string scenario(const std::string& name) { return std::string(ERASURE_LAB_SCENARIO_DIR) + "/" + name; }

fs::path scratch() {
  const fs::path p = fs::temp_directory_path() / "erasure_lab_cli_tests";
  fs::create_directories(p);
  return p;
}

fs::path write_file(const std::string& name, const std::string& body) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << body;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

struct NoSeedEnv {
  NoSeedEnv() { unsetenv("ERASURE_LAB_SEED"); }
};

}  // namespace

TEST_CASE_FIXTURE(NoSeedEnv, "usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"erasure"}).code == 2);
  CHECK(run({"erasure", "--scenario", scenario("erasure_qubit.json"), "--format", "xml"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE_FIXTURE(NoSeedEnv, "erasure writes a JSON report") {
  const fs::path out = scratch() / "erasure.json";
  const auto r = run({"erasure", "--scenario", scenario("erasure_qubit.json"), "--out", out.string()});
  CHECK(r.code == 0);
  CHECK(!r.out.empty());
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j.contains("thermalization"));
  const fs::path csv = scratch() / "erasure.csv";
  CHECK(run({"erasure", "--scenario", scenario("erasure_qubit.json"), "--out", csv.string(), "--format", "csv"}).code ==
        0);
  CHECK(fs::exists(scratch() / "erasure.collision.csv"));
}

TEST_CASE_FIXTURE(NoSeedEnv, "schema problems exit with 2 and name the field") {
  const auto bad = write_file("bad_erasure.json", R"({"version": 1, "apparatus": {"diagonal": [0.5, 0.5]},
    "hamiltonian": {"energies": [0, 1]}})");
  const auto r = run({"erasure", "--scenario", bad.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("/hamiltonian/beta") != std::string::npos);

  const auto wrong = run({"demon", "--scenario", scenario("erasure_qubit.json")});
  CHECK(wrong.code == 2);
  CHECK(run({"erasure", "--scenario", (scratch() / "missing.json").string()}).code == 2);
  CHECK(run({"erasure", "--scenario", write_file("garbled.json", "{oops").string()}).code == 2);
}

TEST_CASE_FIXTURE(NoSeedEnv, "demon modes write CSV ledgers with the resolved seed") {
  for (const char* name : {"demon_classical.json", "demon_qec.json", "demon_qec_custom.json", "demon_sweep.json"}) {
    CAPTURE(name);
    const fs::path out = scratch() / (std::string(name) + ".csv");
    const auto r = run({"demon", "--scenario", scenario(name), "--out", out.string(), "--seed", "5"});
    CHECK(r.code == 0);
    CHECK(slurp(out).rfind("# seed=5\n", 0) == 0);
  }
}

TEST_CASE_FIXTURE(NoSeedEnv, "unsupported demon scenarios exit with 2") {
  const auto p = write_file("overlapping.json", R"({"version": 1, "mode": "qec", "code": "bit_flip",
    "apparatus_overlap": 0.3})");
  CHECK(run({"demon", "--scenario", p.string()}).code == 2);
}

TEST_CASE_FIXTURE(NoSeedEnv, "seed precedence") {
  using erasure_lab::cli::resolve_seed;
  CHECK(resolve_seed(std::nullopt, std::nullopt) == erasure_lab::cli::kDefaultSeed);
  CHECK(resolve_seed(std::nullopt, 3) == 3);
  CHECK(resolve_seed(4, 3) == 4);
  setenv("ERASURE_LAB_SEED", "9", 1);
  CHECK(resolve_seed(4, 3) == 9);
  setenv("ERASURE_LAB_SEED", "nine", 1);
  CHECK_THROWS(resolve_seed(4, 3));
  CHECK(run({"demon", "--scenario", scenario("demon_classical.json")}).code == 2);
  unsetenv("ERASURE_LAB_SEED");
}

TEST_CASE_FIXTURE(NoSeedEnv, "entanglement report for a Bell pair") {
  const fs::path out = scratch() / "bell.json";
  const auto r = run({"entanglement", "--scenario", scenario("entanglement_bell.json"), "--out", out.string()});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j.dump().find("converged") != std::string::npos);
  CHECK(fs::exists(scratch() / "bell.convergence.csv"));

  const auto big = write_file("big.json", R"({"version": 1, "state": {"maximally_mixed": 25, "dims": [5, 5]}})");
  CHECK(run({"entanglement", "--scenario", big.string()}).code == 2);
}

TEST_CASE_FIXTURE(NoSeedEnv, "selftest passes") {
  const auto r = run({"selftest"});
  CHECK(r.code == 0);
  CHECK(r.out.find("all invariant families passed") != std::string::npos);
}

TEST_CASE_FIXTURE(NoSeedEnv, "reports are deterministic for a fixed seed") {
  const fs::path a = scratch() / "self_a.json", b = scratch() / "self_b.json";
  CHECK(run({"selftest", "--out", a.string(), "--format", "json", "--seed", "17"}).code == 0);
  CHECK(run({"selftest", "--out", b.string(), "--format", "json", "--seed", "17"}).code == 0);
  CHECK(slurp(a) == slurp(b));
  const auto j = nlohmann::json::parse(slurp(a));
  CHECK(j["seed"] == 17);
  CHECK(j["families"].size() >= 4);

  const fs::path w1 = scratch() / "werner_a.json", w2 = scratch() / "werner_b.json";
  CHECK(run({"entanglement", "--scenario", scenario("entanglement_werner.json"), "--out", w1.string()}).code == 0);
  CHECK(run({"entanglement", "--scenario", scenario("entanglement_werner.json"), "--out", w2.string()}).code == 0);
  CHECK(slurp(w1) == slurp(w2));
}

TEST_CASE_FIXTURE(NoSeedEnv, "partially entangled payload reports the single-shot gap") {
  const fs::path out = scratch() / "partial.json";
  CHECK(run({"entanglement", "--scenario", scenario("entanglement_partial.json"), "--out", out.string()}).code == 0);
  const std::string body = slurp(out);
  CHECK(body.find("single_shot") != std::string::npos);
}
