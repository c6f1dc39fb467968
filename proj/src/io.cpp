#include "erasure_lab/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

namespace erasure_lab::io {

SchemaError::SchemaError(std::string path, const std::string& message)
    : InputError((path.empty() ? std::string("/") : path) + ": " + message), path_(std::move(path)) {}

namespace {

// Round-trippable doubles; JSON has no infinities, so they never reach here.
Json real(double x) { return Json(x); }

Json real_rows(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(real(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json real_list(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(real(v(i)));
  return out;
}

double number_at(const Json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw SchemaError(path, "expected a finite number");
  return x;
}

const Json& member(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path + "/" + key, "required field is missing");
  return *it;
}

const Json* optional_member(const Json& j, const std::string& key) {
  const auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

double number_field(const Json& j, const std::string& key, const std::string& path) {
  return number_at(member(j, key, path), path + "/" + key);
}

double number_field_or(const Json& j, const std::string& key, double fallback, const std::string& path) {
  const Json* v = optional_member(j, key);
  return v ? number_at(*v, path + "/" + key) : fallback;
}

int int_field_or(const Json& j, const std::string& key, int fallback, const std::string& path) {
  const Json* v = optional_member(j, key);
  if (!v) return fallback;
  if (!v->is_number_integer()) throw SchemaError(path + "/" + key, "expected an integer");
  return v->get<int>();
}

void reject_unknown(const Json& j, const std::vector<std::string>& allowed, const std::string& path) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw SchemaError(path + "/" + key, "unknown field");
  }
}

Eigen::MatrixXd real_matrix(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw SchemaError(path, "expected a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = -1;
  Eigen::MatrixXd out;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    const std::string row_path = path + "/" + std::to_string(i);
    if (!row.is_array()) throw SchemaError(row_path, "expected an array");
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(row.size());
      out.resize(rows, cols);
    } else if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw SchemaError(row_path, "ragged matrix rows");
    }
    for (Eigen::Index k = 0; k < cols; ++k)
      out(i, k) = number_at(row[static_cast<std::size_t>(k)], row_path + "/" + std::to_string(k));
  }
  return out;
}

Eigen::VectorXd real_vector(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw SchemaError(path, "expected a nonempty array of numbers");
  Eigen::VectorXd out(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) out(static_cast<Eigen::Index>(i)) = number_at(j[i], path + "/" + std::to_string(i));
  return out;
}

std::size_t dimension_at(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 1) throw SchemaError(path, "expected a positive integer");
  return j.get<std::size_t>();
}

TensorSpace space_for(const Json& j, std::size_t dim, const std::string& path) {
  std::vector<std::size_t> dims{dim};
  if (const Json* d = optional_member(j, "dims")) {
    if (!d->is_array() || d->empty()) throw SchemaError(path + "/dims", "expected a nonempty array");
    dims.clear();
    std::size_t product = 1;
    for (std::size_t i = 0; i < d->size(); ++i) {
      dims.push_back(dimension_at((*d)[i], path + "/dims/" + std::to_string(i)));
      product *= dims.back();
    }
    if (product != dim)
      throw SchemaError(path + "/dims", "factor dimensions multiply to " + std::to_string(product) +
                                            ", state has dimension " + std::to_string(dim));
  }
  std::vector<std::string> labels;
  if (const Json* l = optional_member(j, "labels")) {
    if (!l->is_array() || l->size() != dims.size())
      throw SchemaError(path + "/labels", "expected one label per factor");
    for (std::size_t i = 0; i < l->size(); ++i) {
      if (!(*l)[i].is_string()) throw SchemaError(path + "/labels/" + std::to_string(i), "expected a string");
      labels.push_back((*l)[i].get<std::string>());
    }
  } else if (dims.size() == 1) {
    labels = {"S"};
  } else {
    for (std::size_t i = 0; i < dims.size(); ++i)
      labels.push_back(i < 26 ? std::string(1, static_cast<char>('A' + i)) : "F" + std::to_string(i));
  }
  std::vector<TensorSpace::Factor> factors;
  for (std::size_t i = 0; i < dims.size(); ++i) factors.push_back({labels[i], dims[i]});
  try {
    return TensorSpace(std::move(factors));
  } catch (const InputError& e) {
    throw SchemaError(path + "/labels", e.what());
  }
}

template <class F>
auto rethrow_at(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const InputError& e) {
    throw SchemaError(path, e.what());
  }
}

std::string comment_seed(std::optional<std::uint64_t> seed) {
  return seed ? "# seed=" + std::to_string(*seed) + "\n" : std::string();
}

std::ostream& precise(std::ostream& os) { return os << std::setprecision(17); }

}  // namespace

// ---------------------------------------------------------------------------
// Encoders

Json to_json(const ComplexMatrix& m) {
  return {{"dim", m.rows()}, {"re", real_rows(m.real())}, {"im", real_rows(m.imag())}};
}

Json to_json(const ComplexVector& v) { return {{"re", real_list(v.real())}, {"im", real_list(v.imag())}}; }

Json to_json(const EntropyValue& e) {
  if (e.is_infinite()) return {{"infinite", true}};
  return {{"nats", e.nats()}};
}

Json to_json(const TensorSpace& space) {
  Json out = Json::array();
  for (const auto& f : space.factors()) out.push_back({{"label", f.label}, {"dim", f.dim}});
  return out;
}

Json to_json(const ErasureReport& r) {
  return {{"delta_app", to_json(r.delta_app)},
          {"delta_res", r.delta_res},
          {"delta_total", r.delta_total},
          {"info_gain", to_json(r.info_gain)},
          {"landauer_satisfied", r.landauer_satisfied}};
}

Json to_json(const CollisionTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    Json row{{"step", s.step}, {"trace_distance", s.trace_distance}};
    if (std::isinf(s.relative_entropy))
      row["relative_entropy"] = {{"infinite", true}};
    else
      row["relative_entropy"] = s.relative_entropy;
    steps.push_back(std::move(row));
  }
  Json out{{"converged", t.converged}, {"steps_taken", t.steps_taken()}, {"monotone", t.monotone()},
           {"steps", std::move(steps)}};
  if (!t.steps.empty()) out["final_state"] = to_json(t.steps.back().apparatus.matrix());
  return out;
}

Json to_json(const EntropyLedger& ledger) {
  Json steps = Json::array();
  for (std::size_t i = 0; i < ledger.steps.size(); ++i) {
    const auto& s = ledger.steps[i];
    Json row{{"step", i + 1},           {"name", s.name},           {"ds_system", s.ds_system},
             {"ds_apparatus", s.ds_apparatus}, {"ds_joint", s.ds_joint}, {"ds_garbage", s.ds_garbage},
             {"df", s.df},              {"info_gain", s.info_gain}};
    if (!s.note.empty()) row["note"] = s.note;
    steps.push_back(std::move(row));
  }
  return {{"steps", std::move(steps)},
          {"totals",
           {{"ds_system", ledger.total_system()},
            {"ds_apparatus", ledger.total_apparatus()},
            {"ds_joint", ledger.total_joint()},
            {"ds_garbage", ledger.total_garbage()},
            {"info_gain", ledger.total_info_gain()}}},
          {"closed", ledger.closed()},
          {"satisfies_landauer", ledger.satisfies_landauer()}};
}

Json to_json(const QecCycleResult& r) {
  Json out{{"ledger", to_json(r.ledger)},
           {"recovered_state", to_json(r.recovered_state.matrix())},
           {"recovery_fidelity", r.recovery_fidelity},
           {"gc_entropy", r.gc_entropy},
           {"info_gain", r.info_gain}};
  if (r.total_entropy_before_trace) out["total_entropy_before_trace"] = *r.total_entropy_before_trace;
  return out;
}

Json to_json(const std::vector<OverlapRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows)
    out.push_back({{"overlap", r.overlap},
                   {"fidelity", r.fidelity},
                   {"erasure_entropy", r.erasure_entropy},
                   {"info_gain", r.info_gain}});
  return out;
}

Json to_json(const SeparableMixture& m) {
  Json terms = Json::array();
  for (const auto& t : m.terms())
    terms.push_back({{"weight", t.weight}, {"ket_a", to_json(t.ket_a)}, {"ket_b", to_json(t.ket_b)}});
  return {{"dim_a", m.dim_a()}, {"dim_b", m.dim_b()}, {"terms", std::move(terms)}};
}

Json to_json(const EreResult& r) {
  Json trace = Json::array();
  for (const auto& p : r.convergence) trace.push_back({p.iteration, p.objective, p.gap});
  return {{"value", r.value},
          {"status", to_string(r.status)},
          {"iterations", r.convergence.empty() ? 0 : r.convergence.back().iteration},
          {"final_gap", r.convergence.empty() ? 0.0 : r.convergence.back().gap},
          {"argmin", to_json(r.argmin)},
          {"convergence_columns", {"iteration", "objective", "gap"}},
          {"convergence", std::move(trace)}};
}

Json to_json(const EocResult& r) {
  Json parts = Json::array();
  for (const auto& c : r.decomposition) parts.push_back({{"weight", c.weight}, {"state", to_json(c.state)}});
  return {{"value", r.value}, {"status", to_string(r.status)}, {"decomposition", std::move(parts)}};
}

Json to_json(const PurificationReport& r) {
  Json out{{"n", r.n}, {"ensemble_bound", r.ensemble_bound}, {"schumacher_rate", r.schumacher_rate}};
  out["single_shot"] = r.single_shot ? Json(*r.single_shot) : Json(nullptr);
  return out;
}

// ---------------------------------------------------------------------------
// Decoders

ComplexMatrix matrix_from_json(const Json& j, const std::string& path) {
  if (j.is_array()) return real_matrix(j, path).cast<Complex>();
  if (!j.is_object()) throw SchemaError(path, "expected a matrix literal");
  reject_unknown(j, {"dim", "re", "im"}, path);
  const Eigen::MatrixXd re = real_matrix(member(j, "re", path), path + "/re");
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(re.rows(), re.cols());
  if (const Json* v = optional_member(j, "im")) {
    im = real_matrix(*v, path + "/im");
    if (im.rows() != re.rows() || im.cols() != re.cols()) throw SchemaError(path + "/im", "shape differs from re");
  }
  if (const Json* d = optional_member(j, "dim")) {
    if (dimension_at(*d, path + "/dim") != static_cast<std::size_t>(re.rows()))
      throw SchemaError(path + "/dim", "does not match the number of rows");
  }
  ComplexMatrix out(re.rows(), re.cols());
  out.real() = re;
  out.imag() = im;
  return out;
}

ComplexVector vector_from_json(const Json& j, const std::string& path) {
  if (j.is_array()) return real_vector(j, path).cast<Complex>();
  if (!j.is_object()) throw SchemaError(path, "expected a vector literal");
  reject_unknown(j, {"re", "im"}, path);
  const Eigen::VectorXd re = real_vector(member(j, "re", path), path + "/re");
  Eigen::VectorXd im = Eigen::VectorXd::Zero(re.size());
  if (const Json* v = optional_member(j, "im")) {
    im = real_vector(*v, path + "/im");
    if (im.size() != re.size()) throw SchemaError(path + "/im", "length differs from re");
  }
  ComplexVector out(re.size());
  out.real() = re;
  out.imag() = im;
  return out;
}

EntropyValue entropy_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return rethrow_at(path, [&] { return EntropyValue(number_at(j, path)); });
  if (!j.is_object()) throw SchemaError(path, "expected an entropy literal");
  if (const Json* inf = optional_member(j, "infinite"); inf && inf->is_boolean() && inf->get<bool>())
    return EntropyValue::infinite();
  return rethrow_at(path, [&] { return EntropyValue(number_field(j, "nats", path)); });
}

DensityOperator state_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected a state literal");
  reject_unknown(j, {"density", "pure", "diagonal", "maximally_mixed", "dims", "labels"}, path);
  int kinds = 0;
  for (const char* k : {"density", "pure", "diagonal", "maximally_mixed"}) kinds += j.contains(k) ? 1 : 0;
  if (kinds != 1)
    throw SchemaError(path, "give exactly one of density, pure, diagonal, maximally_mixed");

  if (const Json* m = optional_member(j, "density")) {
    const ComplexMatrix rho = matrix_from_json(*m, path + "/density");
    if (rho.rows() != rho.cols()) throw SchemaError(path + "/density", "matrix is not square");
    const TensorSpace space = space_for(j, static_cast<std::size_t>(rho.rows()), path);
    return rethrow_at(path + "/density", [&] { return DensityOperator(space, rho); });
  }
  if (const Json* v = optional_member(j, "pure")) {
    const ComplexVector psi = vector_from_json(*v, path + "/pure");
    const TensorSpace space = space_for(j, static_cast<std::size_t>(psi.size()), path);
    return rethrow_at(path + "/pure", [&] { return DensityOperator::from_pure(space, psi); });
  }
  if (const Json* p = optional_member(j, "diagonal")) {
    const Eigen::VectorXd probs = real_vector(*p, path + "/diagonal");
    const TensorSpace space = space_for(j, static_cast<std::size_t>(probs.size()), path);
    return rethrow_at(path + "/diagonal", [&] { return DensityOperator::diagonal(space, probs); });
  }
  const std::size_t dim = dimension_at(j.at("maximally_mixed"), path + "/maximally_mixed");
  return DensityOperator::maximally_mixed(space_for(j, dim, path));
}

// ---------------------------------------------------------------------------
// CSV

void write_ledger_csv(std::ostream& os, const EntropyLedger& ledger, std::optional<std::uint64_t> seed) {
  os << comment_seed(seed) << "step,name,dS_system,dS_apparatus,dS_garbage,dF,info_gain\n";
  precise(os);
  for (std::size_t i = 0; i < ledger.steps.size(); ++i) {
    const auto& s = ledger.steps[i];
    os << i + 1 << ',' << s.name << ',' << s.ds_system << ',' << s.ds_apparatus << ',' << s.ds_garbage << ','
       << s.df << ',' << s.info_gain << '\n';
  }
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergencePoint>& trace,
                           std::optional<std::uint64_t> seed) {
  os << comment_seed(seed) << "iteration,objective,gap\n";
  precise(os);
  for (const auto& p : trace) os << p.iteration << ',' << p.objective << ',' << p.gap << '\n';
}

void write_sweep_csv(std::ostream& os, const std::vector<OverlapRow>& rows, std::optional<std::uint64_t> seed) {
  os << comment_seed(seed) << "overlap,fidelity,erasure_entropy,info_gain\n";
  precise(os);
  for (const auto& r : rows) os << r.overlap << ',' << r.fidelity << ',' << r.erasure_entropy << ',' << r.info_gain << '\n';
}

void write_collision_csv(std::ostream& os, const CollisionTrace& trace, std::optional<std::uint64_t> seed) {
  os << comment_seed(seed) << "step,trace_distance,relative_entropy\n";
  precise(os);
  for (const auto& s : trace.steps) os << s.step << ',' << s.trace_distance << ',' << s.relative_entropy << '\n';
}

// ---------------------------------------------------------------------------
// Scenarios

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("", "cannot open scenario file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError("", std::string("malformed JSON: ") + e.what());
  }
}

ScenarioHeader parse_header(const Json& j, const std::string& expected_command) {
  if (!j.is_object()) throw SchemaError("", "scenario must be a JSON object");
  ScenarioHeader h;
  const Json& version = member(j, "version", "");
  if (!version.is_number_integer() || version.get<int>() != 1)
    throw SchemaError("/version", "only version 1 is supported");
  if (const Json* c = optional_member(j, "command")) {
    if (!c->is_string()) throw SchemaError("/command", "expected a string");
    h.command = c->get<std::string>();
    if (*h.command != expected_command)
      throw SchemaError("/command", "scenario is for '" + *h.command + "', not '" + expected_command + "'");
  }
  if (const Json* s = optional_member(j, "seed")) {
    if (!s->is_number_unsigned()) throw SchemaError("/seed", "expected a nonnegative integer");
    h.seed = s->get<std::uint64_t>();
  }
  return h;
}

namespace {

HamiltonianSpec hamiltonian_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  reject_unknown(j, {"matrix", "beta", "temperature", "energies"}, path);
  const bool has_beta = j.contains("beta"), has_t = j.contains("temperature");
  if (has_beta == has_t) throw SchemaError(path + "/beta", "give exactly one of beta, temperature");
  const double beta = has_beta ? number_field(j, "beta", path) : 1.0 / number_field(j, "temperature", path);
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw SchemaError(path + (has_beta ? "/beta" : "/temperature"), "must be positive");
  ComplexMatrix h;
  if (const Json* m = optional_member(j, "matrix")) {
    if (j.contains("energies")) throw SchemaError(path + "/energies", "give either matrix or energies");
    h = matrix_from_json(*m, path + "/matrix");
  } else if (const Json* e = optional_member(j, "energies")) {
    h = real_vector(*e, path + "/energies").cast<Complex>().asDiagonal();
  } else {
    throw SchemaError(path + "/matrix", "required field is missing");
  }
  if (h.rows() != h.cols()) throw SchemaError(path + "/matrix", "matrix is not square");
  return rethrow_at(path + "/matrix", [&] { return HamiltonianSpec(h, beta); });
}

ComplexMatrix operator_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    return rethrow_at(path, [&] { return pauli_string(j.get<std::string>()); });
  }
  if (j.is_object() && j.contains("pauli")) {
    const Json& p = j.at("pauli");
    if (!p.is_string()) throw SchemaError(path + "/pauli", "expected a Pauli string such as \"XII\"");
    return rethrow_at(path + "/pauli", [&] { return pauli_string(p.get<std::string>()); });
  }
  return matrix_from_json(j, path);
}

std::vector<double> overlap_list(const Json& j, const std::string& path) {
  if (j.is_array()) {
    const Eigen::VectorXd v = real_vector(j, path);
    return {v.data(), v.data() + v.size()};
  }
  if (!j.is_object()) throw SchemaError(path, "expected an array or {start, stop, step}");
  reject_unknown(j, {"start", "stop", "step"}, path);
  const double start = number_field(j, "start", path), stop = number_field(j, "stop", path);
  const double step = number_field(j, "step", path);
  if (!(step > 0.0)) throw SchemaError(path + "/step", "must be positive");
  if (stop < start) throw SchemaError(path + "/stop", "must not be below start");
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  if (count > 100000) throw SchemaError(path + "/step", "too many sweep points");
  for (long i = 0; i <= count; ++i) out.push_back(std::min(stop, start + static_cast<double>(i) * step));
  return out;
}

DensityOperator logical_input(const Json& j, const std::string& key) {
  if (const Json* in = optional_member(j, key)) return state_from_json(*in, "/" + key);
  return DensityOperator::maximally_mixed(TensorSpace::single(2, "L"));
}

QecScenario qec_from_json(const Json& j) {
  std::string code = "custom";
  if (const Json* c = optional_member(j, "code")) {
    if (!c->is_string()) throw SchemaError("/code", "expected a string");
    code = c->get<std::string>();
  }
  const DensityOperator input = logical_input(j, "input");
  QecScenario s;
  if (code == "bit_flip") {
    s = rethrow_at("/input", [&] { return bit_flip_scenario(input); });
  } else if (code == "bit_flip_two_errors") {
    s = rethrow_at("/input", [&] { return bit_flip_overlap_template(input); });
  } else if (code == "custom") {
    s.input_state = input;
    const Json& words = member(j, "codewords", "");
    if (!words.is_array() || words.empty()) throw SchemaError("/codewords", "expected a nonempty array");
    for (std::size_t i = 0; i < words.size(); ++i)
      s.codewords.push_back(vector_from_json(words[i], "/codewords/" + std::to_string(i)));
    const Json& errs = member(j, "errors", "");
    if (!errs.is_array() || errs.empty()) throw SchemaError("/errors", "expected a nonempty array");
    for (std::size_t i = 0; i < errs.size(); ++i) {
      const std::string p = "/errors/" + std::to_string(i);
      reject_unknown(errs[i], {"op", "weight"}, p);
      s.errors.push_back({operator_from_json(member(errs[i], "op", p), p + "/op"), number_field(errs[i], "weight", p)});
    }
    s.apparatus_states = QecScenario::symmetric_apparatus_states(s.errors.size(), 0.0);
  } else {
    throw SchemaError("/code", "unknown code '" + code + "' (bit_flip, bit_flip_two_errors, custom)");
  }
  s.temperature = number_field_or(j, "temperature", 1.0, "");
  const double a = number_field_or(j, "apparatus_overlap", 0.0, "");
  if (const Json* states = optional_member(j, "apparatus_states")) {
    if (!states->is_array()) throw SchemaError("/apparatus_states", "expected an array");
    s.apparatus_states.clear();
    for (std::size_t i = 0; i < states->size(); ++i)
      s.apparatus_states.push_back(vector_from_json((*states)[i], "/apparatus_states/" + std::to_string(i)));
    s.apparatus_overlap = a;
  } else if (a != 0.0) {
    if (!(a >= 0.0 && a <= 1.0)) throw SchemaError("/apparatus_overlap", "must lie in [0, 1]");
    s.apparatus_states = QecScenario::symmetric_apparatus_states(s.errors.size(), a);
    s.apparatus_overlap = a;
  }
  if (const Json* r = optional_member(j, "ready_state")) s.ready_state = vector_from_json(*r, "/ready_state");
  rethrow_at("", [&] {
    s.validate();
    return 0;
  });
  return s;
}

}  // namespace

ErasureScenario parse_erasure(const Json& j) {
  parse_header(j, "erasure");
  reject_unknown(j, {"version", "command", "seed", "apparatus", "hamiltonian", "info_gain", "thermalize"}, "");
  DensityOperator rho = state_from_json(member(j, "apparatus", ""), "/apparatus");
  HamiltonianSpec h = hamiltonian_from_json(member(j, "hamiltonian", ""), "/hamiltonian");
  if (h.dim() != rho.dim())
    throw SchemaError("/hamiltonian/matrix", "dimension " + std::to_string(h.dim()) +
                                                 " does not match the apparatus dimension " + std::to_string(rho.dim()));
  ErasureScenario s{std::move(rho), std::move(h), std::nullopt, std::nullopt};
  if (const Json* g = optional_member(j, "info_gain")) {
    const double x = number_at(*g, "/info_gain");
    if (x < 0.0) throw SchemaError("/info_gain", "must be nonnegative");
    s.info_gain = x;
  }
  if (const Json* t = optional_member(j, "thermalize")) {
    reject_unknown(*t, {"swap_fraction", "max_steps", "tol"}, "/thermalize");
    ErasureScenario::Thermalize th;
    th.swap_fraction = number_field_or(*t, "swap_fraction", th.swap_fraction, "/thermalize");
    th.max_steps = int_field_or(*t, "max_steps", th.max_steps, "/thermalize");
    th.tol = number_field_or(*t, "tol", th.tol, "/thermalize");
    if (!(th.swap_fraction > 0.0 && th.swap_fraction <= 1.0))
      throw SchemaError("/thermalize/swap_fraction", "must lie in (0, 1]");
    if (th.max_steps < 0) throw SchemaError("/thermalize/max_steps", "must be nonnegative");
    if (!(th.tol > 0.0)) throw SchemaError("/thermalize/tol", "must be positive");
    s.thermalize = th;
  }
  return s;
}

DemonScenario parse_demon(const Json& j) {
  parse_header(j, "demon");
  DemonScenario s;
  const Json& mode = member(j, "mode", "");
  if (!mode.is_string()) throw SchemaError("/mode", "expected a string");
  const std::string m = mode.get<std::string>();
  if (m == "classical") {
    reject_unknown(j, {"version", "command", "seed", "mode", "error_probability", "temperature"}, "");
    s.mode = DemonScenario::Mode::classical;
    s.error_probability = number_field_or(j, "error_probability", 0.5, "");
    s.temperature = number_field_or(j, "temperature", 1.0, "");
    if (!(s.error_probability >= 0.0 && s.error_probability <= 1.0))
      throw SchemaError("/error_probability", "must lie in [0, 1]");
    if (!(s.temperature > 0.0)) throw SchemaError("/temperature", "must be positive");
  } else if (m == "qec" || m == "sweep") {
    std::vector<std::string> allowed{"version",  "command",          "seed",         "mode",
                                     "code",     "input",            "codewords",    "errors",
                                     "apparatus_overlap", "apparatus_states", "ready_state", "temperature"};
    if (m == "sweep") allowed.push_back("overlaps");
    reject_unknown(j, allowed, "");
    if (m == "sweep" && !j.contains("code")) {
      Json copy = j;
      copy["code"] = "bit_flip_two_errors";
      s.qec = qec_from_json(copy);
    } else {
      s.qec = qec_from_json(j);
    }
    s.temperature = s.qec->temperature;
    if (!(s.temperature > 0.0)) throw SchemaError("/temperature", "must be positive");
    if (m == "qec") {
      s.mode = DemonScenario::Mode::qec;
    } else {
      s.mode = DemonScenario::Mode::sweep;
      s.overlaps = overlap_list(member(j, "overlaps", ""), "/overlaps");
      for (std::size_t i = 0; i < s.overlaps.size(); ++i)
        if (!(s.overlaps[i] >= 0.0 && s.overlaps[i] <= 1.0))
          throw SchemaError("/overlaps/" + std::to_string(i), "overlap must lie in [0, 1]");
    }
  } else {
    throw SchemaError("/mode", "unknown mode '" + m + "' (classical, qec, sweep)");
  }
  return s;
}

EntanglementScenario parse_entanglement(const Json& j) {
  parse_header(j, "entanglement");
  reject_unknown(j, {"version", "command", "seed", "state", "n", "solver", "with_eoc"}, "");
  const Json& state = member(j, "state", "");
  if (!state.is_object() || !state.contains("dims"))
    throw SchemaError("/state/dims", "a bipartite state needs dims [dA, dB]");
  EntanglementScenario s{state_from_json(state, "/state"), 2, SolverOptions{}, false};
  if (s.state.space().size() != 2) throw SchemaError("/state/dims", "expected exactly two factors");
  s.n = int_field_or(j, "n", 2, "");
  if (s.n < 2) throw SchemaError("/n", "must be at least 2");
  if (const Json* w = optional_member(j, "with_eoc")) {
    if (!w->is_boolean()) throw SchemaError("/with_eoc", "expected a boolean");
    s.with_eoc = w->get<bool>();
  }
  if (const Json* o = optional_member(j, "solver")) {
    const std::string p = "/solver";
    reject_unknown(*o, {"gap_tol", "max_iter", "oracle_starts", "max_factor_dim", "eoc_restarts", "eoc_step_cap",
                        "eoc_max_terms"},
                   p);
    auto& so = s.solver;
    so.gap_tol = number_field_or(*o, "gap_tol", so.gap_tol, p);
    so.max_iter = int_field_or(*o, "max_iter", so.max_iter, p);
    so.oracle_starts = int_field_or(*o, "oracle_starts", so.oracle_starts, p);
    so.max_factor_dim = static_cast<std::size_t>(int_field_or(*o, "max_factor_dim", static_cast<int>(so.max_factor_dim), p));
    so.eoc_restarts = int_field_or(*o, "eoc_restarts", so.eoc_restarts, p);
    so.eoc_step_cap = int_field_or(*o, "eoc_step_cap", so.eoc_step_cap, p);
    so.eoc_max_terms = int_field_or(*o, "eoc_max_terms", so.eoc_max_terms, p);
    if (!(so.gap_tol > 0.0)) throw SchemaError(p + "/gap_tol", "must be positive");
    if (so.max_iter < 0) throw SchemaError(p + "/max_iter", "must be nonnegative");
    if (so.oracle_starts < 0) throw SchemaError(p + "/oracle_starts", "must be nonnegative");
    if (so.eoc_restarts < 1) throw SchemaError(p + "/eoc_restarts", "must be at least 1");
    if (so.eoc_step_cap < 0) throw SchemaError(p + "/eoc_step_cap", "must be nonnegative");
    if (so.eoc_max_terms < 1) throw SchemaError(p + "/eoc_max_terms", "must be at least 1");
  }
  return s;
}

}  // namespace erasure_lab::io
