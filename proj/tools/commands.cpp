#include "commands.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "erasure_lab/demon.hpp"
#include "erasure_lab/entanglement.hpp"
#include "erasure_lab/errors.hpp"
#include "erasure_lab/io.hpp"
#include "erasure_lab/random.hpp"
#include "erasure_lab/thermo.hpp"

namespace erasure_lab::cli {

using io::Json;

namespace {

std::string fmt(double x, int precision = 9) {
  std::ostringstream os;
  os << std::setprecision(precision) << (x == 0.0 ? 0.0 : x);
  return os.str();
}

// Fixed-width table for standard output.
class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& os) const {
    std::vector<std::size_t> width(rows_.front().size(), 0);
    for (const auto& r : rows_)
      for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      for (std::size_t i = 0; i < rows_[k].size(); ++i)
        os << (i ? "  " : "") << std::left << std::setw(static_cast<int>(width[i])) << rows_[k][i];
      os << '\n';
      if (k == 0) {
        std::size_t total = 0;
        for (auto w : width) total += w + 2;
        os << std::string(total - 2, '-') << '\n';
      }
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

// Where the machine-readable report goes and in which format.
struct Sink {
  Format format;
  std::optional<std::string> path;

  // Writes `body` to the output path, or to `out` when no path was given.
  void emit(const std::string& body, std::ostream& out) const {
    if (!path) {
      out << body;
      return;
    }
    std::ofstream f(*path);
    if (!f) throw InputError("cannot write output file '" + *path + "'");
    f << body;
  }

  // Companion file next to the main output, e.g. report.convergence.csv.
  void emit_companion(const std::string& suffix, const std::string& body) const {
    if (!path) return;
    const std::filesystem::path p(*path);
    const auto companion = p.parent_path() / (p.stem().string() + suffix);
    std::ofstream f(companion);
    if (!f) throw InputError("cannot write output file '" + companion.string() + "'");
    f << body;
  }

  bool text_on_stdout() const { return path.has_value() || format == Format::text; }
};

Sink make_sink(const Options& opts, Format machine_default) {
  Format f = opts.format.value_or(opts.out ? machine_default : Format::text);
  return {f, opts.out};
}

// Maps library exceptions to exit codes; anything unexpected is a 3.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const io::SchemaError& e) {
    err << "error: invalid scenario: " << e.what() << '\n';
    return kBadInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const SupportError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const UnsupportedScenarioError& e) {
    err << "error: unsupported scenario: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kViolation;
  } catch (...) {
    err << "internal error: unknown exception\n";
    return kViolation;
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag,
                           const std::optional<std::uint64_t>& scenario) {
  if (const char* env = std::getenv("ERASURE_LAB_SEED"); env && *env) {
    const std::string s(env);
    if (s.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("ERASURE_LAB_SEED must be an unsigned integer, got '" + s + "'");
    try {
      return std::stoull(s);
    } catch (const std::out_of_range&) {
      throw InputError("ERASURE_LAB_SEED is out of range");
    }
  }
  if (flag) return *flag;
  if (scenario) return *scenario;
  return kDefaultSeed;
}

// ---------------------------------------------------------------------------
// erasure

int run_erasure(const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Json j = io::load_json_file(opts.scenario);
    const auto header = io::parse_header(j, "erasure");
    const auto sc = io::parse_erasure(j);
    const std::uint64_t seed = resolve_seed(opts.seed, header.seed);

    const EntropyValue gain = sc.info_gain ? EntropyValue(*sc.info_gain) : von_neumann_entropy(sc.apparatus);
    const ErasureReport report = erasure_entropy(sc.apparatus, sc.hamiltonian, gain);
    std::optional<CollisionTrace> trace;
    if (sc.thermalize)
      trace = thermalize(sc.apparatus, sc.hamiltonian, sc.thermalize->swap_fraction, sc.thermalize->max_steps,
                         sc.thermalize->tol);

    const bool ok = report.landauer_satisfied && (!trace || trace->monotone());
    const Sink sink = make_sink(opts, Format::json);

    if (sink.text_on_stdout()) {
      out << "erasure  seed=" << seed << "  T=" << fmt(sc.hamiltonian.temperature()) << '\n';
      Table t({"quantity", "nats"});
      t.add({"dS_apparatus = S(omega)", report.delta_app.to_string()});
      t.add({"dS_reservoir", fmt(report.delta_res)});
      t.add({"dS_total = -tr(rho ln omega)", fmt(report.delta_total)});
      t.add({"information gained", report.info_gain.to_string()});
      t.add({"Landauer satisfied", report.landauer_satisfied ? "yes" : "NO"});
      t.print(out);
      if (trace) {
        out << "thermalization: " << trace->steps_taken() << " steps, "
            << (trace->converged ? "converged" : "not converged") << ", final trace distance "
            << fmt(trace->steps.back().trace_distance) << ", monotone " << (trace->monotone() ? "yes" : "NO")
            << '\n';
      }
    }
    if (sink.format == Format::json) {
      Json r{{"command", "erasure"}, {"seed", seed}, {"temperature", sc.hamiltonian.temperature()},
             {"report", io::to_json(report)}};
      if (trace) r["thermalization"] = io::to_json(*trace);
      sink.emit(dump(r), out);
    } else if (sink.format == Format::csv) {
      std::ostringstream csv;
      csv << "# seed=" << seed << "\nquantity,nats\n" << std::setprecision(17)
          << "delta_app," << report.delta_app.nats() << "\ndelta_res," << report.delta_res << "\ndelta_total,"
          << report.delta_total << "\ninfo_gain," << report.info_gain.nats() << '\n';
      sink.emit(csv.str(), out);
      if (trace) {
        std::ostringstream c;
        io::write_collision_csv(c, *trace, seed);
        sink.emit_companion(".collision.csv", c.str());
      }
    }
    if (!ok) err << "violation: Landauer inequality or thermalization monotonicity failed\n";
    return ok ? kOk : kViolation;
  });
}

// ---------------------------------------------------------------------------
// demon

namespace {

void print_ledger(std::ostream& out, const EntropyLedger& ledger) {
  Table t({"step", "name", "dS_system", "dS_apparatus", "dS_garbage", "dF", "info_gain"});
  for (std::size_t i = 0; i < ledger.steps.size(); ++i) {
    const auto& s = ledger.steps[i];
    t.add({std::to_string(i + 1), s.name, fmt(s.ds_system), fmt(s.ds_apparatus), fmt(s.ds_garbage), fmt(s.df),
           fmt(s.info_gain)});
  }
  t.add({"", "total", fmt(ledger.total_system()), fmt(ledger.total_apparatus()), fmt(ledger.total_garbage()), "",
         fmt(ledger.total_info_gain())});
  t.print(out);
}

}  // namespace

int run_demon(const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Json j = io::load_json_file(opts.scenario);
    const auto header = io::parse_header(j, "demon");
    const auto sc = io::parse_demon(j);
    const std::uint64_t seed = resolve_seed(opts.seed, header.seed);
    const Sink sink = make_sink(opts, Format::csv);
    Json report{{"command", "demon"}, {"seed", seed}};
    bool ok = true;
    std::string why;

    if (sc.mode == io::DemonScenario::Mode::sweep) {
      const auto rows = recovery_fidelity_vs_overlap(*sc.qec, sc.overlaps);
      for (std::size_t i = 1; i < rows.size(); ++i) {
        const bool up = rows[i].overlap > rows[i - 1].overlap;
        if (up && rows[i].fidelity > rows[i - 1].fidelity + 1e-12) {
          ok = false;
          why = "recovery fidelity increased with overlap";
        }
      }
      if (sink.text_on_stdout()) {
        out << "demon sweep  seed=" << seed << '\n';
        Table t({"overlap", "fidelity", "erasure_entropy", "info_gain"});
        for (const auto& r : rows)
          t.add({fmt(r.overlap, 6), fmt(r.fidelity), fmt(r.erasure_entropy), fmt(r.info_gain)});
        t.print(out);
      }
      if (sink.format == Format::json) {
        report["mode"] = "sweep";
        report["rows"] = io::to_json(rows);
        sink.emit(dump(report), out);
      } else if (sink.format == Format::csv) {
        std::ostringstream csv;
        io::write_sweep_csv(csv, rows, seed);
        sink.emit(csv.str(), out);
      }
    } else {
      EntropyLedger ledger;
      if (sc.mode == io::DemonScenario::Mode::classical) {
        ledger = classical_cycle(sc.error_probability, sc.temperature);
        report["mode"] = "classical";
        report["error_probability"] = sc.error_probability;
        if (!ledger.closed() || !ledger.satisfies_landauer()) {
          ok = false;
          why = "classical cycle did not close";
        }
      } else {
        const QecCycleResult r = qec_cycle(*sc.qec);
        ledger = r.ledger;
        report["mode"] = "qec";
        report["result"] = io::to_json(r);
        if (!ledger.satisfies_landauer()) {
          ok = false;
          why = "garbage entropy below the information gained";
        }
        if (r.recovery_fidelity >= 1.0 - 1e-9 && !ledger.closed()) {
          ok = false;
          why = "ledger does not close despite perfect recovery";
        }
      }
      if (sink.text_on_stdout()) {
        out << "demon " << report["mode"].get<std::string>() << "  seed=" << seed << '\n';
        print_ledger(out, ledger);
        if (report.contains("result")) {
          const auto& r = report["result"];
          out << "recovery fidelity " << fmt(r["recovery_fidelity"].get<double>()) << ", garbage entropy "
              << fmt(r["gc_entropy"].get<double>()) << ", information gained "
              << fmt(r["info_gain"].get<double>()) << '\n';
        }
      }
      if (sink.format == Format::json) {
        report["ledger"] = io::to_json(ledger);
        sink.emit(dump(report), out);
      } else if (sink.format == Format::csv) {
        std::ostringstream csv;
        io::write_ledger_csv(csv, ledger, seed);
        sink.emit(csv.str(), out);
      }
    }
    if (!ok) err << "violation: " << why << '\n';
    return ok ? kOk : kViolation;
  });
}

// ---------------------------------------------------------------------------
// entanglement

int run_entanglement(const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Json j = io::load_json_file(opts.scenario);
    const auto header = io::parse_header(j, "entanglement");
    auto sc = io::parse_entanglement(j);
    const std::uint64_t seed = resolve_seed(opts.seed, header.seed);
    sc.solver.seed = seed;
    if (opts.gap_tol) {
      if (!(*opts.gap_tol > 0.0)) throw InputError("--gap-tol must be positive");
      sc.solver.gap_tol = *opts.gap_tol;
    }
    if (opts.max_iter) {
      if (*opts.max_iter < 0) throw InputError("--max-iter must be nonnegative");
      sc.solver.max_iter = *opts.max_iter;
    }
    const bool with_eoc = opts.with_eoc || sc.with_eoc;

    const EreResult ere = relative_entropy_of_entanglement(sc.state, sc.solver);
    const PurificationReport pur = purification_report(sc.state, sc.n, ere);
    std::optional<EocResult> eoc;
    if (with_eoc) eoc = entanglement_of_creation(sc.state, sc.solver);

    bool ok = std::isfinite(ere.value) && ere.value >= 0.0 && pur.ensemble_bound >= 0.0 && pur.ensemble_bound <= 1.0;
    for (std::size_t i = 1; i < ere.convergence.size(); ++i)
      ok = ok && ere.convergence[i].objective <= ere.convergence[i - 1].objective + 1e-12;
    if (eoc && ere.status == SolverStatus::converged) ok = ok && eoc->value + 1e-3 >= ere.value;
    if (pur.single_shot) ok = ok && *pur.single_shot <= pur.ensemble_bound + 1e-9;

    const Sink sink = make_sink(opts, Format::json);
    if (sink.text_on_stdout()) {
      const auto& f = sc.state.space().factors();
      out << "entanglement  seed=" << seed << "  dims=" << f[0].dim << "x" << f[1].dim << "  N=" << sc.n << '\n';
      Table t({"quantity", "value"});
      t.add({"E_RE (nats)", fmt(ere.value)});
      t.add({"solver status", to_string(ere.status)});
      t.add({"iterations", std::to_string(ere.convergence.back().iteration)});
      t.add({"final duality gap", fmt(ere.convergence.back().gap, 3)});
      if (eoc) {
        t.add({"E_C (nats)", fmt(eoc->value)});
        t.add({"E_C status", to_string(eoc->status)});
      }
      t.add({"ensemble bound E_RE/ln N", fmt(pur.ensemble_bound)});
      t.add({"single-shot probability", pur.single_shot ? fmt(*pur.single_shot) : "n/a"});
      t.add({"Schumacher rate S/ln N", fmt(pur.schumacher_rate)});
      t.print(out);
    }
    std::ostringstream csv;
    io::write_convergence_csv(csv, ere.convergence, seed);
    if (sink.format == Format::json) {
      Json r{{"command", "entanglement"},
             {"seed", seed},
             {"space", io::to_json(sc.state.space())},
             {"relative_entropy_of_entanglement", io::to_json(ere)},
             {"purification", io::to_json(pur)}};
      r["entanglement_of_creation"] = eoc ? io::to_json(*eoc) : Json(nullptr);
      sink.emit(dump(r), out);
      sink.emit_companion(".convergence.csv", csv.str());
    } else if (sink.format == Format::csv) {
      sink.emit(csv.str(), out);
    }
    if (!ok) err << "violation: entanglement report failed its consistency checks\n";
    return ok ? kOk : kViolation;
  });
}

// ---------------------------------------------------------------------------
// selftest

namespace {

struct Family {
  std::string name;
  int cases = 0;
  int failures = 0;
  double worst = 0.0;  // largest violation margin seen
};

Family landauer_family(std::uint64_t seed) {
  Family f{"landauer randomized pairs", 0, 0, 0.0};
  Rng rng(seed);
  for (int i = 0; i < 200; ++i) {
    const std::size_t d = 2 + static_cast<std::size_t>(i % 2);
    const auto rho = random_density(TensorSpace::single(d), rng);
    const auto h = random_hamiltonian(d, rng);
    const auto s = von_neumann_entropy(rho);
    const auto r = erasure_entropy(rho, h, s);
    const double margin = r.delta_total - s.nats();
    ++f.cases;
    if (margin < -1e-9 || !r.landauer_satisfied) ++f.failures;
    f.worst = std::max(f.worst, -margin);
  }
  return f;
}

Family free_energy_family(std::uint64_t seed) {
  Family f{"free-energy identity", 0, 0, 0.0};
  Rng rng(seed + 1);
  for (int i = 0; i < 200; ++i) {
    const std::size_t d = 2 + static_cast<std::size_t>(i % 2);
    const auto rho = random_density(TensorSpace::single(d), rng);
    const auto h = random_hamiltonian(d, rng);
    const auto omega = gibbs_state(h);
    const double lhs = free_energy(rho, h) - free_energy(omega, h);
    const double rhs = h.temperature() * relative_entropy(rho, omega).nats();
    const double err = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
    ++f.cases;
    if (!(err <= 1e-9)) ++f.failures;
    f.worst = std::max(f.worst, err);
  }
  return f;
}

Family ledger_family(std::uint64_t seed) {
  Family f{"ledger closure", 0, 0, 0.0};
  for (double p : {0.1, 0.25, 0.5}) {
    const auto ledger = classical_cycle(p);
    ++f.cases;
    if (!ledger.closed() || !ledger.satisfies_landauer()) ++f.failures;
  }
  Rng rng(seed + 2);
  const auto logical = TensorSpace::single(2, "L");
  for (int i = 0; i < 3; ++i) {
    const auto input = (i == 0) ? DensityOperator::from_pure(logical, random_pure(2, rng))
                                : random_density(logical, rng);
    const auto r = qec_cycle(bit_flip_scenario(input));
    ++f.cases;
    const double miss = std::abs(r.gc_entropy - r.info_gain);
    if (!r.ledger.closed() || !r.ledger.satisfies_landauer() || r.recovery_fidelity < 1.0 - 1e-9) ++f.failures;
    f.worst = std::max({f.worst, miss, 1.0 - r.recovery_fidelity});
  }
  return f;
}

Family pure_ere_family(std::uint64_t seed) {
  Family f{"pure-state E_RE collapse", 0, 0, 0.0};
  Rng rng(seed + 3);
  const auto space = TensorSpace::bipartite(2, 2);
  SolverOptions opts;
  opts.seed = seed;
  for (int i = 0; i < 5; ++i) {
    const ComplexVector psi = random_pure(4, rng);
    const auto r = relative_entropy_of_entanglement(DensityOperator::from_pure(space, psi), opts);
    const double err = std::abs(r.value - entropy_of_entanglement(psi, space).nats());
    ++f.cases;
    if (!(err <= 1e-3)) ++f.failures;
    f.worst = std::max(f.worst, err);
  }
  return f;
}

Family thermalization_family(std::uint64_t seed) {
  Family f{"collision-model thermalization", 0, 0, 0.0};
  Rng rng(seed + 4);
  for (int i = 0; i < 3; ++i) {
    const auto rho = random_density(TensorSpace::single(2), rng);
    const auto h = random_hamiltonian(2, rng);
    const auto trace = thermalize(rho, h, 0.5, 200, 1e-6);
    ++f.cases;
    if (!trace.monotone() || !trace.converged) ++f.failures;
    f.worst = std::max(f.worst, trace.steps.back().trace_distance);
  }
  return f;
}

}  // namespace

int run_selftest(const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::uint64_t seed = resolve_seed(opts.seed, std::nullopt);
    const std::vector<std::function<Family(std::uint64_t)>> suite{
        landauer_family, free_energy_family, ledger_family, pure_ere_family, thermalization_family};
    std::vector<Family> results;
    for (const auto& run : suite) results.push_back(run(seed));
    bool all = true;
    for (const auto& r : results) all = all && r.failures == 0;

    const Sink sink = make_sink(opts, Format::json);
    if (sink.text_on_stdout()) {
      out << "selftest  seed=" << seed << '\n';
      Table t({"family", "cases", "failures", "worst", "result"});
      for (const auto& r : results)
        t.add({r.name, std::to_string(r.cases), std::to_string(r.failures), fmt(r.worst, 3),
               r.failures ? "FAIL" : "pass"});
      t.print(out);
      out << (all ? "all invariant families passed" : "selftest FAILED") << '\n';
    }
    if (sink.format != Format::text) {
      if (sink.format == Format::json) {
        Json fams = Json::array();
        for (const auto& r : results)
          fams.push_back({{"family", r.name}, {"cases", r.cases}, {"failures", r.failures}, {"worst", r.worst}});
        sink.emit(dump(Json{{"command", "selftest"}, {"seed", seed}, {"passed", all}, {"families", fams}}), out);
      } else {
        std::ostringstream csv;
        csv << "# seed=" << seed << "\nfamily,cases,failures,worst\n" << std::setprecision(17);
        for (const auto& r : results) csv << r.name << ',' << r.cases << ',' << r.failures << ',' << r.worst << '\n';
        sink.emit(csv.str(), out);
      }
    }
    return all ? kOk : kViolation;
  });
}

// ---------------------------------------------------------------------------
// argument parsing

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    CLI::App app{"Entropy bookkeeping for erasure, error correction and entanglement", "erasure_lab"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "erasure_lab 0.1.0");

    Options opts;
    std::string format;
    std::optional<std::uint64_t> seed;
    std::optional<double> gap_tol;
    std::optional<int> max_iter;
    const std::map<std::string, Format> formats{{"json", Format::json}, {"csv", Format::csv}, {"text", Format::text}};

    auto common = [&](CLI::App* sub, bool needs_scenario) {
      if (needs_scenario) sub->add_option("--scenario", opts.scenario, "scenario file (JSON)")->required();
      sub->add_option("--out", opts.out, "write the machine-readable report here");
      sub->add_option("--seed", seed, "random seed (ERASURE_LAB_SEED takes precedence)");
      sub->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv", "text"}));
    };
    auto* erasure = app.add_subcommand("erasure", "entropy cost of resetting an apparatus in a reservoir");
    common(erasure, true);
    auto* demon = app.add_subcommand("demon", "classical or quantum error-correction cycle ledgers");
    common(demon, true);
    auto* ent = app.add_subcommand("entanglement", "relative entropy of entanglement and purification bounds");
    common(ent, true);
    ent->add_option("--gap-tol", gap_tol, "Frank-Wolfe duality-gap tolerance (nats)");
    ent->add_option("--max-iter", max_iter, "Frank-Wolfe iteration cap");
    ent->add_flag("--with-eoc", opts.with_eoc, "also compute the entanglement of creation");
    auto* self = app.add_subcommand("selftest", "run the built-in invariant suite");
    common(self, false);

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kOk : kBadInput;
    }
    opts.seed = seed;
    opts.gap_tol = gap_tol;
    opts.max_iter = max_iter;
    if (!format.empty()) opts.format = formats.at(format);

    if (erasure->parsed()) return run_erasure(opts, out, err);
    if (demon->parsed()) return run_demon(opts, out, err);
    if (ent->parsed()) return run_entanglement(opts, out, err);
    return run_selftest(opts, out, err);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kViolation;
  } catch (...) {
    err << "internal error: unknown exception\n";
    return kViolation;
  }
}

}  // namespace erasure_lab::cli
