#pragma once

// Subcommands of the erasure_lab binary. Each runner returns the process exit
// code: 0 success, 2 bad input (schema, dimension cap, unsupported
// scenario), 3 a numerical invariant failed.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace erasure_lab::cli {

enum ExitCode : int { kOk = 0, kBadInput = 2, kViolation = 3 };

enum class Format { json, csv, text };

struct Options {
  std::string scenario;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<double> gap_tol;
  std::optional<int> max_iter;
  bool with_eoc = false;
  std::optional<Format> format;
};

inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// ERASURE_LAB_SEED, then --seed, then the scenario's seed, then the default.
/// Throws InputError when the environment variable is not an unsigned integer.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag,
                           const std::optional<std::uint64_t>& scenario);

int run_erasure(const Options& opts, std::ostream& out, std::ostream& err);
int run_demon(const Options& opts, std::ostream& out, std::ostream& err);
int run_entanglement(const Options& opts, std::ostream& out, std::ostream& err);
int run_selftest(const Options& opts, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches; never throws.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace erasure_lab::cli
