#pragma once

// Subcommand bodies of the `ftdiag` tool. Each returns a process exit code:
// 0 success, 1 pipeline/numeric failure, 2 usage/config error. Diagnostics go
// to `err`, progress and reports to `out`.

#include <iosfwd>
#include <optional>
#include <string>

#include "ftdiag/app/config.hpp"

namespace ftdiag::app {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

/// Writes <out_dir>/dictionary.csv.
int run_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Writes <out_dir>/ga_log.csv, best_vector.json, trajectories.csv and
/// intersections.csv.
int run_optimize(const RunConfig& config, std::ostream& out, std::ostream& err);

struct DiagnoseRequest {
    std::optional<std::string> measured;  // "m1,m2,..." dB at the test frequencies
    std::optional<std::string> inject;    // "R3:+0.2"
    std::string vector_path;              // empty: <out_dir>/best_vector.json
};

/// Prints the ranked diagnosis and writes <out_dir>/diagnosis.csv.
int run_diagnose(const RunConfig& config, const DiagnoseRequest& request, std::ostream& out,
                 std::ostream& err);

struct PlotRequest {
    std::string input;                 // empty: <out_dir>/trajectories.csv
    std::optional<std::string> query;  // "x,y"
};

/// Writes <out_dir>/trajectories.svg.
int run_plot(const RunConfig& config, const PlotRequest& request, std::ostream& out,
             std::ostream& err);

/// Test vector stored by run_optimize.
struct StoredVector {
    TestVector vector;
    FrequencyUnit unit = FrequencyUnit::RadPerSec;
    double fitness = 0.0;
    std::size_t intersections = 0;
    std::uint64_t seed = 0;
};
[[nodiscard]] std::string stored_vector_to_json(const StoredVector& stored);
/// Throws ConfigError for malformed content.
[[nodiscard]] StoredVector stored_vector_from_json(const std::string& text);

}  // namespace ftdiag::app
