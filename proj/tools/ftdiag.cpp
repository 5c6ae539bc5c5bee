// ftdiag: fault-trajectory test generation and diagnosis for linear analog
// circuits.
//
//   ftdiag simulate  [options]   fault dictionary sweeps -> dictionary.csv
//   ftdiag optimize  [options]   GA test-vector search   -> ga_log.csv, best_vector.json,
//                                                            trajectories.csv, intersections.csv
//   ftdiag diagnose  [options] (--measured m1,m2,... | --inject R3:+0.2)
//                                                        -> diagnosis.csv
//   ftdiag plot      [options] [--query x,y]             -> trajectories.svg
//
// Every configuration key can be given in a JSON file (--config) and
// overridden by the flag of the same name.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ftdiag/app/commands.hpp"
#include "ftdiag/app/config.hpp"

namespace {

using nlohmann::json;
using ftdiag::app::kExitUsage;

// Holders for every config flag; only flags given on the command line are
// written over the JSON config.
struct ConfigFlags {
    std::optional<std::string> config_path;
    std::optional<std::string> netlist, targets, unit, grid_spacing, out_dir;
    std::optional<double> range_low, range_high, step, f_min, f_max, reproduction_rate,
        mutation_rate, intersection_tol, origin_tol, ambiguity_margin;
    std::optional<std::uint64_t> grid, population_size, generations, n_frequencies, seed, threads;

    void attach(CLI::App& app) {
        app.add_option("--config", config_path, "JSON configuration file");
        app.add_option("--netlist", netlist, "Circuit netlist (.cir)");
        app.add_option("--targets", targets, "Comma-separated fault targets (default: all R/C/L)");
        app.add_option("--range_low", range_low, "Lowest value multiplier (default 0.6)");
        app.add_option("--range_high", range_high, "Highest value multiplier (default 1.4)");
        app.add_option("--step", step, "Deviation step (default 0.1)");
        app.add_option("--unit", unit, "Frequency unit: rad/s (default) or hz");
        app.add_option("--f_min", f_min, "Lowest frequency (default 0.01)");
        app.add_option("--f_max", f_max, "Highest frequency (default 100)");
        app.add_option("--grid", grid, "Sweep points (default 201)");
        app.add_option("--grid_spacing", grid_spacing, "log (default) or linear");
        app.add_option("--population_size", population_size, "GA individuals (default 128)");
        app.add_option("--generations", generations, "GA generations (default 15)");
        app.add_option("--reproduction_rate", reproduction_rate, "Copied fraction (default 0.5)");
        app.add_option("--mutation_rate", mutation_rate, "Per-individual mutation (default 0.4)");
        app.add_option("--n_frequencies", n_frequencies, "Test vector length (default 2)");
        app.add_option("--seed", seed, "GA seed (default 1)");
        app.add_option("--intersection_tol", intersection_tol, "Contact distance, dB (default 1e-6)");
        app.add_option("--origin_tol", origin_tol, "Golden exclusion radius, dB (default 1e-6)");
        app.add_option("--ambiguity_margin", ambiguity_margin, "Tie margin, dB (default 0.05)");
        app.add_option("--out_dir", out_dir, "Output directory (default out)");
        app.add_option("--threads", threads, "Worker threads, 0 = all cores (default 1)");
    }

    [[nodiscard]] ftdiag::app::RunConfig resolve() const {
        json j = json::object();
        if (config_path) {
            std::ifstream in(*config_path);
            if (!in) {
                throw ftdiag::app::ConfigError("config", "cannot open '" + *config_path + "'");
            }
            j = json::parse(in, nullptr, false);
            if (j.is_discarded()) {
                throw ftdiag::app::ConfigError("config", "'" + *config_path + "' is not valid JSON");
            }
        }
        const auto put = [&j](const char* key, const auto& flag) {
            if (flag) {
                j[key] = *flag;
            }
        };
        put("netlist", netlist);
        put("targets", targets);
        put("unit", unit);
        put("grid_spacing", grid_spacing);
        put("out_dir", out_dir);
        put("range_low", range_low);
        put("range_high", range_high);
        put("step", step);
        put("f_min", f_min);
        put("f_max", f_max);
        put("reproduction_rate", reproduction_rate);
        put("mutation_rate", mutation_rate);
        put("intersection_tol", intersection_tol);
        put("origin_tol", origin_tol);
        put("ambiguity_margin", ambiguity_margin);
        put("grid", grid);
        put("population_size", population_size);
        put("generations", generations);
        put("n_frequencies", n_frequencies);
        put("seed", seed);
        put("threads", threads);
        return ftdiag::app::config_from_json(j);
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fault-trajectory test generation and diagnosis for linear analog circuits"};
    app.require_subcommand(1);

    ConfigFlags simulate_flags, optimize_flags, diagnose_flags, plot_flags;
    ftdiag::app::DiagnoseRequest diagnose_request;
    ftdiag::app::PlotRequest plot_request;

    auto* simulate = app.add_subcommand("simulate", "Sweep golden and faulty circuits");
    simulate_flags.attach(*simulate);

    auto* optimize = app.add_subcommand("optimize", "Search an intersection-free test vector");
    optimize_flags.attach(*optimize);

    auto* diagnose = app.add_subcommand("diagnose", "Classify a measured or injected fault");
    diagnose_flags.attach(*diagnose);
    diagnose->add_option("--measured", diagnose_request.measured,
                         "dB magnitudes at the test-vector frequencies, m1,m2,...");
    diagnose->add_option("--inject", diagnose_request.inject,
                         "Simulate component:deviation, e.g. R3:+0.2");
    diagnose->add_option("--vector", diagnose_request.vector_path,
                         "Test vector file (default <out_dir>/best_vector.json)");

    auto* plot = app.add_subcommand("plot", "Render trajectories.csv as SVG");
    plot_flags.attach(*plot);
    plot->add_option("--input", plot_request.input,
                     "Trajectory CSV (default <out_dir>/trajectories.csv)");
    plot->add_option("--query", plot_request.query, "Mark a query point x,y");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (simulate->parsed()) {
            return ftdiag::app::run_simulate(simulate_flags.resolve(), std::cout, std::cerr);
        }
        if (optimize->parsed()) {
            return ftdiag::app::run_optimize(optimize_flags.resolve(), std::cout, std::cerr);
        }
        if (diagnose->parsed()) {
            return ftdiag::app::run_diagnose(diagnose_flags.resolve(), diagnose_request, std::cout,
                                             std::cerr);
        }
        return ftdiag::app::run_plot(plot_flags.resolve(), plot_request, std::cout, std::cerr);
    } catch (const ftdiag::app::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitUsage;
    }
}
