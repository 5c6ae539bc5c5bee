#include "ftdiag/app/commands.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ftdiag/app/svg.hpp"
#include "ftdiag/diagnose.hpp"
#include "ftdiag/format.hpp"

namespace ftdiag::app {

namespace fs = std::filesystem;

namespace {

class UsageError : public Error {
public:
    using Error::Error;
};

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    out.close();
    if (!out) {
        throw Error("cannot write '" + path.string() + "'");
    }
}

fs::path prepare_out_dir(const RunConfig& config) {
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec) {
        throw Error("cannot create output directory '" + config.out_dir + "': " + ec.message());
    }
    return fs::path(config.out_dir);
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    for (const auto& field : split(text, ',')) {
        double v = 0.0;
        if (!parse_double(trim(field), v)) {
            throw UsageError(what + ": malformed number '" + field + "'");
        }
        out.push_back(v);
    }
    return out;
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace

std::string stored_vector_to_json(const StoredVector& stored) {
    nlohmann::ordered_json j;
    j["frequencies"] = stored.vector.frequencies;
    j["unit"] = std::string(unit_name(stored.unit));
    j["fitness"] = stored.fitness;
    j["intersections"] = stored.intersections;
    j["seed"] = stored.seed;
    j["degenerate"] = stored.vector.degenerate();
    return j.dump(2) + "\n";
}

StoredVector stored_vector_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw ConfigError("best_vector", "not a JSON object");
    }
    StoredVector s;
    if (!j.contains("frequencies") || !j["frequencies"].is_array()) {
        throw ConfigError("best_vector", "missing frequencies array");
    }
    for (const auto& f : j["frequencies"]) {
        if (!f.is_number()) {
            throw ConfigError("best_vector", "frequencies must be numbers");
        }
        s.vector.frequencies.push_back(f.get<double>());
    }
    try {
        validate(s.vector);
        if (j.contains("unit")) {
            s.unit = parse_unit(j["unit"].get<std::string>());
        }
    } catch (const std::exception& e) {
        throw ConfigError("best_vector", e.what());
    }
    if (j.contains("fitness") && j["fitness"].is_number()) {
        s.fitness = j["fitness"].get<double>();
    }
    if (j.contains("intersections") && j["intersections"].is_number_unsigned()) {
        s.intersections = j["intersections"].get<std::size_t>();
    }
    if (j.contains("seed") && j["seed"].is_number_unsigned()) {
        s.seed = j["seed"].get<std::uint64_t>();
    }
    return s;
}

int run_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        validate(config);
        const auto loaded = load_circuit(config);
        const auto grid = make_grid(config.f_min, config.f_max, config.grid, config.log_grid);
        const auto dict =
            build_dictionary(loaded.circuit, loaded.faults, grid, config.unit, config.threads);
        const auto dir = prepare_out_dir(config);
        write_text(dir / "dictionary.csv", dictionary_to_csv(dict));
        out << "simulated golden + " << dict.entries.size() << " faulty circuits over "
            << grid.size() << " frequencies -> " << (dir / "dictionary.csv").string() << '\n';
        return kExitOk;
    });
}

int run_optimize(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        validate(config);
        const auto loaded = load_circuit(config);
        const FaultSimulator simulator(loaded.circuit, loaded.faults, config.unit);
        const auto result = run_ga(simulator, config.ga, config.fitness_options());

        const auto trajectories = build_trajectories(simulator, result.best);
        const auto report =
            count_intersections(trajectories, config.intersection_tol, config.origin_tol);

        const auto dir = prepare_out_dir(config);
        write_text(dir / "ga_log.csv", ga_log_to_csv(result.log));
        write_text(dir / "best_vector.json",
                   stored_vector_to_json(StoredVector{result.best, config.unit,
                                                      result.best_fitness.fitness,
                                                      result.best_fitness.intersections,
                                                      config.ga.seed}));
        write_text(dir / "trajectories.csv", trajectories_to_csv(trajectories));
        write_text(dir / "intersections.csv", incidences_to_csv(trajectories, report));

        out << "best test vector (" << unit_name(config.unit) << "):";
        for (const double f : result.best.frequencies) {
            out << ' ' << format_g17(f);
        }
        out << "\nfitness " << format_g17(result.best_fitness.fitness) << " (I = "
            << result.best_fitness.intersections << ")\n";
        if (result.best_fitness.fitness < 1.0) {
            err << "warning: no intersection-free test vector found; best I = "
                << result.best_fitness.intersections << '\n';
        }
        return kExitOk;
    });
}

int run_diagnose(const RunConfig& config, const DiagnoseRequest& request, std::ostream& out,
                 std::ostream& err) {
    return guarded(err, [&] {
        validate(config);
        if (request.measured.has_value() == request.inject.has_value()) {
            throw UsageError("give exactly one of --measured or --inject");
        }
        const auto loaded = load_circuit(config);
        const std::string vector_path =
            request.vector_path.empty() ? (fs::path(config.out_dir) / "best_vector.json").string()
                                        : request.vector_path;
        const auto stored = stored_vector_from_json(read_text(vector_path));
        const auto& tv = stored.vector;
        const FaultSimulator simulator(loaded.circuit, loaded.faults, stored.unit);
        const auto golden = simulator.golden_at(tv.frequencies);

        Coords query;
        if (request.measured) {
            const auto measured = parse_list(*request.measured, "--measured");
            if (measured.size() != tv.size()) {
                throw UsageError("--measured has " + std::to_string(measured.size()) +
                                 " values but the test vector has " + std::to_string(tv.size()) +
                                 " frequencies");
            }
            query = signature(golden, measured);
        } else {
            const auto colon = request.inject->rfind(':');
            double deviation = 0.0;
            if (colon == std::string::npos ||
                !parse_double(trim(request.inject->substr(colon + 1)), deviation)) {
                throw UsageError("--inject expects component:deviation, e.g. R3:+0.2");
            }
            const FaultSpec fault{std::string(trim(request.inject->substr(0, colon))), deviation};
            const Element* e = loaded.circuit.find(fault.component);
            if (e == nullptr || !is_passive(e->kind)) {
                throw UsageError("--inject: unknown component '" + fault.component + "'");
            }
            try {
                query = signature(golden,
                                  evaluate_at(loaded.circuit, fault, tv.frequencies, stored.unit));
            } catch (const ValidationError& ve) {
                throw UsageError(std::string("--inject: ") + ve.what());
            }
        }

        const auto trajectories = build_trajectories(simulator, tv);
        const auto result = classify(query, trajectories, config.diagnose_options());
        const auto dir = prepare_out_dir(config);
        write_text(dir / "diagnosis.csv", diagnosis_to_csv(result));

        out << "query signature:";
        for (const double c : query) {
            out << ' ' << format_g17(c);
        }
        out << " dB\n" << diagnosis_report(result);
        return kExitOk;
    });
}

int run_plot(const RunConfig& config, const PlotRequest& request, std::ostream& out,
             std::ostream& err) {
    return guarded(err, [&] {
        validate(config, false);
        std::optional<std::array<double, 2>> query;
        if (request.query) {
            const auto xy = parse_list(*request.query, "--query");
            if (xy.size() != 2) {
                throw UsageError("--query expects x,y");
            }
            query = std::array<double, 2>{xy[0], xy[1]};
        }
        const std::string input =
            request.input.empty() ? (fs::path(config.out_dir) / "trajectories.csv").string()
                                  : request.input;
        const auto trajectories = parse_trajectories_csv(read_text(input));
        const auto dir = prepare_out_dir(config);
        write_text(dir / "trajectories.svg", render_trajectory_svg(trajectories, query));
        out << "plotted " << trajectories.size() << " trajectories -> "
            << (dir / "trajectories.svg").string() << '\n';
        return kExitOk;
    });
}

}  // namespace ftdiag::app
