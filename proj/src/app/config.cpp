#include "ftdiag/app/config.hpp"

#include <cmath>
#include <filesystem>

#include "ftdiag/format.hpp"

namespace ftdiag::app {

namespace {

using nlohmann::json;

double get_number(const json& j, const std::string& key) {
    if (!j.is_number()) {
        throw ConfigError(key, "expected a number");
    }
    return j.get<double>();
}

std::uint64_t get_count(const json& j, const std::string& key) {
    if (j.is_number_unsigned()) {
        return j.get<std::uint64_t>();
    }
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
        return static_cast<std::uint64_t>(j.get<std::int64_t>());
    }
    throw ConfigError(key, "expected a non-negative integer");
}

std::string get_string(const json& j, const std::string& key) {
    if (!j.is_string()) {
        throw ConfigError(key, "expected a string");
    }
    return j.get<std::string>();
}

std::vector<std::string> get_targets(const json& j) {
    std::vector<std::string> out;
    if (j.is_string()) {
        for (auto& t : split(j.get<std::string>(), ',')) {
            if (const auto v = trim(t); !v.empty()) {
                out.emplace_back(v);
            }
        }
        return out;
    }
    if (!j.is_array()) {
        throw ConfigError("targets", "expected an array of component ids");
    }
    for (const auto& item : j) {
        out.push_back(get_string(item, "targets"));
    }
    return out;
}

// Module validators prefix their messages with the field name.
[[noreturn]] void rethrow_as_config(const ValidationError& e) {
    const std::string what = e.what();
    const auto colon = what.find(':');
    std::string field = colon == std::string::npos ? "config" : what.substr(0, colon);
    if (field == "f_min/f_max") {
        field = "f_min";
    }
    throw ConfigError(field, colon == std::string::npos ? what : what.substr(colon + 2));
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "netlist",         "targets",          "range_low",         "range_high",
        "step",            "unit",             "f_min",             "f_max",
        "grid",            "grid_spacing",     "population_size",   "generations",
        "reproduction_rate", "mutation_rate",  "n_frequencies",     "seed",
        "intersection_tol", "origin_tol",      "ambiguity_margin",  "out_dir",
        "threads",
    };
    return keys;
}

RunConfig config_from_json(const json& j) {
    if (!j.is_object()) {
        throw ConfigError("config", "expected a JSON object");
    }
    RunConfig c;
    for (const auto& [key, value] : j.items()) {
        if (key == "netlist") {
            c.netlist = get_string(value, key);
        } else if (key == "targets") {
            c.faults.targets = get_targets(value);
        } else if (key == "range_low") {
            c.faults.range_low = get_number(value, key);
        } else if (key == "range_high") {
            c.faults.range_high = get_number(value, key);
        } else if (key == "step") {
            c.faults.step = get_number(value, key);
        } else if (key == "unit") {
            try {
                c.unit = parse_unit(get_string(value, key));
            } catch (const ValidationError& e) {
                throw ConfigError(key, e.what());
            }
        } else if (key == "f_min") {
            c.f_min = get_number(value, key);
        } else if (key == "f_max") {
            c.f_max = get_number(value, key);
        } else if (key == "grid") {
            c.grid = get_count(value, key);
        } else if (key == "grid_spacing") {
            const auto s = get_string(value, key);
            if (s != "log" && s != "linear") {
                throw ConfigError(key, "expected \"log\" or \"linear\", got \"" + s + "\"");
            }
            c.log_grid = s == "log";
        } else if (key == "population_size") {
            c.ga.population_size = get_count(value, key);
        } else if (key == "generations") {
            c.ga.generations = get_count(value, key);
        } else if (key == "reproduction_rate") {
            c.ga.reproduction_rate = get_number(value, key);
        } else if (key == "mutation_rate") {
            c.ga.mutation_rate = get_number(value, key);
        } else if (key == "n_frequencies") {
            c.ga.n_frequencies = get_count(value, key);
        } else if (key == "seed") {
            c.ga.seed = get_count(value, key);
        } else if (key == "intersection_tol") {
            c.intersection_tol = get_number(value, key);
        } else if (key == "origin_tol") {
            c.origin_tol = get_number(value, key);
        } else if (key == "ambiguity_margin") {
            c.ambiguity_margin = get_number(value, key);
        } else if (key == "out_dir") {
            c.out_dir = get_string(value, key);
        } else if (key == "threads") {
            c.threads = get_count(value, key);
        } else {
            throw ConfigError(key, "unknown configuration key");
        }
    }
    c.ga.f_min = c.f_min;
    c.ga.f_max = c.f_max;
    c.ga.workers = c.threads;
    return c;
}

void validate(const RunConfig& c, bool require_netlist) {
    if (require_netlist && c.netlist.empty()) {
        throw ConfigError("netlist", "no netlist path given");
    }
    if (require_netlist && !std::filesystem::is_regular_file(c.netlist)) {
        throw ConfigError("netlist", "file not found: " + c.netlist);
    }
    try {
        FaultConfig probe = c.faults;
        if (probe.targets.empty()) {
            probe.targets = {"R0"};  // defaults are resolved against the netlist later
        }
        validate(probe);
    } catch (const ValidationError& e) {
        rethrow_as_config(e);
    }
    if (!(c.f_min > 0.0) || !std::isfinite(c.f_min)) {
        throw ConfigError("f_min", "must be > 0");
    }
    if (!(c.f_max > c.f_min) || !std::isfinite(c.f_max)) {
        throw ConfigError("f_max", "must be finite and > f_min");
    }
    if (c.grid < 2) {
        throw ConfigError("grid", "need at least 2 points");
    }
    try {
        validate(c.ga);
    } catch (const ValidationError& e) {
        rethrow_as_config(e);
    }
    if (!(c.intersection_tol > 0.0) || !std::isfinite(c.intersection_tol)) {
        throw ConfigError("intersection_tol", "must be > 0");
    }
    if (!(c.origin_tol >= 0.0) || !std::isfinite(c.origin_tol)) {
        throw ConfigError("origin_tol", "must be >= 0");
    }
    if (!(c.ambiguity_margin >= 0.0) || !std::isfinite(c.ambiguity_margin)) {
        throw ConfigError("ambiguity_margin", "must be >= 0");
    }
    if (c.out_dir.empty()) {
        throw ConfigError("out_dir", "must not be empty");
    }
}

LoadedCircuit load_circuit(const RunConfig& config) {
    LoadedCircuit out = [&] {
        try {
            return LoadedCircuit{load_netlist(config.netlist), config.faults};
        } catch (const ValidationError& e) {
            throw ConfigError("netlist", e.what());
        }
    }();
    if (out.faults.targets.empty()) {
        out.faults.targets = out.circuit.passive_ids();
    }
    try {
        validate(out.faults, out.circuit);
    } catch (const ValidationError& e) {
        rethrow_as_config(e);
    }
    return out;
}

}  // namespace ftdiag::app
