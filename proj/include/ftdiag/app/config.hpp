#pragma once

// Run configuration shared by every subcommand. Loaded from a JSON object
// whose keys are the CLI flag names; see docs/config.md for the schema.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ftdiag/acsim.hpp"
#include "ftdiag/diagnose.hpp"
#include "ftdiag/error.hpp"
#include "ftdiag/evolve.hpp"
#include "ftdiag/faultlib.hpp"

namespace ftdiag::app {

/// Invalid configuration; `field` names the offending key.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& message)
        : Error(field + ": " + message), field_(std::move(field)) {}

    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct RunConfig {
    std::string netlist = "circuits/biquad.cir";
    // Empty targets: every R/C/L element of the netlist.
    FaultConfig faults;
    FrequencyUnit unit = FrequencyUnit::RadPerSec;
    // Sweep grid and GA search bounds.
    double f_min = 0.01;
    double f_max = 100.0;
    std::size_t grid = 201;
    bool log_grid = true;
    GaConfig ga;
    double intersection_tol = 1e-6;
    double origin_tol = 1e-6;
    double ambiguity_margin = 0.05;
    std::string out_dir = "out";
    std::size_t threads = 1;

    [[nodiscard]] FitnessOptions fitness_options() const {
        return FitnessOptions{intersection_tol, origin_tol};
    }
    [[nodiscard]] DiagnoseOptions diagnose_options() const {
        return DiagnoseOptions{ambiguity_margin, origin_tol};
    }
};

/// Every recognised key, in documentation order.
[[nodiscard]] const std::vector<std::string>& config_keys();

/// Builds a config from defaults overlaid with `json`. Unknown keys and
/// wrongly-typed values throw ConfigError.
[[nodiscard]] RunConfig config_from_json(const nlohmann::json& json);

/// Checks every numeric field against its module invariants and that the
/// netlist file exists (unless `require_netlist` is false). Throws
/// ConfigError naming the first bad field.
void validate(const RunConfig& config, bool require_netlist = true);

/// Netlist loaded from config.netlist with default targets filled in and
/// the fault config checked against the circuit.
struct LoadedCircuit {
    Circuit circuit;
    FaultConfig faults;
};
[[nodiscard]] LoadedCircuit load_circuit(const RunConfig& config);

}  // namespace ftdiag::app
