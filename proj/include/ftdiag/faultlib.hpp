#pragma once

// Parametric fault universe and fault simulation: golden and single-fault
// responses of a circuit.

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ftdiag/acsim.hpp"
#include "ftdiag/netlist.hpp"

namespace ftdiag {

/// Deviation range as value multipliers (0.6 .. 1.4 = -40% .. +40%) on a
/// uniform step grid.
struct FaultConfig {
    std::vector<std::string> targets;
    double range_low = 0.6;
    double range_high = 1.4;
    double step = 0.1;
};

/// Throws ValidationError naming the offending field.
void validate(const FaultConfig& config);
/// Also checks every target is an R/C/L element of `circuit`.
void validate(const FaultConfig& config, const Circuit& circuit);

/// Non-zero deviations of the grid in ascending order.
[[nodiscard]] std::vector<double> deviation_grid(const FaultConfig& config);

/// targets x deviation_grid in (component, ascending deviation) order.
[[nodiscard]] std::vector<FaultSpec> enumerate_faults(const FaultConfig& config);

/// Golden magnitudes (dB) at each frequency, in the given order.
[[nodiscard]] std::vector<double> evaluate_at(const Circuit& circuit,
                                              std::span<const double> frequencies,
                                              FrequencyUnit unit = FrequencyUnit::RadPerSec);
/// Magnitudes (dB) of the circuit with `fault` applied.
[[nodiscard]] std::vector<double> evaluate_at(const Circuit& circuit, const FaultSpec& fault,
                                              std::span<const double> frequencies,
                                              FrequencyUnit unit = FrequencyUnit::RadPerSec);

/// The nominal circuit plus every enumerated faulty copy, deviated and
/// assembled once up front so repeated evaluation (GA fitness) only solves.
class FaultSimulator {
public:
    FaultSimulator(Circuit circuit, FaultConfig config,
                   FrequencyUnit unit = FrequencyUnit::RadPerSec);

    [[nodiscard]] const Circuit& golden_circuit() const noexcept { return golden_; }
    [[nodiscard]] const FaultConfig& config() const noexcept { return config_; }
    [[nodiscard]] FrequencyUnit unit() const noexcept { return unit_; }
    [[nodiscard]] const std::vector<FaultSpec>& faults() const noexcept { return faults_; }

    [[nodiscard]] std::vector<double> golden_at(std::span<const double> frequencies) const;
    [[nodiscard]] std::vector<double> fault_at(std::size_t index,
                                               std::span<const double> frequencies) const;

private:
    Circuit golden_;
    FaultConfig config_;
    FrequencyUnit unit_;
    std::vector<FaultSpec> faults_;
    AcSystem golden_system_;
    std::vector<AcSystem> faulty_;
};

struct FaultDictionary {
    FaultConfig config;
    ResponseCurve golden;
    // In enumerate_faults order.
    std::vector<std::pair<FaultSpec, ResponseCurve>> entries;

    /// Entry for `fault`, or nullptr.
    [[nodiscard]] const ResponseCurve* find(const FaultSpec& fault) const noexcept;
};

/// Dense sweeps of the golden circuit and every single fault. Work is spread
/// over `workers` threads (0 = hardware concurrency); content is independent
/// of the worker count. A failing fault aborts the build with the fault named.
[[nodiscard]] FaultDictionary build_dictionary(const Circuit& circuit, const FaultConfig& config,
                                               std::span<const double> grid,
                                               FrequencyUnit unit = FrequencyUnit::RadPerSec,
                                               std::size_t workers = 1);

inline constexpr std::string_view kGoldenLabel = "__golden__";

/// `component,deviation,freq,mag_db`; golden rows first as `__golden__,0`.
[[nodiscard]] std::string dictionary_to_csv(const FaultDictionary& dictionary);

}  // namespace ftdiag
