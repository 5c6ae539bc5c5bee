#include "ftdiag/faultlib.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ftdiag/error.hpp"
#include "ftdiag/format.hpp"
#include "ftdiag/parallel.hpp"

namespace ftdiag {

namespace {

constexpr double kGridAlignTol = 1e-9;

// Number of whole steps in `span`, or -1 when misaligned.
long steps_in(double span, double step) {
    const double k = std::round(span / step);
    return std::abs(span - k * step) <= kGridAlignTol ? static_cast<long>(k) : -1;
}

// k * step snapped to 12 decimals so that grid values print as their decimal
// form (0.3 rather than 0.30000000000000004).
double grid_value(long k, double step) {
    return std::round(static_cast<double>(k) * step * 1e12) / 1e12;
}

}  // namespace

void validate(const FaultConfig& config) {
    if (config.targets.empty()) {
        throw ValidationError("targets: fault target list is empty");
    }
    std::set<std::string> unique(config.targets.begin(), config.targets.end());
    if (unique.size() != config.targets.size()) {
        throw ValidationError("targets: duplicate component id");
    }
    if (!(config.range_low > 0.0 && config.range_low < 1.0)) {
        throw ValidationError("range_low: must satisfy 0 < range_low < 1, got " +
                              format_g17(config.range_low));
    }
    if (!(config.range_high > 1.0) || !std::isfinite(config.range_high)) {
        throw ValidationError("range_high: must be > 1, got " + format_g17(config.range_high));
    }
    if (!(config.step > 0.0) || !std::isfinite(config.step)) {
        throw ValidationError("step: must be > 0, got " + format_g17(config.step));
    }
    if (steps_in(1.0 - config.range_low, config.step) < 1) {
        throw ValidationError("step: 1 - range_low is not a multiple of step " +
                              format_g17(config.step));
    }
    if (steps_in(config.range_high - 1.0, config.step) < 1) {
        throw ValidationError("step: range_high - 1 is not a multiple of step " +
                              format_g17(config.step));
    }
}

void validate(const FaultConfig& config, const Circuit& circuit) {
    validate(config);
    for (const auto& id : config.targets) {
        const Element* e = circuit.find(id);
        if (e == nullptr) {
            throw ValidationError("targets: unknown component '" + id + "'");
        }
        if (!is_passive(e->kind)) {
            throw ValidationError("targets: '" + id + "' is a " + std::string(kind_name(e->kind)) +
                                  "; only R/C/L components can be fault targets");
        }
    }
}

std::vector<double> deviation_grid(const FaultConfig& config) {
    validate(config);
    const long below = steps_in(1.0 - config.range_low, config.step);
    const long above = steps_in(config.range_high - 1.0, config.step);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(below + above));
    for (long k = -below; k <= above; ++k) {
        if (k != 0) {
            out.push_back(grid_value(k, config.step));
        }
    }
    return out;
}

std::vector<FaultSpec> enumerate_faults(const FaultConfig& config) {
    const auto grid = deviation_grid(config);
    std::vector<FaultSpec> out;
    out.reserve(config.targets.size() * grid.size());
    for (const auto& id : config.targets) {
        for (const double d : grid) {
            out.push_back(FaultSpec{id, d});
        }
    }
    return out;
}

namespace {
std::vector<double> magnitudes(const AcSystem& system, std::span<const double> frequencies,
                               FrequencyUnit unit) {
    if (frequencies.empty()) {
        throw ValidationError("evaluate_at: empty frequency list");
    }
    std::vector<double> out;
    out.reserve(frequencies.size());
    for (const double f : frequencies) {
        out.push_back(magnitude_db(system.gain(f, unit)));
    }
    return out;
}
}  // namespace

std::vector<double> evaluate_at(const Circuit& circuit, std::span<const double> frequencies,
                                FrequencyUnit unit) {
    return magnitudes(AcSystem(circuit), frequencies, unit);
}

std::vector<double> evaluate_at(const Circuit& circuit, const FaultSpec& fault,
                                std::span<const double> frequencies, FrequencyUnit unit) {
    return evaluate_at(apply_deviation(circuit, fault), frequencies, unit);
}

FaultSimulator::FaultSimulator(Circuit circuit, FaultConfig config, FrequencyUnit unit)
    : golden_(std::move(circuit)), config_(std::move(config)), unit_(unit),
      golden_system_(golden_) {
    validate(config_, golden_);
    faults_ = enumerate_faults(config_);
    faulty_.reserve(faults_.size());
    for (const auto& f : faults_) {
        faulty_.emplace_back(apply_deviation(golden_, f));
    }
}

std::vector<double> FaultSimulator::golden_at(std::span<const double> frequencies) const {
    return magnitudes(golden_system_, frequencies, unit_);
}

std::vector<double> FaultSimulator::fault_at(std::size_t index,
                                             std::span<const double> frequencies) const {
    return magnitudes(faulty_.at(index), frequencies, unit_);
}

const ResponseCurve* FaultDictionary::find(const FaultSpec& fault) const noexcept {
    const auto it = std::find_if(entries.begin(), entries.end(),
                                 [&](const auto& e) { return e.first == fault; });
    return it == entries.end() ? nullptr : &it->second;
}

FaultDictionary build_dictionary(const Circuit& circuit, const FaultConfig& config,
                                 std::span<const double> grid, FrequencyUnit unit,
                                 std::size_t workers) {
    validate(config, circuit);
    FaultDictionary dict;
    dict.config = config;
    dict.golden = sweep(circuit, grid, unit);

    const auto faults = enumerate_faults(config);
    std::vector<ResponseCurve> curves(faults.size());
    parallel_for(faults.size(), workers, [&](std::size_t i) {
        try {
            curves[i] = sweep(apply_deviation(circuit, faults[i]), grid, unit);
        } catch (const Error& e) {
            throw Error("fault " + faults[i].component + " " + format_g17(faults[i].deviation) +
                        ": " + e.what());
        }
    });
    dict.entries.reserve(faults.size());
    for (std::size_t i = 0; i < faults.size(); ++i) {
        dict.entries.emplace_back(faults[i], std::move(curves[i]));
    }
    return dict;
}

std::string dictionary_to_csv(const FaultDictionary& dictionary) {
    std::string out = "component,deviation,freq,mag_db\n";
    const auto emit = [&out](std::string_view component, double deviation,
                             const ResponseCurve& curve) {
        const std::string dev = format_g17(deviation);
        for (std::size_t i = 0; i < curve.frequencies.size(); ++i) {
            out += component;
            out += ',';
            out += dev;
            out += ',';
            out += format_g17(curve.frequencies[i]);
            out += ',';
            out += format_g17(curve.magnitudes_db[i]);
            out += '\n';
        }
    };
    emit(kGoldenLabel, 0.0, dictionary.golden);
    for (const auto& [fault, curve] : dictionary.entries) {
        emit(fault.component, fault.deviation, curve);
    }
    return out;
}

}  // namespace ftdiag
