#pragma once

// AC small-signal analysis by modified nodal analysis.

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ftdiag/netlist.hpp"

namespace ftdiag {

enum class FrequencyUnit { RadPerSec, Hertz };

[[nodiscard]] double to_angular(double frequency, FrequencyUnit unit) noexcept;
[[nodiscard]] std::string_view unit_name(FrequencyUnit unit) noexcept;
/// Accepts "rad/s" or "hz" (case-insensitive). Throws ValidationError.
[[nodiscard]] FrequencyUnit parse_unit(std::string_view text);

/// Sampled magnitude response. Frequencies strictly increasing, one finite
/// dB value per frequency.
struct ResponseCurve {
    std::vector<double> frequencies;
    std::vector<double> magnitudes_db;

    friend bool operator==(const ResponseCurve&, const ResponseCurve&) = default;
};

/// A circuit's MNA structure resolved to matrix indices once, so repeated
/// solves only restamp values. Holds no reference to the circuit.
class AcSystem {
public:
    explicit AcSystem(const Circuit& circuit);

    /// Unknown count (non-ground nodes + source/vcvs branch currents).
    [[nodiscard]] std::size_t size() const noexcept { return size_; }

    [[nodiscard]] std::complex<double> output_voltage(double frequency,
                                                      FrequencyUnit unit = FrequencyUnit::RadPerSec) const;
    [[nodiscard]] std::complex<double> gain(double frequency,
                                            FrequencyUnit unit = FrequencyUnit::RadPerSec) const;

private:
    struct Stamp {
        ElementKind kind;
        long p, n;    // -1 = ground
        long cp, cn;  // vcvs controlling nodes
        long branch;  // -1 when the element has no branch current
        double value;
        bool drives;  // the input source
    };
    std::vector<Stamp> stamps_;
    std::size_t size_ = 0;
    long output_ = -1;
    double input_amplitude_ = 1.0;
};

/// Complex node voltage at the output for the circuit as written (the input
/// source drives with its netlist amplitude, other sources are AC-shorted).
[[nodiscard]] std::complex<double> solve_output_voltage(const Circuit& circuit, double frequency,
                                                        FrequencyUnit unit = FrequencyUnit::RadPerSec);

/// V(output) / V(input source). Throws SolveError when the MNA matrix is
/// singular or the solution is not finite.
[[nodiscard]] std::complex<double> solve_ac(const Circuit& circuit, double frequency,
                                            FrequencyUnit unit = FrequencyUnit::RadPerSec);

[[nodiscard]] double magnitude_db(std::complex<double> gain) noexcept;

/// 20 log10 |solve_ac| at every grid point. The grid must be strictly
/// increasing and positive; failures name the offending frequency.
[[nodiscard]] ResponseCurve sweep(const Circuit& circuit, std::span<const double> grid,
                                  FrequencyUnit unit = FrequencyUnit::RadPerSec);

/// `points` log- or linearly-spaced frequencies covering [f_min, f_max].
[[nodiscard]] std::vector<double> make_grid(double f_min, double f_max, std::size_t points,
                                            bool log_spacing = true);

/// CSV with header `freq,mag_db`.
[[nodiscard]] std::string response_to_csv(const ResponseCurve& curve);

}  // namespace ftdiag
