#include "ftdiag/acsim.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numbers>

#include <Eigen/Dense>

#include "ftdiag/error.hpp"
#include "ftdiag/format.hpp"

namespace ftdiag {

namespace {

using Complex = std::complex<double>;

// Reciprocal condition estimates below this are treated as singular.
constexpr double kSingularRcond = 1e-14;

void stamp_admittance(Eigen::MatrixXcd& a, Eigen::Index p, Eigen::Index n, Complex y) {
    if (p >= 0) {
        a(p, p) += y;
    }
    if (n >= 0) {
        a(n, n) += y;
    }
    if (p >= 0 && n >= 0) {
        a(p, n) -= y;
        a(n, p) -= y;
    }
}

// Branch current k flows from p through the element to n.
void stamp_branch_incidence(Eigen::MatrixXcd& a, Eigen::Index p, Eigen::Index n, Eigen::Index k) {
    if (p >= 0) {
        a(p, k) += 1.0;
        a(k, p) += 1.0;
    }
    if (n >= 0) {
        a(n, k) -= 1.0;
        a(k, n) -= 1.0;
    }
}

}  // namespace

double to_angular(double frequency, FrequencyUnit unit) noexcept {
    return unit == FrequencyUnit::Hertz ? 2.0 * std::numbers::pi * frequency : frequency;
}

std::string_view unit_name(FrequencyUnit unit) noexcept {
    return unit == FrequencyUnit::Hertz ? "hz" : "rad/s";
}

FrequencyUnit parse_unit(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (lower == "rad/s") {
        return FrequencyUnit::RadPerSec;
    }
    if (lower == "hz") {
        return FrequencyUnit::Hertz;
    }
    throw ValidationError("unknown frequency unit '" + std::string(text) +
                          "' (expected rad/s or hz)");
}

// Unknown layout: non-ground node voltages first (sorted by name), then one
// branch current per voltage source / vcvs in element order.
AcSystem::AcSystem(const Circuit& circuit) {
    std::map<std::string, long, std::less<>> node_index;
    long next = 0;
    for (const auto& name : circuit.nodes()) {
        if (name != kGroundNode) {
            node_index.emplace(name, next++);
        }
    }
    const auto node = [&](const std::string& name) {
        const auto it = node_index.find(name);
        return it == node_index.end() ? -1L : it->second;
    };
    for (const auto& e : circuit.elements()) {
        Stamp s{e.kind, node(e.nodes[0]), node(e.nodes[1]), -1, -1, -1, e.value, false};
        if (e.kind == ElementKind::Vcvs) {
            s.cp = node(e.nodes[2]);
            s.cn = node(e.nodes[3]);
        }
        if (e.kind == ElementKind::VoltageSource || e.kind == ElementKind::Vcvs) {
            s.branch = next++;
        }
        s.drives = e.id == circuit.input_source();
        stamps_.push_back(s);
    }
    size_ = static_cast<std::size_t>(next);
    output_ = node(circuit.output_node());
    input_amplitude_ = circuit.input_element().value;
}

Complex AcSystem::gain(double frequency, FrequencyUnit unit) const {
    return output_voltage(frequency, unit) / input_amplitude_;
}

Complex AcSystem::output_voltage(double frequency, FrequencyUnit unit) const {
    if (!(frequency > 0.0) || !std::isfinite(frequency)) {
        throw ValidationError("frequency must be positive, got " + format_g17(frequency));
    }
    const Complex jw(0.0, to_angular(frequency, unit));
    const auto dim = static_cast<Eigen::Index>(size_);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dim);

    for (const Stamp& s : stamps_) {
        switch (s.kind) {
            case ElementKind::Resistor:
                stamp_admittance(a, s.p, s.n, Complex(1.0 / s.value, 0.0));
                break;
            case ElementKind::Capacitor:
                stamp_admittance(a, s.p, s.n, jw * s.value);
                break;
            case ElementKind::Inductor:
                stamp_admittance(a, s.p, s.n, 1.0 / (jw * s.value));
                break;
            case ElementKind::VoltageSource:
                stamp_branch_incidence(a, s.p, s.n, s.branch);
                // sources other than the input are AC-shorted
                rhs(s.branch) = s.drives ? Complex(s.value, 0.0) : Complex{};
                break;
            case ElementKind::Vcvs:
                // V(out+) - V(out-) - gain * (V(in+) - V(in-)) = 0
                stamp_branch_incidence(a, s.p, s.n, s.branch);
                if (s.cp >= 0) {
                    a(s.branch, s.cp) -= s.value;
                }
                if (s.cn >= 0) {
                    a(s.branch, s.cn) += s.value;
                }
                break;
        }
    }

    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    const double rcond = lu.rcond();
    if (!(rcond > kSingularRcond)) {
        throw SolveError("singular MNA system at frequency " + format_g17(frequency) +
                             " (rcond = " + format_g17(rcond) + ")",
                         rcond, frequency);
    }
    const Eigen::VectorXcd x = lu.solve(rhs);
    if (!x.allFinite()) {
        throw SolveError("non-finite MNA solution at frequency " + format_g17(frequency), rcond,
                         frequency);
    }
    return output_ < 0 ? Complex{} : x(output_);
}

Complex solve_output_voltage(const Circuit& circuit, double frequency, FrequencyUnit unit) {
    return AcSystem(circuit).output_voltage(frequency, unit);
}

Complex solve_ac(const Circuit& circuit, double frequency, FrequencyUnit unit) {
    return AcSystem(circuit).gain(frequency, unit);
}

double magnitude_db(Complex gain) noexcept {
    return 20.0 * std::log10(std::abs(gain));
}

ResponseCurve sweep(const Circuit& circuit, std::span<const double> grid, FrequencyUnit unit) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
            throw ValidationError("sweep grid must be positive and strictly increasing (index " +
                                  std::to_string(i) + ")");
        }
    }
    ResponseCurve curve;
    curve.frequencies.assign(grid.begin(), grid.end());
    curve.magnitudes_db.reserve(grid.size());
    const AcSystem system(circuit);
    for (const double f : grid) {
        const double db = magnitude_db(system.gain(f, unit));
        if (!std::isfinite(db)) {
            throw SolveError("output magnitude is zero at frequency " + format_g17(f), 0.0, f);
        }
        curve.magnitudes_db.push_back(db);
    }
    return curve;
}

std::vector<double> make_grid(double f_min, double f_max, std::size_t points, bool log_spacing) {
    if (!(f_min > 0.0) || !(f_max >= f_min) || points == 0 ||
        (points > 1 && !(f_max > f_min))) {
        throw ValidationError("invalid grid: need 0 < f_min < f_max and points >= 1");
    }
    std::vector<double> grid(points);
    if (points == 1) {
        grid[0] = f_min;
        return grid;
    }
    const double last = static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / last;
        grid[i] = log_spacing ? f_min * std::pow(f_max / f_min, t) : f_min + (f_max - f_min) * t;
    }
    grid.front() = f_min;
    grid.back() = f_max;
    return grid;
}

std::string response_to_csv(const ResponseCurve& curve) {
    std::string out = "freq,mag_db\n";
    for (std::size_t i = 0; i < curve.frequencies.size(); ++i) {
        out += format_g17(curve.frequencies[i]);
        out += ',';
        out += format_g17(curve.magnitudes_db[i]);
        out += '\n';
    }
    return out;
}

}  // namespace ftdiag
