#pragma once

// Minimal SPICE-like netlist: parsing, validation, rendering and parametric
// fault injection. The grammar is documented in docs/netlist_format.md.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ftdiag {

inline constexpr std::string_view kGroundNode = "0";

enum class ElementKind { Resistor, Capacitor, Inductor, Vcvs, VoltageSource };

/// Number of node fields an element of this kind takes.
[[nodiscard]] std::size_t node_arity(ElementKind kind) noexcept;
/// Id prefix letter: R, C, L, E, V.
[[nodiscard]] char kind_letter(ElementKind kind) noexcept;
[[nodiscard]] std::optional<ElementKind> kind_from_letter(char letter) noexcept;
[[nodiscard]] std::string_view kind_name(ElementKind kind) noexcept;

/// Whether the element carries a passive value that can be deviated.
[[nodiscard]] constexpr bool is_passive(ElementKind kind) noexcept {
    return kind == ElementKind::Resistor || kind == ElementKind::Capacitor ||
           kind == ElementKind::Inductor;
}

struct Element {
    std::string id;
    ElementKind kind = ElementKind::Resistor;
    // Two nodes (n+, n-), or four for a vcvs (out+, out-, in+, in-).
    std::vector<std::string> nodes;
    // Ohms, farads, henries, dimensionless gain or volts.
    double value = 0.0;

    friend bool operator==(const Element&, const Element&) = default;
};

/// One component deviated by a fraction of its nominal value (+0.2 = +20%).
struct FaultSpec {
    std::string component;
    double deviation = 0.0;

    friend bool operator==(const FaultSpec&, const FaultSpec&) = default;
    friend auto operator<=>(const FaultSpec&, const FaultSpec&) = default;
};

/// Validated, immutable circuit. Instances only come out of parse_netlist,
/// Circuit::create or apply_deviation, so every instance satisfies the
/// circuit invariants.
class Circuit {
public:
    /// Validates and builds a circuit. Throws ValidationError.
    static Circuit create(std::vector<Element> elements, std::string input_source,
                          std::string output_node);

    [[nodiscard]] const std::vector<Element>& elements() const noexcept { return elements_; }
    [[nodiscard]] const std::set<std::string>& nodes() const noexcept { return nodes_; }
    [[nodiscard]] const std::string& input_source() const noexcept { return input_source_; }
    [[nodiscard]] const std::string& output_node() const noexcept { return output_node_; }

    /// Element by id, or nullptr.
    [[nodiscard]] const Element* find(std::string_view id) const noexcept;
    [[nodiscard]] const Element& input_element() const;

    /// Ids of all R/C/L elements in netlist order.
    [[nodiscard]] std::vector<std::string> passive_ids() const;

    friend bool operator==(const Circuit&, const Circuit&) = default;

private:
    Circuit() = default;

    std::vector<Element> elements_;
    std::set<std::string> nodes_;
    std::string input_source_;
    std::string output_node_;

    friend Circuit apply_deviation(const Circuit& circuit, const FaultSpec& fault);
};

/// Parses an engineering-notation number: "1k", "2.2u", "1e-6", "3meg".
/// Returns nullopt for anything else.
[[nodiscard]] std::optional<double> parse_value(std::string_view token) noexcept;

/// Throws ParseError (syntax, unknown kind, duplicate id, non-positive value,
/// missing directive) or ValidationError (topology).
[[nodiscard]] Circuit parse_netlist(std::string_view text);
[[nodiscard]] Circuit load_netlist(const std::string& path);

/// Canonical text form; parse_netlist(render_netlist(c)) == c.
[[nodiscard]] std::string render_netlist(const Circuit& circuit);

/// Copy of `circuit` with the target value scaled by (1 + deviation).
[[nodiscard]] Circuit apply_deviation(const Circuit& circuit, const FaultSpec& fault);

}  // namespace ftdiag
