#include "ftdiag/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "ftdiag/error.hpp"
#include "ftdiag/format.hpp"

namespace ftdiag {

std::size_t node_arity(ElementKind kind) noexcept {
    return kind == ElementKind::Vcvs ? 4 : 2;
}

char kind_letter(ElementKind kind) noexcept {
    switch (kind) {
        case ElementKind::Resistor: return 'R';
        case ElementKind::Capacitor: return 'C';
        case ElementKind::Inductor: return 'L';
        case ElementKind::Vcvs: return 'E';
        case ElementKind::VoltageSource: return 'V';
    }
    return '?';
}

std::optional<ElementKind> kind_from_letter(char letter) noexcept {
    switch (std::toupper(static_cast<unsigned char>(letter))) {
        case 'R': return ElementKind::Resistor;
        case 'C': return ElementKind::Capacitor;
        case 'L': return ElementKind::Inductor;
        case 'E': return ElementKind::Vcvs;
        case 'V': return ElementKind::VoltageSource;
        default: return std::nullopt;
    }
}

std::string_view kind_name(ElementKind kind) noexcept {
    switch (kind) {
        case ElementKind::Resistor: return "resistor";
        case ElementKind::Capacitor: return "capacitor";
        case ElementKind::Inductor: return "inductor";
        case ElementKind::Vcvs: return "vcvs";
        case ElementKind::VoltageSource: return "vsource";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Circuit
// ---------------------------------------------------------------------------

Circuit Circuit::create(std::vector<Element> elements, std::string input_source,
                        std::string output_node) {
    if (elements.empty()) {
        throw ValidationError("circuit has no elements");
    }
    Circuit c;
    std::unordered_set<std::string> ids;
    for (const auto& e : elements) {
        if (e.id.empty()) {
            throw ValidationError("element with empty id");
        }
        if (kind_from_letter(e.id.front()) != e.kind) {
            throw ValidationError("element '" + e.id + "': id prefix does not match kind " +
                                  std::string(kind_name(e.kind)));
        }
        if (!ids.insert(e.id).second) {
            throw ValidationError("duplicate element id '" + e.id + "'");
        }
        if (e.nodes.size() != node_arity(e.kind)) {
            throw ValidationError("element '" + e.id + "' expects " +
                                  std::to_string(node_arity(e.kind)) + " nodes");
        }
        if (!(e.value > 0.0) || !std::isfinite(e.value)) {
            throw ValidationError("element '" + e.id + "' has non-positive value");
        }
        for (const auto& n : e.nodes) {
            if (n.empty() || n.find_first_of(" \t\r\n") != std::string::npos) {
                throw ValidationError("element '" + e.id + "' has an invalid node name");
            }
            c.nodes_.insert(n);
        }
    }
    if (!c.nodes_.contains(std::string(kGroundNode))) {
        throw ValidationError("no element references ground node \"0\"");
    }
    c.elements_ = std::move(elements);
    const Element* in = c.find(input_source);
    if (in == nullptr) {
        throw ValidationError(".input references unknown element '" + input_source + "'");
    }
    if (in->kind != ElementKind::VoltageSource) {
        throw ValidationError(".input element '" + input_source + "' is not a voltage source");
    }
    if (!c.nodes_.contains(output_node)) {
        throw ValidationError(".output references unknown node '" + output_node + "'");
    }
    c.input_source_ = std::move(input_source);
    c.output_node_ = std::move(output_node);
    return c;
}

const Element* Circuit::find(std::string_view id) const noexcept {
    const auto it = std::find_if(elements_.begin(), elements_.end(),
                                 [&](const Element& e) { return e.id == id; });
    return it == elements_.end() ? nullptr : &*it;
}

const Element& Circuit::input_element() const {
    return *find(input_source_);
}

std::vector<std::string> Circuit::passive_ids() const {
    std::vector<std::string> out;
    for (const auto& e : elements_) {
        if (is_passive(e.kind)) {
            out.push_back(e.id);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

std::optional<double> parse_value(std::string_view token) noexcept {
    double v = 0.0;
    if (parse_double(token, v)) {
        return v;
    }
    std::string lower(token);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    double scale = 1.0;
    std::size_t suffix_len = 1;
    if (lower.size() > 3 && lower.ends_with("meg")) {
        scale = 1e6;
        suffix_len = 3;
    } else if (lower.size() > 1) {
        switch (lower.back()) {
            case 'f': scale = 1e-15; break;
            case 'p': scale = 1e-12; break;
            case 'n': scale = 1e-9; break;
            case 'u': scale = 1e-6; break;
            case 'm': scale = 1e-3; break;
            case 'k': scale = 1e3; break;
            case 'g': scale = 1e9; break;
            case 't': scale = 1e12; break;
            default: return std::nullopt;
        }
    } else {
        return std::nullopt;
    }
    if (!parse_double(std::string_view(lower).substr(0, lower.size() - suffix_len), v)) {
        return std::nullopt;
    }
    return v * scale;
}

Circuit parse_netlist(std::string_view text) {
    if (trim(text).empty()) {
        throw ParseError(0, "", "empty netlist");
    }
    std::vector<Element> elements;
    std::map<std::string, std::size_t> seen;  // id -> defining line
    std::optional<std::string> input;
    std::optional<std::string> output;

    std::size_t line_no = 0;
    for (const auto& raw : split(text, '\n')) {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '*') {
            continue;
        }
        const auto tokens = split_whitespace(line);
        const std::string& head = tokens.front();

        if (head.front() == '.') {
            std::string directive(head);
            std::transform(directive.begin(), directive.end(), directive.begin(),
                           [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
            if (directive == ".end") {
                break;
            }
            if (directive != ".input" && directive != ".output") {
                throw ParseError(line_no, head, "unknown directive");
            }
            if (tokens.size() != 2) {
                throw ParseError(line_no, head, directive + " takes exactly one argument");
            }
            auto& slot = directive == ".input" ? input : output;
            if (slot) {
                throw ParseError(line_no, head, "repeated " + directive + " directive");
            }
            slot = tokens[1];
            continue;
        }

        const auto kind = kind_from_letter(head.front());
        if (!kind) {
            throw ParseError(line_no, head,
                             "unknown element kind \"" + std::string(1, head.front()) + "\"");
        }
        const std::size_t arity = node_arity(*kind);
        if (tokens.size() != arity + 2) {
            throw ParseError(line_no, head,
                             std::string(kind_name(*kind)) + " expects " +
                                 std::to_string(arity) + " nodes and a value");
        }
        if (const auto it = seen.find(head); it != seen.end()) {
            throw ParseError(line_no, head,
                             "duplicate id (first defined on line " +
                                 std::to_string(it->second) + ")");
        }
        const std::string& value_token = tokens.back();
        const auto value = parse_value(value_token);
        if (!value) {
            throw ParseError(line_no, value_token, "malformed value");
        }
        if (!(*value > 0.0)) {
            throw ParseError(line_no, value_token, "non-positive value for " + head);
        }
        seen.emplace(head, line_no);
        elements.push_back(Element{head, *kind,
                                   std::vector<std::string>(tokens.begin() + 1,
                                                            tokens.begin() + 1 + arity),
                                   *value});
    }

    if (!input) {
        throw ParseError(0, "", "missing .input directive");
    }
    if (!output) {
        throw ParseError(0, "", "missing .output directive");
    }
    return Circuit::create(std::move(elements), std::move(*input), std::move(*output));
}

Circuit load_netlist(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open netlist '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_netlist(ss.str());
}

std::string render_netlist(const Circuit& circuit) {
    std::string out;
    for (const auto& e : circuit.elements()) {
        out += e.id;
        for (const auto& n : e.nodes) {
            out += ' ';
            out += n;
        }
        out += ' ';
        out += format_g17(e.value);
        out += '\n';
    }
    out += ".input " + circuit.input_source() + "\n";
    out += ".output " + circuit.output_node() + "\n";
    return out;
}

Circuit apply_deviation(const Circuit& circuit, const FaultSpec& fault) {
    const Element* target = circuit.find(fault.component);
    if (target == nullptr) {
        throw ValidationError("unknown component '" + fault.component + "'");
    }
    if (!is_passive(target->kind)) {
        throw ValidationError("component '" + fault.component + "' is a " +
                              std::string(kind_name(target->kind)) +
                              "; only R/C/L values can be deviated");
    }
    if (!std::isfinite(fault.deviation) || !(1.0 + fault.deviation > 0.0)) {
        throw ValidationError("deviation " + format_g17(fault.deviation) + " of '" +
                              fault.component + "' gives a non-positive value");
    }
    Circuit out = circuit;
    for (auto& e : out.elements_) {
        if (e.id == fault.component) {
            e.value = e.value * (1.0 + fault.deviation);
        }
    }
    return out;
}

}  // namespace ftdiag
