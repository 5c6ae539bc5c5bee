#include "ftdiag/trajectory.hpp"

#include <algorithm>
#include <set>

#include "ftdiag/error.hpp"
#include "ftdiag/format.hpp"

namespace ftdiag {

namespace {

// Golden point shared by the trajectories (the origin unless translated).
Coords golden_center(std::span<const Trajectory> trajectories, std::size_t dim) {
    for (const auto& t : trajectories) {
        for (const auto& p : t.points) {
            if (p.golden()) {
                return p.coords;
            }
        }
    }
    return Coords(dim, 0.0);
}

std::vector<Incidence> pair_incidences(const Trajectory& a, std::size_t ia, const Trajectory& b,
                                       std::size_t ib, double tol, double origin_tol,
                                       std::span<const double> center) {
    std::vector<Incidence> out;
    for (std::size_t sa = 0; sa < a.segment_count(); ++sa) {
        for (std::size_t sb = 0; sb < b.segment_count(); ++sb) {
            auto contact = segment_contact(a.points[sa].coords, a.points[sa + 1].coords,
                                           b.points[sb].coords, b.points[sb + 1].coords, tol,
                                           center, origin_tol);
            if (!contact) {
                continue;
            }
            if (contact->kind == ContactKind::Cross) {
                const bool seen = std::any_of(out.begin(), out.end(), [&](const Incidence& inc) {
                    return inc.kind == ContactKind::Cross &&
                           distance(inc.point, contact->point) <= tol;
                });
                if (seen) {
                    continue;
                }
            }
            out.push_back(Incidence{ia, sa, ib, sb, contact->kind, std::move(contact->point)});
        }
    }
    return out;
}

void require_same_dimension(std::span<const Trajectory> trajectories) {
    std::optional<std::size_t> dim;
    for (const auto& t : trajectories) {
        for (const auto& p : t.points) {
            if (!dim) {
                dim = p.coords.size();
            } else if (p.coords.size() != *dim) {
                throw ValidationError("trajectory '" + t.component +
                                      "' has a point of dimension " +
                                      std::to_string(p.coords.size()) + ", expected " +
                                      std::to_string(*dim));
            }
        }
    }
}

}  // namespace

bool TestVector::degenerate() const {
    std::set<double> unique(frequencies.begin(), frequencies.end());
    return unique.size() != frequencies.size();
}

void validate(const TestVector& tv) {
    if (tv.frequencies.empty()) {
        throw ValidationError("test vector is empty");
    }
    for (const double f : tv.frequencies) {
        if (!(f > 0.0) || !std::isfinite(f)) {
            throw ValidationError("test vector frequency must be positive, got " + format_g17(f));
        }
    }
}

Coords signature(std::span<const double> golden_db, std::span<const double> faulty_db) {
    if (golden_db.size() != faulty_db.size()) {
        throw ValidationError("signature: " + std::to_string(golden_db.size()) +
                              " golden values vs " + std::to_string(faulty_db.size()) +
                              " faulty values");
    }
    Coords out(golden_db.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = faulty_db[i] - golden_db[i];
    }
    return out;
}

std::vector<Trajectory> build_trajectories(const FaultSimulator& simulator, const TestVector& tv) {
    validate(tv);
    const auto golden = simulator.golden_at(tv.frequencies);
    const auto& faults = simulator.faults();
    const bool degenerate = tv.degenerate();

    std::vector<Trajectory> out;
    out.reserve(simulator.config().targets.size());
    for (const auto& component : simulator.config().targets) {
        Trajectory t;
        t.component = component;
        t.degenerate = degenerate;
        bool origin_placed = false;
        for (std::size_t i = 0; i < faults.size(); ++i) {
            if (faults[i].component != component) {
                continue;
            }
            if (!origin_placed && faults[i].deviation > 0.0) {
                t.points.push_back(SignaturePoint{Coords(tv.size(), 0.0), std::nullopt});
                origin_placed = true;
            }
            t.points.push_back(
                SignaturePoint{signature(golden, simulator.fault_at(i, tv.frequencies)), faults[i]});
        }
        if (!origin_placed) {
            t.points.push_back(SignaturePoint{Coords(tv.size(), 0.0), std::nullopt});
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<Trajectory> build_trajectories(const Circuit& circuit, const FaultConfig& config,
                                           const TestVector& tv, FrequencyUnit unit) {
    return build_trajectories(FaultSimulator(circuit, config, unit), tv);
}

IntersectionReport count_intersections(std::span<const Trajectory> trajectories, double tol,
                                       double origin_tol) {
    if (!(tol > 0.0) || !(origin_tol >= 0.0)) {
        throw ValidationError("count_intersections: tol must be positive");
    }
    require_same_dimension(trajectories);
    IntersectionReport report;
    if (trajectories.empty()) {
        return report;
    }
    const Coords center = golden_center(trajectories, trajectories.front().dimension());
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
        for (std::size_t j = i + 1; j < trajectories.size(); ++j) {
            auto found = pair_incidences(trajectories[i], i, trajectories[j], j, tol, origin_tol,
                                         center);
            report.detail.insert(report.detail.end(), std::make_move_iterator(found.begin()),
                                 std::make_move_iterator(found.end()));
        }
    }
    report.count = report.detail.size();
    return report;
}

std::size_t count_pair(const Trajectory& a, const Trajectory& b, double tol, double origin_tol) {
    const Trajectory both[] = {a, b};
    return count_intersections(both, tol, origin_tol).count;
}

std::string trajectories_to_csv(std::span<const Trajectory> trajectories) {
    const std::size_t dim = trajectories.empty() ? 0 : trajectories.front().dimension();
    std::string out = "component,deviation";
    for (std::size_t k = 1; k <= dim; ++k) {
        out += ",x" + std::to_string(k);
    }
    out += '\n';
    for (const auto& t : trajectories) {
        for (const auto& p : t.points) {
            out += t.component;
            out += ',';
            out += format_g17(p.deviation());
            for (const double c : p.coords) {
                out += ',';
                out += format_g17(c);
            }
            out += '\n';
        }
    }
    return out;
}

std::vector<Trajectory> parse_trajectories_csv(std::string_view text) {
    const auto lines = split(text, '\n');
    if (lines.empty() || trim(lines.front()).empty()) {
        throw ParseError(1, "", "trajectory file is empty");
    }
    const auto header = split(trim(lines.front()), ',');
    if (header.size() < 3 || header[0] != "component" || header[1] != "deviation") {
        throw ParseError(1, std::string(trim(lines.front())),
                         "expected header component,deviation,x1,...");
    }
    const std::size_t dim = header.size() - 2;

    std::vector<Trajectory> out;
    for (std::size_t ln = 1; ln < lines.size(); ++ln) {
        const auto line = trim(lines[ln]);
        if (line.empty()) {
            continue;
        }
        const auto fields = split(line, ',');
        if (fields.size() != dim + 2) {
            throw ParseError(ln + 1, std::string(line),
                             "expected " + std::to_string(dim + 2) + " fields");
        }
        SignaturePoint p;
        double deviation = 0.0;
        if (!parse_double(fields[1], deviation)) {
            throw ParseError(ln + 1, fields[1], "malformed deviation");
        }
        p.coords.resize(dim);
        for (std::size_t k = 0; k < dim; ++k) {
            if (!parse_double(fields[k + 2], p.coords[k])) {
                throw ParseError(ln + 1, fields[k + 2], "malformed coordinate");
            }
        }
        if (deviation != 0.0) {
            p.fault = FaultSpec{fields[0], deviation};
        }
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const Trajectory& t) { return t.component == fields[0]; });
        if (it == out.end()) {
            out.push_back(Trajectory{fields[0], {}, false});
            it = std::prev(out.end());
        }
        if (!it->points.empty() && !(deviation > it->points.back().deviation())) {
            throw ParseError(ln + 1, fields[1], "deviations must be strictly increasing");
        }
        it->points.push_back(std::move(p));
    }
    if (out.empty()) {
        throw ParseError(0, "", "trajectory file has no data rows");
    }
    return out;
}

std::string incidences_to_csv(std::span<const Trajectory> trajectories,
                              const IntersectionReport& report) {
    std::string out = "comp_a,seg_a,comp_b,seg_b,kind,px,py\n";
    for (const auto& inc : report.detail) {
        out += trajectories[inc.trajectory_a].component + ',' + std::to_string(inc.segment_a) +
               ',' + trajectories[inc.trajectory_b].component + ',' +
               std::to_string(inc.segment_b) + ',' +
               (inc.kind == ContactKind::Cross ? "cross" : "overlap") + ',' +
               format_g17(inc.point.empty() ? 0.0 : inc.point[0]) + ',' +
               format_g17(inc.point.size() < 2 ? 0.0 : inc.point[1]) + '\n';
    }
    return out;
}

}  // namespace ftdiag
