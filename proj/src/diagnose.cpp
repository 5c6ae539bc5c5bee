#include "ftdiag/diagnose.hpp"

#include <algorithm>
#include <cstdio>

#include "ftdiag/error.hpp"
#include "ftdiag/format.hpp"

namespace ftdiag {

namespace {

Coords golden_point(const Trajectory& t) {
    for (const auto& p : t.points) {
        if (p.golden()) {
            return p.coords;
        }
    }
    return Coords(t.dimension(), 0.0);
}

std::optional<Hypothesis> best_on(const Trajectory& t, std::span<const double> point,
                                  std::span<const double> center, double origin_tol) {
    std::optional<Hypothesis> best;
    const auto offer = [&](double dist, std::size_t seg, double dev, bool perp) {
        if (!best || dist < best->distance) {
            best = Hypothesis{t.component, dist, dev, seg, perp};
        }
    };
    for (std::size_t s = 0; s < t.segment_count(); ++s) {
        const auto& a = t.points[s];
        const auto& b = t.points[s + 1];
        if (a.coords == b.coords) {
            continue;
        }
        const Projection proj = project(point, a.coords, b.coords);
        if (!proj.has_perpendicular) {
            continue;
        }
        Coords foot(a.coords.size());
        for (std::size_t k = 0; k < foot.size(); ++k) {
            foot[k] = a.coords[k] + proj.t * (b.coords[k] - a.coords[k]);
        }
        if (distance(foot, center) <= origin_tol) {
            continue;
        }
        offer(proj.distance, s,
              a.deviation() + proj.t * (b.deviation() - a.deviation()), true);
    }
    // Vertices catch queries outside every perpendicular band (beyond a
    // trajectory end or in the outer wedge of a bend).
    for (std::size_t k = 0; k < t.points.size(); ++k) {
        const auto& v = t.points[k];
        if (v.golden()) {
            continue;
        }
        offer(distance(point, v.coords), k > 0 ? k - 1 : 0, v.deviation(), false);
    }
    return best;
}

}  // namespace

DiagnosisResult classify(std::span<const double> point, std::span<const Trajectory> trajectories,
                         const DiagnoseOptions& options) {
    if (trajectories.empty()) {
        throw ValidationError("classify: no trajectories");
    }
    for (const auto& t : trajectories) {
        for (const auto& p : t.points) {
            if (p.coords.size() != point.size()) {
                throw ValidationError("classify: query has dimension " +
                                      std::to_string(point.size()) + ", trajectory '" +
                                      t.component + "' has " + std::to_string(p.coords.size()));
            }
        }
    }
    const Coords center = golden_point(trajectories.front());
    DiagnosisResult result;
    if (distance(point, center) <= options.origin_tol) {
        result.nominal = true;
        return result;
    }
    for (const auto& t : trajectories) {
        if (auto h = best_on(t, point, center, options.origin_tol)) {
            result.hypotheses.push_back(std::move(*h));
        }
    }
    std::stable_sort(result.hypotheses.begin(), result.hypotheses.end(),
                     [](const Hypothesis& a, const Hypothesis& b) { return a.distance < b.distance; });
    result.ambiguous = result.hypotheses.size() >= 2 &&
                       result.hypotheses[1].distance - result.hypotheses[0].distance <
                           options.ambiguity_margin;
    return result;
}

std::string diagnosis_to_csv(const DiagnosisResult& result) {
    std::string out = "rank,component,distance_db,est_deviation,via_perpendicular\n";
    for (std::size_t i = 0; i < result.hypotheses.size(); ++i) {
        const auto& h = result.hypotheses[i];
        out += std::to_string(i + 1) + ',' + h.component + ',' + format_g17(h.distance) + ',' +
               format_g17(h.estimated_deviation) + ',' + (h.via_perpendicular ? "1" : "0") + '\n';
    }
    return out;
}

std::string diagnosis_report(const DiagnosisResult& result) {
    if (result.nominal) {
        return "result: nominal / no fault\n";
    }
    std::string out;
    char buf[160];
    if (!result.hypotheses.empty()) {
        const auto& top = result.hypotheses.front();
        std::snprintf(buf, sizeof buf, "result: %s (distance %.6g dB, estimated deviation %+.1f%%)\n",
                      top.component.c_str(), top.distance, 100.0 * top.estimated_deviation);
        out += buf;
    }
    if (result.ambiguous) {
        out += "warning: ambiguous, top two hypotheses are within the ambiguity margin\n";
    }
    out += "rank  component  distance_db    est_deviation  match\n";
    for (std::size_t i = 0; i < result.hypotheses.size(); ++i) {
        const auto& h = result.hypotheses[i];
        std::snprintf(buf, sizeof buf, "%4zu  %-9s  %-13.6g  %+13.4f  %s\n", i + 1,
                      h.component.c_str(), h.distance, h.estimated_deviation,
                      h.via_perpendicular ? "perpendicular" : "vertex");
        out += buf;
    }
    out += "(deviation estimates are linear interpolations along the matched segment)\n";
    return out;
}

}  // namespace ftdiag
