#pragma once

// Nearest-trajectory fault classification.
//
// An unknown signature point is assigned to the trajectory it is closest to,
// measured by perpendicular drops onto trajectory segments. The deviation
// estimate (linear interpolation of the endpoint deviations at the foot of
// the perpendicular) is an extension: it labels a magnitude, not only a
// component.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ftdiag/trajectory.hpp"

namespace ftdiag {

struct Hypothesis {
    std::string component;
    double distance = 0.0;             // dB
    double estimated_deviation = 0.0;  // interpolated along the matched segment
    std::size_t segment = 0;
    bool via_perpendicular = false;  // false: nearest vertex, no perpendicular foot
};

struct DiagnosisResult {
    bool nominal = false;  // query coincides with the golden point
    bool ambiguous = false;
    // Ascending distance, one per trajectory.
    std::vector<Hypothesis> hypotheses;
};

struct DiagnoseOptions {
    double ambiguity_margin = 0.05;  // dB
    double origin_tol = 1e-6;        // dB
};

/// Ranks every trajectory by its distance to `point`.
///
/// Per trajectory the candidates are the perpendicular feet on its segments
/// and its fault vertices; the golden point is never a candidate foot. A
/// query within origin_tol of the golden point returns a nominal result.
/// Throws ValidationError for empty input or mismatched dimensions.
[[nodiscard]] DiagnosisResult classify(std::span<const double> point,
                                       std::span<const Trajectory> trajectories,
                                       const DiagnoseOptions& options = {});

/// `rank,component,distance_db,est_deviation,via_perpendicular`.
[[nodiscard]] std::string diagnosis_to_csv(const DiagnosisResult& result);
/// Human-readable multi-line report.
[[nodiscard]] std::string diagnosis_report(const DiagnosisResult& result);

}  // namespace ftdiag
