#pragma once

// Signature space and fault trajectories.
//
// A test vector of n frequencies maps every circuit response to a point of
// R^n: the dB difference from the golden response at each test frequency.
// The golden circuit sits at the origin, and sweeping one component's
// deviation traces a piecewise-linear trajectory through it.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ftdiag/faultlib.hpp"
#include "ftdiag/geometry.hpp"

namespace ftdiag {

struct TestVector {
    std::vector<double> frequencies;

    [[nodiscard]] std::size_t size() const noexcept { return frequencies.size(); }
    /// Repeated frequencies collapse the signature space onto a diagonal.
    [[nodiscard]] bool degenerate() const;

    friend bool operator==(const TestVector&, const TestVector&) = default;
};

/// Throws ValidationError unless non-empty and strictly positive.
void validate(const TestVector& tv);

struct SignaturePoint {
    Coords coords;
    std::optional<FaultSpec> fault;  // nullopt: golden

    [[nodiscard]] bool golden() const noexcept { return !fault.has_value(); }
    [[nodiscard]] double deviation() const noexcept { return fault ? fault->deviation : 0.0; }
};

/// faulty - golden, componentwise. Throws ValidationError on length mismatch.
[[nodiscard]] Coords signature(std::span<const double> golden_db, std::span<const double> faulty_db);

struct Trajectory {
    std::string component;
    // Ascending deviation; exactly one golden point (deviation 0, origin).
    std::vector<SignaturePoint> points;
    bool degenerate = false;

    [[nodiscard]] std::size_t segment_count() const noexcept {
        return points.empty() ? 0 : points.size() - 1;
    }
    [[nodiscard]] std::size_t dimension() const noexcept {
        return points.empty() ? 0 : points.front().coords.size();
    }
};

/// One trajectory per target, in target order.
[[nodiscard]] std::vector<Trajectory> build_trajectories(const FaultSimulator& simulator,
                                                         const TestVector& tv);
[[nodiscard]] std::vector<Trajectory> build_trajectories(const Circuit& circuit,
                                                         const FaultConfig& config,
                                                         const TestVector& tv,
                                                         FrequencyUnit unit = FrequencyUnit::RadPerSec);

struct Incidence {
    std::size_t trajectory_a = 0;
    std::size_t segment_a = 0;
    std::size_t trajectory_b = 0;
    std::size_t segment_b = 0;
    ContactKind kind = ContactKind::Cross;
    Coords point;
};

struct IntersectionReport {
    std::size_t count = 0;
    std::vector<Incidence> detail;
};

/// Counts contacts between segments of distinct trajectories (I).
///
/// Each segment pair closer than `tol` contributes one incidence, either a
/// crossing or a collinear overlap (common pathway). Crossings within
/// `origin_tol` of the golden point are ignored (0 disables the rule), and crossings of one
/// trajectory pair that coincide within `tol` (a crossing exactly at a shared
/// vertex) are counted once. Throws ValidationError on mixed dimensions.
[[nodiscard]] IntersectionReport count_intersections(std::span<const Trajectory> trajectories,
                                                     double tol, double origin_tol);
[[nodiscard]] inline IntersectionReport count_intersections(
    std::span<const Trajectory> trajectories, double tol) {
    return count_intersections(trajectories, tol, tol);
}

/// Incidence count for a single pair of trajectories.
[[nodiscard]] std::size_t count_pair(const Trajectory& a, const Trajectory& b, double tol,
                                     double origin_tol);

/// `component,deviation,x1,...,xn`, golden rows included with deviation 0.
[[nodiscard]] std::string trajectories_to_csv(std::span<const Trajectory> trajectories);
/// Inverse of trajectories_to_csv. Throws ParseError.
[[nodiscard]] std::vector<Trajectory> parse_trajectories_csv(std::string_view text);

/// `comp_a,seg_a,comp_b,seg_b,kind,px,py`.
[[nodiscard]] std::string incidences_to_csv(std::span<const Trajectory> trajectories,
                                            const IntersectionReport& report);

}  // namespace ftdiag
