#pragma once

// Segment geometry in signature space. Points are plain coordinate spans; the
// planar predicates take exactly two coordinates per point.

#include <optional>
#include <span>
#include <vector>

namespace ftdiag {

using Coords = std::vector<double>;

[[nodiscard]] double distance(std::span<const double> a, std::span<const double> b);
[[nodiscard]] double norm(std::span<const double> a);

/// Twice the signed area of triangle (o, a, b); > 0 for a left turn.
[[nodiscard]] double orient2d(std::span<const double> o, std::span<const double> a,
                              std::span<const double> b) noexcept;

/// Minimum distance between planar segments a0-a1 and b0-b1. Proper crossings
/// are detected by strict orientation tests; every other configuration
/// (touching, collinear, disjoint) falls back to endpoint-to-segment distances.
[[nodiscard]] double segment_distance_2d(std::span<const double> a0, std::span<const double> a1,
                                         std::span<const double> b0, std::span<const double> b1);

struct ClosestPoints {
    Coords on_a;
    Coords on_b;
    double distance = 0.0;
};

/// Closest points between two segments of any dimension (degenerate
/// segments allowed).
[[nodiscard]] ClosestPoints closest_points(std::span<const double> a0, std::span<const double> a1,
                                           std::span<const double> b0, std::span<const double> b1);

enum class ContactKind { Cross, Overlap };

struct Contact {
    ContactKind kind = ContactKind::Cross;
    Coords point;  // crossing point, or midpoint of the shared stretch
};

/// Contact between two segments closer than `tol`.
///
/// Planar segments (2 coordinates) that run collinear within `tol` over a
/// stretch longer than `tol` are an Overlap; any other contact is a Cross.
/// Other dimensions only report Cross when the minimum distance is below
/// `tol`. A Cross whose point lies within `exclusion_radius` of
/// `exclusion_center` is ignored (the shared golden point).
[[nodiscard]] std::optional<Contact> segment_contact(std::span<const double> a0,
                                                     std::span<const double> a1,
                                                     std::span<const double> b0,
                                                     std::span<const double> b1, double tol,
                                                     std::span<const double> exclusion_center,
                                                     double exclusion_radius);

struct Projection {
    double t = 0.0;            // clamped to [0, 1]
    double t_unclamped = 0.0;  // parameter on the supporting line
    double distance = 0.0;     // to the clamped foot
    bool has_perpendicular = false;
};

/// Orthogonal projection of `point` onto segment a-b. Throws ValidationError
/// for a zero-length segment or mismatched dimensions.
[[nodiscard]] Projection project(std::span<const double> point, std::span<const double> a,
                                 std::span<const double> b);

}  // namespace ftdiag
