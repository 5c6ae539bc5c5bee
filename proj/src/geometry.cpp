#include "ftdiag/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "ftdiag/error.hpp"

namespace ftdiag {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

Coords sub(std::span<const double> a, std::span<const double> b) {
    Coords out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] - b[i];
    }
    return out;
}

// a + t * d
Coords along(std::span<const double> a, std::span<const double> d, double t) {
    Coords out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] + t * d[i];
    }
    return out;
}

Coords midpoint(std::span<const double> a, std::span<const double> b) {
    Coords out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = 0.5 * (a[i] + b[i]);
    }
    return out;
}

double point_segment_distance(std::span<const double> p, std::span<const double> a,
                              std::span<const double> b) {
    const Coords d = sub(b, a);
    const double len2 = dot(d, d);
    if (len2 == 0.0) {
        return distance(p, a);
    }
    const double t = std::clamp(dot(sub(p, a), d) / len2, 0.0, 1.0);
    return distance(p, along(a, d, t));
}

bool straddles(double u, double v) noexcept {
    return (u > 0.0 && v < 0.0) || (u < 0.0 && v > 0.0);
}

bool properly_cross(std::span<const double> a0, std::span<const double> a1,
                    std::span<const double> b0, std::span<const double> b1) noexcept {
    return straddles(orient2d(a0, a1, b0), orient2d(a0, a1, b1)) &&
           straddles(orient2d(b0, b1, a0), orient2d(b0, b1, a1));
}

void require_dims(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ValidationError("coordinate dimension mismatch");
    }
}

}  // namespace

double distance(std::span<const double> a, std::span<const double> b) {
    require_dims(a, b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

double norm(std::span<const double> a) {
    return std::sqrt(dot(a, a));
}

double orient2d(std::span<const double> o, std::span<const double> a,
                std::span<const double> b) noexcept {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double segment_distance_2d(std::span<const double> a0, std::span<const double> a1,
                           std::span<const double> b0, std::span<const double> b1) {
    if (properly_cross(a0, a1, b0, b1)) {
        return 0.0;
    }
    return std::min({point_segment_distance(a0, b0, b1), point_segment_distance(a1, b0, b1),
                     point_segment_distance(b0, a0, a1), point_segment_distance(b1, a0, a1)});
}

ClosestPoints closest_points(std::span<const double> a0, std::span<const double> a1,
                             std::span<const double> b0, std::span<const double> b1) {
    require_dims(a0, a1);
    require_dims(a0, b0);
    require_dims(b0, b1);
    const Coords da = sub(a1, a0);
    const Coords db = sub(b1, b0);
    const Coords r = sub(a0, b0);
    const double aa = dot(da, da);
    const double bb = dot(db, db);
    const double rb = dot(db, r);

    double s = 0.0;
    double t = 0.0;
    if (aa == 0.0 && bb == 0.0) {
        // both degenerate
    } else if (aa == 0.0) {
        t = std::clamp(rb / bb, 0.0, 1.0);
    } else {
        const double ra = dot(da, r);
        if (bb == 0.0) {
            s = std::clamp(-ra / aa, 0.0, 1.0);
        } else {
            const double ab = dot(da, db);
            const double denom = aa * bb - ab * ab;
            // parallel segments: any s works, start from a0
            s = denom > 1e-14 * aa * bb ? std::clamp((ab * rb - ra * bb) / denom, 0.0, 1.0) : 0.0;
            t = (ab * s + rb) / bb;
            if (t < 0.0) {
                t = 0.0;
                s = std::clamp(-ra / aa, 0.0, 1.0);
            } else if (t > 1.0) {
                t = 1.0;
                s = std::clamp((ab - ra) / aa, 0.0, 1.0);
            }
        }
    }
    ClosestPoints out{along(a0, da, s), along(b0, db, t), 0.0};
    out.distance = distance(out.on_a, out.on_b);
    return out;
}

std::optional<Contact> segment_contact(std::span<const double> a0, std::span<const double> a1,
                                       std::span<const double> b0, std::span<const double> b1,
                                       double tol, std::span<const double> exclusion_center,
                                       double exclusion_radius) {
    require_dims(a0, a1);
    require_dims(a0, b0);
    require_dims(b0, b1);
    require_dims(a0, exclusion_center);

    // bounding boxes further apart than tol cannot be in contact
    for (std::size_t k = 0; k < a0.size(); ++k) {
        if (std::min(a0[k], a1[k]) - std::max(b0[k], b1[k]) >= tol ||
            std::min(b0[k], b1[k]) - std::max(a0[k], a1[k]) >= tol) {
            return std::nullopt;
        }
    }

    Contact contact;
    if (a0.size() != 2) {
        auto cp = closest_points(a0, a1, b0, b1);
        if (!(cp.distance < tol)) {
            return std::nullopt;
        }
        contact.point = midpoint(cp.on_a, cp.on_b);
    } else {
        if (!(segment_distance_2d(a0, a1, b0, b1) < tol)) {
            return std::nullopt;
        }
        const Coords da = sub(a1, a0);
        const double len_a = norm(da);
        const double len_b = distance(b0, b1);
        if (len_a > tol && len_b > tol &&
            std::abs(orient2d(a0, a1, b0)) <= tol * len_a &&
            std::abs(orient2d(a0, a1, b1)) <= tol * len_a &&
            std::abs(orient2d(b0, b1, a0)) <= tol * len_b &&
            std::abs(orient2d(b0, b1, a1)) <= tol * len_b) {
            // collinear within tol: measure the shared stretch along a
            const double s0 = dot(sub(b0, a0), da) / len_a;
            const double s1 = dot(sub(b1, a0), da) / len_a;
            const double lo = std::max(0.0, std::min(s0, s1));
            const double hi = std::min(len_a, std::max(s0, s1));
            if (hi - lo > tol) {
                contact.kind = ContactKind::Overlap;
                contact.point = along(a0, da, 0.5 * (lo + hi) / len_a);
                return contact;
            }
        }
        if (properly_cross(a0, a1, b0, b1)) {
            const double ua = orient2d(b0, b1, a0);
            const double ub = orient2d(b0, b1, a1);
            contact.point = along(a0, da, ua / (ua - ub));
        } else {
            const auto cp = closest_points(a0, a1, b0, b1);
            contact.point = midpoint(cp.on_a, cp.on_b);
        }
    }
    if (distance(contact.point, exclusion_center) < exclusion_radius) {
        return std::nullopt;
    }
    return contact;
}

Projection project(std::span<const double> point, std::span<const double> a,
                   std::span<const double> b) {
    require_dims(point, a);
    require_dims(a, b);
    const Coords d = sub(b, a);
    const double len2 = dot(d, d);
    if (len2 == 0.0) {
        throw ValidationError("project: zero-length segment");
    }
    Projection p;
    p.t_unclamped = dot(sub(point, a), d) / len2;
    p.has_perpendicular = p.t_unclamped >= 0.0 && p.t_unclamped <= 1.0;
    p.t = std::clamp(p.t_unclamped, 0.0, 1.0);
    p.distance = distance(point, along(a, d, p.t));
    return p;
}

}  // namespace ftdiag
