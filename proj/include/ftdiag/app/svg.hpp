#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>

#include "ftdiag/trajectory.hpp"

namespace ftdiag::app {

/// Signature-space map: one polyline per trajectory over the first two
/// coordinates (a 1-D signature is drawn on the x axis), the golden point
/// circled at the origin, a legend, and an optional query drawn as a star.
[[nodiscard]] std::string render_trajectory_svg(std::span<const Trajectory> trajectories,
                                                std::optional<std::array<double, 2>> query = {});

}  // namespace ftdiag::app
