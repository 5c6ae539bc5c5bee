#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ftdiag {

/// Shortest-free, fixed 17-significant-digit rendering used by every CSV
/// writer so that outputs round-trip and are byte-reproducible.
[[nodiscard]] std::string format_g17(double value);

/// Splits on a single-character delimiter, keeping empty fields.
[[nodiscard]] std::vector<std::string> split(std::string_view text, char delimiter);

/// Splits on runs of spaces/tabs.
[[nodiscard]] std::vector<std::string> split_whitespace(std::string_view text);

[[nodiscard]] std::string_view trim(std::string_view text) noexcept;

/// Strict decimal parse of a whole token (no trailing characters).
[[nodiscard]] bool parse_double(std::string_view token, double& out) noexcept;

}  // namespace ftdiag
