#include "ftdiag/app/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace ftdiag::app {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 520.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;  // legend column
constexpr double kTop = 30.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char*, 10> kPalette = {
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

struct Frame {
    double x_lo, x_hi, y_lo, y_hi;

    [[nodiscard]] double px(double x) const {
        return kLeft + (x - x_lo) / (x_hi - x_lo) * (kWidth - kLeft - kRight);
    }
    [[nodiscard]] double py(double y) const {
        return kHeight - kBottom - (y - y_lo) / (y_hi - y_lo) * (kHeight - kTop - kBottom);
    }
};

double coord(const SignaturePoint& p, std::size_t k) {
    return k < p.coords.size() ? p.coords[k] : 0.0;
}

Frame fit(std::span<const Trajectory> trajectories, std::optional<std::array<double, 2>> query) {
    double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;
    const auto include = [&](double x, double y) {
        x_lo = std::min(x_lo, x);
        x_hi = std::max(x_hi, x);
        y_lo = std::min(y_lo, y);
        y_hi = std::max(y_hi, y);
    };
    for (const auto& t : trajectories) {
        for (const auto& p : t.points) {
            include(coord(p, 0), coord(p, 1));
        }
    }
    if (query) {
        include((*query)[0], (*query)[1]);
    }
    const auto pad = [](double& lo, double& hi) {
        const double span = hi - lo > 0.0 ? hi - lo : 1.0;
        lo -= 0.05 * span;
        hi += 0.05 * span;
    };
    pad(x_lo, x_hi);
    pad(y_lo, y_hi);
    return Frame{x_lo, x_hi, y_lo, y_hi};
}

std::string star(double cx, double cy, double r_outer, double r_inner) {
    std::string pts;
    for (int i = 0; i < 10; ++i) {
        const double r = i % 2 == 0 ? r_outer : r_inner;
        const double a = -std::numbers::pi / 2.0 + i * std::numbers::pi / 5.0;
        if (i > 0) {
            pts += ' ';
        }
        pts += num(cx + r * std::cos(a)) + ',' + num(cy + r * std::sin(a));
    }
    return pts;
}

}  // namespace

std::string render_trajectory_svg(std::span<const Trajectory> trajectories,
                                  std::optional<std::array<double, 2>> query) {
    const Frame f = fit(trajectories, query);
    const double plot_right = kWidth - kRight;
    const double plot_bottom = kHeight - kBottom;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
           num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + ' ' + num(kHeight) +
           "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
           "\" fill=\"white\"/>\n";
    svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" +
           num(plot_right - kLeft) + "\" height=\"" + num(plot_bottom - kTop) +
           "\" fill=\"none\" stroke=\"#444\"/>\n";

    // axes through the golden point
    svg += "<line class=\"axis\" x1=\"" + num(kLeft) + "\" y1=\"" + num(f.py(0.0)) + "\" x2=\"" +
           num(plot_right) + "\" y2=\"" + num(f.py(0.0)) + "\" stroke=\"#bbb\"/>\n";
    svg += "<line class=\"axis\" x1=\"" + num(f.px(0.0)) + "\" y1=\"" + num(kTop) + "\" x2=\"" +
           num(f.px(0.0)) + "\" y2=\"" + num(plot_bottom) + "\" stroke=\"#bbb\"/>\n";
    svg += "<text x=\"" + num((kLeft + plot_right) / 2.0) + "\" y=\"" + num(kHeight - 20.0) +
           "\" text-anchor=\"middle\">x1 (dB from golden)</text>\n";
    svg += "<text x=\"20\" y=\"" + num((kTop + plot_bottom) / 2.0) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " +
           num((kTop + plot_bottom) / 2.0) + ")\">x2 (dB from golden)</text>\n";
    svg += "<text x=\"" + num(kLeft) + "\" y=\"" + num(plot_bottom + 16.0) + "\">" +
           num(f.x_lo) + "</text>\n";
    svg += "<text x=\"" + num(plot_right) + "\" y=\"" + num(plot_bottom + 16.0) +
           "\" text-anchor=\"end\">" + num(f.x_hi) + "</text>\n";
    svg += "<text x=\"" + num(kLeft - 6.0) + "\" y=\"" + num(plot_bottom) +
           "\" text-anchor=\"end\">" + num(f.y_lo) + "</text>\n";
    svg += "<text x=\"" + num(kLeft - 6.0) + "\" y=\"" + num(kTop + 10.0) +
           "\" text-anchor=\"end\">" + num(f.y_hi) + "</text>\n";

    for (std::size_t i = 0; i < trajectories.size(); ++i) {
        const auto& t = trajectories[i];
        const char* color = kPalette[i % kPalette.size()];
        std::string pts;
        for (const auto& p : t.points) {
            if (!pts.empty()) {
                pts += ' ';
            }
            pts += num(f.px(coord(p, 0))) + ',' + num(f.py(coord(p, 1)));
        }
        svg += "<polyline class=\"trajectory\" data-component=\"" + t.component +
               "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"" + pts +
               "\"/>\n";
        for (const auto& p : t.points) {
            if (!p.golden()) {
                svg += "<circle cx=\"" + num(f.px(coord(p, 0))) + "\" cy=\"" +
                       num(f.py(coord(p, 1))) + "\" r=\"2\" fill=\"" + color + "\"/>\n";
            }
        }
    }

    svg += "<circle class=\"golden\" cx=\"" + num(f.px(0.0)) + "\" cy=\"" + num(f.py(0.0)) +
           "\" r=\"5\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

    if (query) {
        svg += "<polygon class=\"query\" points=\"" +
               star(f.px((*query)[0]), f.py((*query)[1]), 8.0, 3.5) +
               "\" fill=\"gold\" stroke=\"black\"/>\n";
    }

    // legend
    svg += "<g class=\"legend\">\n";
    double y = kTop + 10.0;
    const double lx = plot_right + 15.0;
    for (std::size_t i = 0; i < trajectories.size(); ++i, y += 18.0) {
        const char* color = kPalette[i % kPalette.size()];
        svg += "<line x1=\"" + num(lx) + "\" y1=\"" + num(y) + "\" x2=\"" + num(lx + 20.0) +
               "\" y2=\"" + num(y) + "\" stroke=\"" + color + "\" stroke-width=\"3\"/>\n";
        svg += "<text x=\"" + num(lx + 26.0) + "\" y=\"" + num(y + 4.0) + "\">" +
               trajectories[i].component + "</text>\n";
    }
    svg += "<circle cx=\"" + num(lx + 10.0) + "\" cy=\"" + num(y) +
           "\" r=\"5\" fill=\"none\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(lx + 26.0) + "\" y=\"" + num(y + 4.0) + "\">golden</text>\n";
    if (query) {
        y += 18.0;
        svg += "<polygon points=\"" + star(lx + 10.0, y, 7.0, 3.0) +
               "\" fill=\"gold\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(lx + 26.0) + "\" y=\"" + num(y + 4.0) + "\">query</text>\n";
    }
    svg += "</g>\n</svg>\n";
    return svg;
}

}  // namespace ftdiag::app
