#include "omsync/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "omsync/errors.hpp"

namespace omsync {

namespace {

constexpr const char* palette[] = {"#1f6fb4", "#c23b3b", "#2e8b57", "#8a5bb8", "#d98a2b"};
constexpr int n_palette = 5;

// Two-color gradient endpoints for the fourth-variable coloring.
constexpr int grad_lo[3] = {33, 102, 172};   // blue
constexpr int grad_hi[3] = {178, 24, 43};    // red
constexpr int n_buckets = 16;

std::string fmt(const char* spec, double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string px(double v) { return fmt("%.2f", v); }
std::string tick_label(double v) { return fmt("%.4g", v); }

std::string bucket_color(int bucket) {
    const double t = (n_buckets == 1) ? 0.0 : static_cast<double>(bucket) / (n_buckets - 1);
    char buf[10];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                  static_cast<int>(std::lround(grad_lo[0] + t * (grad_hi[0] - grad_lo[0]))),
                  static_cast<int>(std::lround(grad_lo[1] + t * (grad_hi[1] - grad_lo[1]))),
                  static_cast<int>(std::lround(grad_lo[2] + t * (grad_hi[2] - grad_lo[2]))));
    return buf;
}

std::string escape_text(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

struct range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void include(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finalize() {
        if (!(lo <= hi)) fail(errc::empty_series, "no finite samples to plot");
        if (lo == hi) {
            const double pad = (lo == 0.0) ? 1.0 : std::abs(lo) * 0.1;
            lo -= pad;
            hi += pad;
        }
    }
};

// Uniform-stride index list capped at max_points, endpoints kept.
std::vector<std::size_t> sample_indices(std::size_t n, int max_points) {
    std::vector<std::size_t> idx;
    const auto cap = static_cast<std::size_t>(std::max(2, max_points));
    const std::size_t stride = (n + cap - 1) / cap;
    for (std::size_t i = 0; i < n; i += stride) idx.push_back(i);
    if (idx.back() != n - 1) idx.push_back(n - 1);
    return idx;
}

} // namespace

std::string render_svg(const std::vector<svg_panel>& panels, const svg_style& style) {
    if (panels.empty()) fail(errc::empty_series, "no panels to render");
    for (const auto& panel : panels) {
        if (panel.series.empty()) fail(errc::empty_series, "panel has no series");
        for (const auto& s : panel.series) {
            if (s.x.empty()) fail(errc::empty_series, "series '" + s.label + "' is empty");
            if (s.x.size() != s.y.size())
                fail(errc::grid_mismatch, "series '" + s.label + "' x/y sizes differ");
            if (!s.color_by.empty() && s.color_by.size() != s.x.size())
                fail(errc::grid_mismatch, "series '" + s.label + "' color channel size differs");
        }
    }

    const int w = style.width;
    const int panel_h = style.height;
    const int total_h = panel_h * static_cast<int>(panels.size());
    const double ml = 74, mr = 22, mt = 38, mb = 50;

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(w) +
           "\" height=\"" + std::to_string(total_h) + "\" viewBox=\"0 0 " + std::to_string(w) +
           " " + std::to_string(total_h) + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(w) + "\" height=\"" +
           std::to_string(total_h) + "\" fill=\"#ffffff\"/>\n";

    for (std::size_t p = 0; p < panels.size(); ++p) {
        const auto& panel = panels[p];
        const double oy = static_cast<double>(panel_h) * static_cast<double>(p);
        const double x0 = ml, y0 = oy + mt;
        const double pw = w - ml - mr, ph = panel_h - mt - mb;

        range rx, ry;
        for (const auto& s : panel.series) {
            for (double v : s.x) rx.include(v);
            for (double v : s.y) ry.include(v);
        }
        for (double h : panel.h_lines) ry.include(h);
        rx.finalize();
        ry.finalize();

        auto map_x = [&](double v) { return x0 + (v - rx.lo) / (rx.hi - rx.lo) * pw; };
        auto map_y = [&](double v) { return y0 + ph - (v - ry.lo) / (ry.hi - ry.lo) * ph; };

        out += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
        out += "<rect x=\"" + px(x0) + "\" y=\"" + px(y0) + "\" width=\"" + px(pw) +
               "\" height=\"" + px(ph) + "\" fill=\"none\" stroke=\"#444444\"/>\n";

        // Ticks.
        for (int t = 0; t <= 4; ++t) {
            const double fx = rx.lo + (rx.hi - rx.lo) * t / 4.0;
            const double sx = map_x(fx);
            out += "<line x1=\"" + px(sx) + "\" y1=\"" + px(y0 + ph) + "\" x2=\"" + px(sx) +
                   "\" y2=\"" + px(y0 + ph + 5) + "\" stroke=\"#444444\"/>\n";
            out += "<text x=\"" + px(sx) + "\" y=\"" + px(y0 + ph + 18) +
                   "\" text-anchor=\"middle\">" + tick_label(fx) + "</text>\n";
            const double fy = ry.lo + (ry.hi - ry.lo) * t / 4.0;
            const double sy = map_y(fy);
            out += "<line x1=\"" + px(x0 - 5) + "\" y1=\"" + px(sy) + "\" x2=\"" + px(x0) +
                   "\" y2=\"" + px(sy) + "\" stroke=\"#444444\"/>\n";
            out += "<text x=\"" + px(x0 - 8) + "\" y=\"" + px(sy + 4) +
                   "\" text-anchor=\"end\">" + tick_label(fy) + "</text>\n";
        }

        if (!panel.title.empty())
            out += "<text x=\"" + px(x0 + pw / 2) + "\" y=\"" + px(oy + 20) +
                   "\" text-anchor=\"middle\" font-size=\"14\">" + escape_text(panel.title) +
                   "</text>\n";
        if (!panel.x_label.empty())
            out += "<text x=\"" + px(x0 + pw / 2) + "\" y=\"" + px(y0 + ph + 38) +
                   "\" text-anchor=\"middle\">" + escape_text(panel.x_label) + "</text>\n";
        if (!panel.y_label.empty())
            out += "<text x=\"" + px(16) + "\" y=\"" + px(y0 + ph / 2) +
                   "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " + px(y0 + ph / 2) +
                   ")\">" + escape_text(panel.y_label) + "</text>\n";

        for (double h : panel.h_lines) {
            const double sy = map_y(h);
            out += "<line x1=\"" + px(x0) + "\" y1=\"" + px(sy) + "\" x2=\"" + px(x0 + pw) +
                   "\" y2=\"" + px(sy) +
                   "\" stroke=\"#888888\" stroke-dasharray=\"6 4\"/>\n";
        }

        for (std::size_t si = 0; si < panel.series.size(); ++si) {
            const auto& s = panel.series[si];
            const char* color = palette[si % n_palette];
            const auto idx = sample_indices(s.x.size(), style.max_points_per_series);

            if (idx.size() == 1 || s.x.size() == 1) {
                out += "<circle cx=\"" + px(map_x(s.x[0])) + "\" cy=\"" + px(map_y(s.y[0])) +
                       "\" r=\"4\" fill=\"" + color + "\"/>\n";
            } else if (s.color_by.empty()) {
                // Break the polyline at non-finite samples (gap markers).
                std::string points;
                auto flush = [&]() {
                    if (points.empty()) return;
                    out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
                           "\" stroke-width=\"1.2\" points=\"" + points + "\"/>\n";
                    points.clear();
                };
                for (const std::size_t i : idx) {
                    if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                        flush();
                        continue;
                    }
                    if (!points.empty()) points += ' ';
                    points += px(map_x(s.x[i])) + "," + px(map_y(s.y[i]));
                }
                flush();
            } else {
                // Fourth-variable coloring: segments grouped into quantized
                // color buckets, one path per bucket.
                range rc;
                for (double v : s.color_by) rc.include(v);
                rc.finalize();
                std::vector<std::string> paths(n_buckets);
                for (std::size_t n = 0; n + 1 < idx.size(); ++n) {
                    const std::size_t i = idx[n], j = idx[n + 1];
                    if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]) ||
                        !std::isfinite(s.x[j]) || !std::isfinite(s.y[j]) ||
                        !std::isfinite(s.color_by[i]))
                        continue;
                    const double t = (s.color_by[i] - rc.lo) / (rc.hi - rc.lo);
                    int b = static_cast<int>(t * n_buckets);
                    b = std::clamp(b, 0, n_buckets - 1);
                    paths[static_cast<std::size_t>(b)] += "M" + px(map_x(s.x[i])) + " " +
                                                          px(map_y(s.y[i])) + "L" +
                                                          px(map_x(s.x[j])) + " " +
                                                          px(map_y(s.y[j]));
                }
                for (int b = 0; b < n_buckets; ++b)
                    if (!paths[static_cast<std::size_t>(b)].empty())
                        out += "<path fill=\"none\" stroke=\"" + bucket_color(b) +
                               "\" stroke-width=\"1\" d=\"" + paths[static_cast<std::size_t>(b)] +
                               "\"/>\n";
            }

            if (!s.label.empty()) {
                const double lx = x0 + pw - 150, ly = y0 + 16 + 16 * static_cast<double>(si);
                out += "<line x1=\"" + px(lx) + "\" y1=\"" + px(ly - 4) + "\" x2=\"" +
                       px(lx + 22) + "\" y2=\"" + px(ly - 4) + "\" stroke=\"" + color +
                       "\" stroke-width=\"2\"/>\n";
                out += "<text x=\"" + px(lx + 28) + "\" y=\"" + px(ly) + "\">" +
                       escape_text(s.label) + "</text>\n";
            }
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace omsync
