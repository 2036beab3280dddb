#pragma once

// Report formatting: fixed-precision numbers, CSV and SVG output.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdyn/error.hpp"
#include "qdyn/phases.hpp"
#include "qdyn/semisimple.hpp"

namespace qdyn::io {

inline constexpr int kSignificantDigits = 12;

/// Text with 12 significant digits, lowercase exponent.
inline std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", kSignificantDigits, x);
    return buf;
}

/// x rounded to 12 significant digits, for JSON fields. The JSON writer
/// prints the shortest round-trip form, so this fixes the printed digits.
inline double round_sig(double x) {
    if (!std::isfinite(x)) return x;
    const double r = std::strtod(format_number(x).c_str(), nullptr);
    return r == 0.0 ? 0.0 : r;  // no "-0"
}

/// A JSON number, or the string "-inf" for h = −∞.
inline nlohmann::ordered_json entropy_json(const Entropy& h) {
    if (h.is_minus_infinity()) return "-inf";
    return round_sig(h.value());
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw Error("write to '" + path + "' failed");
}

inline std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot read '" + path + "'");
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

inline std::string entropy_csv(const EntropyCurve& curve) {
    std::string out = "t,h\n";
    for (const auto& [t, h] : curve.samples) out += format_number(t) + "," + format_number(h.value()) + "\n";
    return out;
}

namespace svg {

inline constexpr int kSize = 480;
inline constexpr double kMargin = 40.0;

inline std::string header(int width, int height) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
           std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) + " " + std::to_string(height) +
           "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

inline std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

}  // namespace svg

/// Unit circle with a dot per phase (angle in units of π). A non-empty arc
/// [u, v] (radians) is drawn over the circle, together with its negative.
inline std::string phase_svg(const std::vector<PhasePoint>& points, double arc_u = 0.0, double arc_v = 0.0) {
    const double c = svg::kSize / 2.0, rad = c - svg::kMargin;
    auto px = [&](double theta) { return svg::num(c + rad * std::cos(theta)); };
    auto py = [&](double theta) { return svg::num(c - rad * std::sin(theta)); };
    std::string out = svg::header(svg::kSize, svg::kSize);
    out += "<line x1=\"" + svg::num(svg::kMargin / 2) + "\" y1=\"" + svg::num(c) + "\" x2=\"" +
           svg::num(svg::kSize - svg::kMargin / 2) + "\" y2=\"" + svg::num(c) + "\" stroke=\"#ccc\"/>\n";
    out += "<line x1=\"" + svg::num(c) + "\" y1=\"" + svg::num(svg::kMargin / 2) + "\" x2=\"" + svg::num(c) +
           "\" y2=\"" + svg::num(svg::kSize - svg::kMargin / 2) + "\" stroke=\"#ccc\"/>\n";
    out += "<circle cx=\"" + svg::num(c) + "\" cy=\"" + svg::num(c) + "\" r=\"" + svg::num(rad) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    if (arc_v > arc_u) {
        for (double shift : {0.0, std::numbers::pi}) {
            const double a = arc_u + shift, b = arc_v + shift;
            // Counter-clockwise in math coordinates is sweep-flag 0 in SVG.
            out += "<path d=\"M " + px(a) + " " + py(a) + " A " + svg::num(rad) + " " + svg::num(rad) + " 0 " +
                   (b - a > std::numbers::pi ? "1" : "0") + " 0 " + px(b) + " " + py(b) +
                   "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"6\" stroke-opacity=\"0.6\"/>\n";
        }
    }
    for (const auto& p : points)
        out += "<circle cx=\"" + px(p.radians()) + "\" cy=\"" + py(p.radians()) + "\" r=\"3\" fill=\"#1f77b4\"/>\n";
    out += "</svg>\n";
    return out;
}

/// Polyline of (t, h). Samples with h = −∞ break the line.
inline std::string entropy_svg(const EntropyCurve& curve) {
    const int w = 640, h = 400;
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& [t, e] : curve.samples)
        if (!e.is_minus_infinity()) {
            lo = std::min(lo, e.value());
            hi = std::max(hi, e.value());
        }
    if (!(lo <= hi)) lo = hi = 0.0;
    if (hi - lo < 1e-9) {
        lo -= 1.0;
        hi += 1.0;
    }
    auto sx = [&](double t) {
        return svg::kMargin + (w - 2 * svg::kMargin) * (t - curve.t_min) / (curve.t_max - curve.t_min);
    };
    auto sy = [&](double v) { return h - svg::kMargin - (h - 2 * svg::kMargin) * (v - lo) / (hi - lo); };

    std::string out = svg::header(w, h);
    out += "<rect x=\"" + svg::num(svg::kMargin) + "\" y=\"" + svg::num(svg::kMargin) + "\" width=\"" +
           svg::num(w - 2 * svg::kMargin) + "\" height=\"" + svg::num(h - 2 * svg::kMargin) +
           "\" fill=\"none\" stroke=\"#ccc\"/>\n";
    auto label = [&](double x, double y, const std::string& text, const char* anchor) {
        out += "<text x=\"" + svg::num(x) + "\" y=\"" + svg::num(y) + "\" font-size=\"12\" font-family=\"sans-serif\" "
               "text-anchor=\"" + anchor + "\">" + text + "</text>\n";
    };
    label(svg::kMargin, h - svg::kMargin / 2, "t = " + format_number(curve.t_min), "start");
    label(w - svg::kMargin, h - svg::kMargin / 2, "t = " + format_number(curve.t_max), "end");
    label(svg::kMargin / 4, svg::kMargin - 6, "h = " + format_number(hi), "start");
    label(svg::kMargin / 4, h - svg::kMargin + 14, "h = " + format_number(lo), "start");

    std::string pts;
    auto flush = [&] {
        if (!pts.empty())
            out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
        pts.clear();
    };
    for (const auto& [t, e] : curve.samples) {
        if (e.is_minus_infinity()) {
            flush();
            continue;
        }
        if (!pts.empty()) pts += " ";
        pts += svg::num(sx(t)) + "," + svg::num(sy(e.value()));
    }
    flush();
    out += "</svg>\n";
    return out;
}

}  // namespace qdyn::io
