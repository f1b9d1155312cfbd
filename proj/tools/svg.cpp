#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace bohm::svg {

namespace {

constexpr double kW = 720.0, kH = 520.0;
constexpr double kL = 70.0, kR = 20.0, kT = 40.0, kB = 55.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Axis {
    double lo = 0.0, hi = 1.0;
    bool log = false;

    double to_unit(double v) const {
        const double a = log ? std::log10(v) : v;
        const double l = log ? std::log10(lo) : lo;
        const double h = log ? std::log10(hi) : hi;
        return (a - l) / (h - l);
    }
    std::vector<double> ticks() const {
        std::vector<double> out;
        if (log) {
            const int e0 = static_cast<int>(std::ceil(std::log10(lo) - 1e-9));
            const int e1 = static_cast<int>(std::floor(std::log10(hi) + 1e-9));
            for (int e = e0; e <= e1; ++e) out.push_back(std::pow(10.0, e));
        } else {
            const double span = hi - lo;
            const double raw = span / 6.0;
            const double mag = std::pow(10.0, std::floor(std::log10(raw)));
            double step = mag;
            for (double m : {1.0, 2.0, 5.0, 10.0})
                if (raw <= m * mag) { step = m * mag; break; }
            for (double v = std::ceil(lo / step) * step; v <= hi + step * 1e-9; v += step)
                out.push_back(std::abs(v) < step * 1e-9 ? 0.0 : v);
        }
        return out;
    }
};

void pad(Axis& ax) {
    if (ax.log) {
        if (!(ax.lo > 0.0)) ax.lo = 1e-12;
        if (!(ax.hi > ax.lo)) ax.hi = ax.lo * 10.0;
        ax.lo = std::pow(10.0, std::floor(std::log10(ax.lo)));
        ax.hi = std::pow(10.0, std::ceil(std::log10(ax.hi)));
        if (ax.hi <= ax.lo) ax.hi = ax.lo * 10.0;
    } else {
        if (!(ax.hi > ax.lo)) { ax.lo -= 1.0; ax.hi += 1.0; }
        const double m = 0.05 * (ax.hi - ax.lo);
        ax.lo -= m;
        ax.hi += m;
    }
}

}  // namespace

void write_figure(const Figure& fig, const std::string& path) {
    Axis xa, ya;
    xa.log = fig.log_x;
    ya.log = fig.log_y;
    xa.lo = ya.lo = std::numeric_limits<double>::infinity();
    xa.hi = ya.hi = -std::numeric_limits<double>::infinity();
    for (const auto& s : fig.series)
        for (const auto& [x, y] : s.pts) {
            if (fig.log_x && !(x > 0.0)) continue;
            if (fig.log_y && !(y > 0.0)) continue;
            xa.lo = std::min(xa.lo, x);
            xa.hi = std::max(xa.hi, x);
            ya.lo = std::min(ya.lo, y);
            ya.hi = std::max(ya.hi, y);
        }
    const bool empty = !(xa.lo <= xa.hi);
    if (empty) { xa.lo = fig.log_x ? 1.0 : 0.0; xa.hi = fig.log_x ? 10.0 : 1.0;
                 ya.lo = fig.log_y ? 1.0 : 0.0; ya.hi = fig.log_y ? 10.0 : 1.0; }
    pad(xa);
    pad(ya);

    auto px = [&](double v) { return kL + xa.to_unit(v) * (kW - kL - kR); };
    auto py = [&](double v) { return kH - kB - ya.to_unit(v) * (kH - kT - kB); };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
        << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << fig.title << "</text>\n";

    for (double t : xa.ticks()) {
        const double X = px(t);
        out << "<line x1=\"" << X << "\" y1=\"" << kT << "\" x2=\"" << X << "\" y2=\""
            << kH - kB << "\" stroke=\"#dddddd\"/>\n"
            << "<text x=\"" << X << "\" y=\"" << kH - kB + 18
            << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt(t) << "</text>\n";
    }
    for (double t : ya.ticks()) {
        const double Y = py(t);
        out << "<line x1=\"" << kL << "\" y1=\"" << Y << "\" x2=\"" << kW - kR << "\" y2=\"" << Y
            << "\" stroke=\"#dddddd\"/>\n"
            << "<text x=\"" << kL - 6 << "\" y=\"" << Y + 4
            << "\" text-anchor=\"end\" font-size=\"11\">" << fmt(t) << "</text>\n";
    }
    out << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kW - kL - kR
        << "\" height=\"" << kH - kT - kB << "\" fill=\"none\" stroke=\"black\"/>\n"
        << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12
        << "\" text-anchor=\"middle\" font-size=\"13\">" << fig.x_label << "</text>\n"
        << "<text x=\"16\" y=\"" << kH / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
        << "transform=\"rotate(-90 16 " << kH / 2 << ")\">" << fig.y_label << "</text>\n";

    if (fig.guide && !empty) {
        // Two-point straight line spanning the x range.
        auto gy = [&](double x) {
            return fig.log_x && fig.log_y
                       ? fig.guide_offset * std::pow(x, fig.guide_slope)
                       : fig.guide_offset + fig.guide_slope * x;
        };
        out << "<line x1=\"" << px(xa.lo) << "\" y1=\"" << py(gy(xa.lo)) << "\" x2=\""
            << px(xa.hi) << "\" y2=\"" << py(gy(xa.hi))
            << "\" stroke=\"#888888\" stroke-dasharray=\"2 3\"/>\n";
    }

    for (const auto& s : fig.series) {
        if (s.scatter) {
            for (const auto& [x, y] : s.pts) {
                if (fig.log_x && !(x > 0.0)) continue;
                if (fig.log_y && !(y > 0.0)) continue;
                out << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y)
                    << "\" r=\"1.2\" fill=\"" << s.color << "\"/>\n";
            }
        } else {
            out << "<polyline fill=\"none\" stroke=\"" << s.color << "\""
                << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
            for (const auto& [x, y] : s.pts) {
                if (fig.log_x && !(x > 0.0)) continue;
                if (fig.log_y && !(y > 0.0)) continue;
                out << fmt(px(x)) << ',' << fmt(py(y)) << ' ';
            }
            out << "\"/>\n";
        }
    }

    double ly = kT + 16;
    for (const auto& s : fig.series) {
        if (s.label.empty()) continue;
        out << "<line x1=\"" << kW - kR - 150 << "\" y1=\"" << ly << "\" x2=\"" << kW - kR - 120
            << "\" y2=\"" << ly << "\" stroke=\"" << s.color << "\""
            << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n"
            << "<text x=\"" << kW - kR - 114 << "\" y=\"" << ly + 4 << "\" font-size=\"12\">"
            << s.label << "</text>\n";
        ly += 18;
    }
    if (!fig.legend_extra.empty())
        out << "<text x=\"" << kW - kR - 150 << "\" y=\"" << ly + 4 << "\" font-size=\"12\">"
            << fig.legend_extra << "</text>\n";
    out << "</svg>\n";
}

void write_heatmap(const std::vector<double>& x, const std::vector<double>& y,
                   const std::vector<double>& v, const std::string& title,
                   const std::string& path) {
    if (x.size() != v.size() || y.size() != v.size())
        throw std::runtime_error("heatmap inputs must have equal length");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
        << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title << "</text>\n";
    if (!v.empty()) {
        const auto [xl, xh] = std::minmax_element(x.begin(), x.end());
        const auto [yl, yh] = std::minmax_element(y.begin(), y.end());
        const double vmax = *std::max_element(v.begin(), v.end());
        const double sx = (kW - kL - kR) / std::max(*xh - *xl, 1e-12);
        const double sy = (kH - kT - kB) / std::max(*yh - *yl, 1e-12);
        // Cell size from the smallest positive coordinate gap.
        double cell = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < x.size(); ++i) {
            const double d = std::abs(x[i] - x[i - 1]);
            if (d > 1e-12) cell = std::min(cell, d);
        }
        if (!std::isfinite(cell)) cell = 1.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const int g = 255 - static_cast<int>(std::round(
                                    235.0 * (vmax > 0.0 ? v[i] / vmax : 0.0)));
            out << "<rect x=\"" << kL + (x[i] - *xl) * sx << "\" y=\""
                << kH - kB - (y[i] - *yl + cell) * sy << "\" width=\"" << cell * sx + 0.5
                << "\" height=\"" << cell * sy + 0.5 << "\" fill=\"rgb(" << g << ',' << g
                << ",255)\"/>\n";
        }
    }
    out << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kW - kL - kR
        << "\" height=\"" << kH - kT - kB << "\" fill=\"none\" stroke=\"black\"/>\n</svg>\n";
}

}  // namespace bohm::svg
