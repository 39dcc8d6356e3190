#include "fairbias/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <tuple>

namespace fairbias::svg {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    if (std::abs(v) < 1e-12) v = 0;
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

}  // namespace

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

Canvas::Canvas(double width, double height) : width_(width), height_(height) {}

void Canvas::line(double x1, double y1, double x2, double y2, const std::string& color, double width,
                  bool dashed) {
    items_.push_back("<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
                     num(y2) + "\" stroke=\"" + color + "\" stroke-width=\"" + num(width) + "\"" +
                     (dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>");
}

void Canvas::polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color, double width) {
    if (pts.size() < 2) return;
    std::string p;
    for (const auto& [x, y] : pts) p += num(x) + "," + num(y) + " ";
    p.pop_back();
    items_.push_back("<polyline points=\"" + p + "\" fill=\"none\" stroke=\"" + color +
                     "\" stroke-width=\"" + num(width) + "\"/>");
}

void Canvas::circle(double x, double y, double r, const std::string& color) {
    items_.push_back("<circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"" + num(r) + "\" fill=\"" +
                     color + "\"/>");
}

void Canvas::cross(double x, double y, double s, const std::string& color) {
    line(x - s, y - s, x + s, y + s, color, 2.0);
    line(x - s, y + s, x + s, y - s, color, 2.0);
}

void Canvas::text(double x, double y, const std::string& content, double size, const std::string& anchor) {
    items_.push_back("<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\" font-size=\"" +
                     num(size) + "\" text-anchor=\"" + anchor + "\">" + escape(content) + "</text>");
}

void Canvas::rect(double x, double y, double w, double h, const std::string& stroke, const std::string& fill) {
    items_.push_back("<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" +
                     num(h) + "\" stroke=\"" + stroke + "\" fill=\"" + fill + "\"/>");
}

std::string Canvas::str() const {
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width_) + "\" height=\"" +
                      num(height_) + "\" viewBox=\"0 0 " + num(width_) + " " + num(height_) + "\">\n";
    for (const auto& item : items_) out += "  " + item + "\n";
    out += "</svg>\n";
    return out;
}

std::pair<double, double> padded_range(double lo, double hi) {
    if (!(hi > lo)) {
        const double half = std::max(0.05, 0.05 * std::abs(lo));
        return {lo - half, hi + half};
    }
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

std::string palette(std::size_t i) {
    static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                   "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    return colors[i % (sizeof colors / sizeof colors[0])];
}

Layout chart_layout(const Chart& chart) {
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
    for (const auto& s : chart.series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            xlo = std::min(xlo, s.x[i]);
            xhi = std::max(xhi, s.x[i]);
            if (i < s.y.size() && std::isfinite(s.y[i])) {
                ylo = std::min(ylo, s.y[i]);
                yhi = std::max(yhi, s.y[i]);
            }
        }
    if (chart.has_baseline) {
        ylo = std::min(ylo, chart.baseline);
        yhi = std::max(yhi, chart.baseline);
    }
    if (!std::isfinite(xlo)) xlo = xhi = 0;
    if (!std::isfinite(ylo)) ylo = yhi = 0;
    if (chart.diagonal) {
        const double lo = std::min(xlo, ylo), hi = std::max(xhi, yhi);
        xlo = ylo = lo;
        xhi = yhi = hi;
    }
    Layout l;
    std::tie(l.x_min, l.x_max) = padded_range(xlo, xhi);
    std::tie(l.y_min, l.y_max) = padded_range(ylo, yhi);
    return l;
}

std::string render(const Chart& chart) {
    const double W = chart.diagonal ? 520 : 640, H = chart.diagonal ? 520 : 420;
    const double left = 70, right = 150, top = 40, bottom = 55;
    const double pw = W - left - right, ph = H - top - bottom;
    const Layout l = chart_layout(chart);
    auto X = [&](double x) { return left + (x - l.x_min) / (l.x_max - l.x_min) * pw; };
    auto Y = [&](double y) { return top + ph - (y - l.y_min) / (l.y_max - l.y_min) * ph; };

    Canvas c(W, H);
    c.rect(0, 0, W, H, "none", "white");
    c.rect(left, top, pw, ph, "black", "none");
    c.text(left + pw / 2, 22, chart.title, 13, "middle");
    c.text(left + pw / 2, H - 12, chart.x_label, 11, "middle");
    c.text(16, top + ph / 2, chart.y_label, 11, "start");
    for (int t = 0; t <= 4; ++t) {
        const double xv = l.x_min + (l.x_max - l.x_min) * t / 4.0;
        const double yv = l.y_min + (l.y_max - l.y_min) * t / 4.0;
        c.line(X(xv), top + ph, X(xv), top + ph + 4);
        c.text(X(xv), top + ph + 17, tick_label(xv), 10, "middle");
        c.line(left - 4, Y(yv), left, Y(yv));
        c.text(left - 6, Y(yv) + 3, tick_label(yv), 10, "end");
    }
    if (chart.diagonal) c.line(X(l.x_min), Y(l.y_min), X(l.x_max), Y(l.y_max), "#888888", 1.0, true);
    if (chart.has_baseline) c.line(left, Y(chart.baseline), left + pw, Y(chart.baseline), "black", 1.2, true);

    for (std::size_t si = 0; si < chart.series.size(); ++si) {
        const Series& s = chart.series[si];
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const bool failed = i < s.failed.size() && s.failed[i];
            if (failed) {
                const double y = std::isfinite(s.y[i]) ? s.y[i] : (l.y_min + l.y_max) / 2;
                c.cross(X(s.x[i]), Y(y), 4, s.color);
                continue;
            }
            if (!std::isfinite(s.y[i])) continue;
            pts.emplace_back(X(s.x[i]), Y(s.y[i]));
            c.circle(X(s.x[i]), Y(s.y[i]), 2.5, s.color);
        }
        if (!chart.scatter) c.polyline(pts, s.color);
        const double ly = top + 12 + 16.0 * static_cast<double>(si);
        c.line(left + pw + 10, ly - 4, left + pw + 28, ly - 4, s.color, 2.0);
        c.text(left + pw + 32, ly, s.name, 10);
    }
    return c.str();
}

}  // namespace fairbias::svg
