#pragma once

#include <string>
#include <vector>

namespace fairbias::svg {

/// Minimal SVG writer: lines, polylines, markers and text in pixel space.
class Canvas {
public:
    Canvas(double width, double height);

    void line(double x1, double y1, double x2, double y2, const std::string& color = "black",
              double width = 1.0, bool dashed = false);
    void polyline(const std::vector<std::pair<double, double>>& points, const std::string& color,
                  double width = 1.5);
    void circle(double x, double y, double r, const std::string& color);
    void cross(double x, double y, double size, const std::string& color);
    void text(double x, double y, const std::string& content, double size = 11,
              const std::string& anchor = "start");
    void rect(double x, double y, double w, double h, const std::string& stroke, const std::string& fill);

    std::string str() const;

private:
    double width_, height_;
    std::vector<std::string> items_;
};

std::string escape(const std::string& text);

/// Data range padded by 5% on both sides; a degenerate range widens to +/-0.05
/// (or 5% of |value|) so flat series stay visible.
std::pair<double, double> padded_range(double lo, double hi);

struct Series {
    std::string name;
    std::string color;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<bool> failed;  // drawn as crosses, excluded from the line
};

struct Chart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    /// Dashed horizontal line, e.g. the fair baseline.
    bool has_baseline = false;
    double baseline = 0.0;
    /// Draw y = x and use a square aspect.
    bool diagonal = false;
    bool scatter = false;  // markers only
};

struct Layout {
    double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
};

/// Axis ranges used by render().
Layout chart_layout(const Chart& chart);
std::string render(const Chart& chart);

/// Fixed palette, cycled.
std::string palette(std::size_t index);

}  // namespace fairbias::svg
