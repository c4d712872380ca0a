#include "polya/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace polya {

namespace {

constexpr double kWidth = 720, kHeight = 480, kMargin = 60;

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    return buf;
}

void axis_frame(std::ostringstream& out, const std::string& title, const std::string& xl,
                const std::string& yl, double x0, double x1, double y0, double y1) {
    out << "<rect x='" << kMargin << "' y='" << kMargin << "' width='" << kWidth - 2 * kMargin
        << "' height='" << kHeight - 2 * kMargin
        << "' fill='none' stroke='black' stroke-width='1'/>\n";
    out << "<text x='" << kWidth / 2 << "' y='" << kMargin - 20
        << "' text-anchor='middle' font-size='16'>" << title << "</text>\n";
    out << "<text x='" << kWidth / 2 << "' y='" << kHeight - 12
        << "' text-anchor='middle' font-size='13'>" << xl << "</text>\n";
    out << "<text x='15' y='" << kHeight / 2 << "' text-anchor='middle' font-size='13' "
        << "transform='rotate(-90 15 " << kHeight / 2 << ")'>" << yl << "</text>\n";
    out << "<text x='" << kMargin << "' y='" << kHeight - kMargin + 18
        << "' text-anchor='middle' font-size='11'>" << num(x0) << "</text>\n";
    out << "<text x='" << kWidth - kMargin << "' y='" << kHeight - kMargin + 18
        << "' text-anchor='middle' font-size='11'>" << num(x1) << "</text>\n";
    out << "<text x='" << kMargin - 6 << "' y='" << kHeight - kMargin
        << "' text-anchor='end' font-size='11'>" << num(y0) << "</text>\n";
    out << "<text x='" << kMargin - 6 << "' y='" << kMargin + 4
        << "' text-anchor='end' font-size='11'>" << num(y1) << "</text>\n";
}

} // namespace

std::string svg_line_plot(std::span<const double> x, std::span<const double> y,
                          const std::string& title, const std::string& x_label,
                          const std::string& y_label) {
    double x0 = *std::min_element(x.begin(), x.end());
    double x1 = *std::max_element(x.begin(), x.end());
    double y0 = *std::min_element(y.begin(), y.end());
    double y1 = *std::max_element(y.begin(), y.end());
    if (x1 == x0) x1 = x0 + 1.0;
    if (y1 == y0) y1 = y0 + 1.0;
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;
    auto sx = [&](double v) { return kMargin + (v - x0) / (x1 - x0) * (kWidth - 2 * kMargin); };
    auto sy = [&](double v) {
        return kHeight - kMargin - (v - y0) / (y1 - y0) * (kHeight - 2 * kMargin);
    };
    std::ostringstream out;
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kHeight
        << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
    axis_frame(out, title, x_label, y_label, x0, x1, y0, y1);
    out << "<polyline fill='none' stroke='#1f6fb2' stroke-width='2' points='";
    for (std::size_t i = 0; i < x.size(); ++i)
        out << num(sx(x[i])) << ',' << num(sy(y[i])) << ' ';
    out << "'/>\n";
    for (std::size_t i = 0; i < x.size(); ++i)
        out << "<circle cx='" << num(sx(x[i])) << "' cy='" << num(sy(y[i]))
            << "' r='3' fill='#1f6fb2'/>\n";
    out << "</svg>\n";
    return out.str();
}

std::string svg_polygons(std::span<const ConvexPolygon> polys,
                         std::span<const std::string> labels, const std::string& title) {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& poly : polys)
        for (const Point& p : poly.vertices()) {
            x0 = std::min(x0, p.x);
            x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y);
            y1 = std::max(y1, p.y);
        }
    const double span = std::max(x1 - x0, y1 - y0);
    const double s = (std::min(kWidth, kHeight) - 2 * kMargin) / span;
    auto sx = [&](double v) { return kMargin + (v - x0) * s; };
    auto sy = [&](double v) { return kHeight - kMargin - (v - y0) * s; };
    static const char* colors[] = {"#1f6fb2", "#b23a1f", "#2e8b57", "#8b2e8b", "#b2861f"};
    std::ostringstream out;
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kHeight
        << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << kWidth / 2 << "' y='" << kMargin - 20
        << "' text-anchor='middle' font-size='16'>" << title << "</text>\n";
    for (std::size_t k = 0; k < polys.size(); ++k) {
        const char* color = colors[k % 5];
        out << "<polygon fill='none' stroke='" << color << "' stroke-width='2' points='";
        for (const Point& p : polys[k].vertices())
            out << num(sx(p.x)) << ',' << num(sy(p.y)) << ' ';
        out << "'/>\n";
        if (k < labels.size())
            out << "<text x='" << kMargin << "' y='" << kMargin + 18 * (k + 1)
                << "' font-size='12' fill='" << color << "'>" << labels[k] << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace polya
