#pragma once

#include <span>
#include <string>

#include "polya/geometry.hpp"

namespace polya {

/// Line plot of y against x (single series, log-free), 720x480 with axes.
std::string svg_line_plot(std::span<const double> x, std::span<const double> y,
                          const std::string& title, const std::string& x_label,
                          const std::string& y_label);

/// Outlines of one or more polygons on a shared scale, with labels.
std::string svg_polygons(std::span<const ConvexPolygon> polys,
                         std::span<const std::string> labels, const std::string& title);

} // namespace polya
