#pragma once

#include <optional>
#include <string>
#include <vector>

#include "harddisk/connectivity.hpp"
#include "harddisk/geometry.hpp"

namespace hd {

struct SvgStyle {
  double scale = 10.0;             // pixels per unit
  std::optional<double> edges_eps;  // draw G_eps edges
  std::vector<Rect> frames;         // outlined rectangles
  std::vector<Point> highlight_path;
  bool close_path = false;
};

std::string render_configuration_svg(const Configuration& c, const SvgStyle& style = {});

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> lo;  // optional error band
  std::vector<double> hi;
};

// Line plot with a log-scaled x axis when log_x is set.
std::string render_plot_svg(const std::vector<Series>& series, const std::string& x_label, const std::string& y_label,
                            bool log_x = false);

}  // namespace hd
