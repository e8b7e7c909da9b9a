#pragma once

// Minimal SVG plotting used by the exporters. Private to the library.

#include <array>
#include <string>
#include <vector>

namespace sshlab::svg {

struct Rgb {
  int r, g, b;
};

/// Polynomial fit of the viridis colormap, t in [0, 1].
Rgb viridis(double t);
std::string hex(Rgb c);
std::string escape(const std::string& text);

struct Series {
  std::vector<double> x, y;
  std::string colour;
  std::string label;
  bool markers = false;  // dots instead of a polyline
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  std::string comment;  // placed in an XML comment at the top
  int width = 720;
  int height = 480;
};

/// Line/scatter plot with axes, ticks and a legend.
std::string line_plot(const PlotSpec& spec, const std::vector<Series>& series);

/// Heatmap of values(row, col) in [0, 1], rows drawn top to bottom.
/// `values` is row-major with `cols` entries per row.
std::string heatmap(const PlotSpec& spec, const std::vector<double>& values, int rows, int cols,
                    double x_min, double x_max, double y_min, double y_max);

}  // namespace sshlab::svg
