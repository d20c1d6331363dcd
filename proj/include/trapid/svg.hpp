#pragma once

#include <string>
#include <vector>

namespace trapid::svg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
};

struct HLine {
  double y = 0.0;
  std::string label;
  std::string color = "#d62728";
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  int width = 720;
  int height = 440;
  std::vector<Series> series;
  std::vector<HLine> hlines;
};

/// Standalone SVG document with axes, ticks, legend and polylines. Points that
/// cannot be drawn on a log axis (<= 0) are dropped.
std::string render(const Chart& chart);

}  // namespace trapid::svg
