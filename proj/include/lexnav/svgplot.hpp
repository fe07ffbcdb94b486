#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace lexnav {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
  std::string color;  // filled from the default palette when empty
  bool line = true;
  bool markers = false;
  bool dashed = false;
};

// Rotating default palette.
const char* plot_color(size_t index);

// Minimal XY plot with linear or log axes, ticks, legend and title, emitted
// as static SVG primitives. Points that cannot be placed (non-finite, or
// non-positive on a log axis) are skipped.
class SvgPlot {
 public:
  void set_title(std::string title) { title_ = std::move(title); }
  void set_x_label(std::string label) { x_label_ = std::move(label); }
  void set_y_label(std::string label) { y_label_ = std::move(label); }
  void set_log_x(bool log) { log_x_ = log; }
  void set_log_y(bool log) { log_y_ = log; }
  void add_series(PlotSeries series);

  // SVG <g> covering the given viewport rectangle of an existing document.
  std::string render_group(double x, double y, double width, double height) const;
  // Standalone SVG document.
  std::string render_document(double width, double height) const;

 private:
  std::string title_, x_label_, y_label_;
  bool log_x_ = false, log_y_ = false;
  std::vector<PlotSeries> series_;
};

std::string svg_document(double width, double height, const std::string& body);
std::string xml_escape(const std::string& s);

}  // namespace lexnav
