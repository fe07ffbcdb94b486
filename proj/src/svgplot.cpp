#include "lexnav/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lexnav/util.hpp"

namespace lexnav {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
  // Fixed two decimals keeps the files small and is plenty for pixel space.
  char buf[32];
  snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  bool valid() const { return lo <= hi; }
  void expand(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

std::vector<double> linear_ticks(double lo, double hi) {
  const double span = hi - lo;
  if (span <= 0) return {lo};
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + step * 1e-9; t += step)
    ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
  return ticks;
}

std::vector<double> log_ticks(double lo, double hi) {
  // Decade ticks, thinned when there are too many.
  const int klo = static_cast<int>(std::ceil(std::log10(lo) - 1e-9));
  const int khi = static_cast<int>(std::floor(std::log10(hi) + 1e-9));
  int step = 1;
  if (khi - klo > 10) step = (khi - klo + 9) / 10;
  std::vector<double> ticks;
  for (int k = klo; k <= khi; k += step) ticks.push_back(std::pow(10.0, k));
  if (ticks.empty()) ticks.push_back(lo);
  return ticks;
}

std::string tick_label(double v) {
  if (v != 0 && (std::abs(v) >= 1e5 || std::abs(v) < 1e-4)) {
    char buf[32];
    snprintf(buf, sizeof(buf), "%.0e", v);
    return buf;
  }
  return format_double(v);
}

}  // namespace

const char* plot_color(size_t index) { return kPalette[index % std::size(kPalette)]; }

void SvgPlot::add_series(PlotSeries series) {
  if (series.color.empty()) series.color = plot_color(series_.size());
  series_.push_back(std::move(series));
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string SvgPlot::render_group(double gx, double gy, double width, double height) const {
  const double ml = 58, mr = 14, mt = title_.empty() ? 14 : 30, mb = 42;
  const double pw = std::max(10.0, width - ml - mr);
  const double ph = std::max(10.0, height - mt - mb);

  auto usable = [&](double v, bool log_axis) { return std::isfinite(v) && (!log_axis || v > 0); };

  Range rx, ry;
  for (const auto& s : series_)
    for (const auto& [x, y] : s.points)
      if (usable(x, log_x_) && usable(y, log_y_)) {
        rx.expand(x);
        ry.expand(y);
      }
  if (!rx.valid()) {
    rx = {log_x_ ? 0.1 : 0.0, log_x_ ? 10.0 : 1.0};
    ry = {log_y_ ? 0.1 : 0.0, log_y_ ? 10.0 : 1.0};
  }
  auto pad = [](Range& r, bool log_axis) {
    if (log_axis) {
      if (r.lo == r.hi) {
        r.lo /= 10;
        r.hi *= 10;
      } else {
        const double f = std::pow(r.hi / r.lo, 0.05);
        r.lo /= f;
        r.hi *= f;
      }
    } else {
      if (r.lo == r.hi) {
        r.lo -= 1;
        r.hi += 1;
      } else {
        const double f = (r.hi - r.lo) * 0.05;
        r.lo -= f;
        r.hi += f;
      }
    }
  };
  pad(rx, log_x_);
  pad(ry, log_y_);

  auto map_x = [&](double v) {
    const double t = log_x_ ? (std::log(v) - std::log(rx.lo)) / (std::log(rx.hi) - std::log(rx.lo))
                            : (v - rx.lo) / (rx.hi - rx.lo);
    return ml + t * pw;
  };
  auto map_y = [&](double v) {
    const double t = log_y_ ? (std::log(v) - std::log(ry.lo)) / (std::log(ry.hi) - std::log(ry.lo))
                            : (v - ry.lo) / (ry.hi - ry.lo);
    return mt + ph - t * ph;
  };

  std::string svg;
  svg += "<g transform=\"translate(" + num(gx) + "," + num(gy) +
         ")\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg += "<rect x=\"" + num(ml) + "\" y=\"" + num(mt) + "\" width=\"" + num(pw) + "\" height=\"" +
         num(ph) + "\" fill=\"white\" stroke=\"#333\"/>\n";

  const auto xticks = log_x_ ? log_ticks(rx.lo, rx.hi) : linear_ticks(rx.lo, rx.hi);
  for (double t : xticks) {
    if (t < rx.lo || t > rx.hi) continue;
    const double px = map_x(t);
    svg += "<line x1=\"" + num(px) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(px) + "\" y2=\"" +
           num(mt + ph) + "\" stroke=\"#ddd\"/>\n";
    svg += "<line x1=\"" + num(px) + "\" y1=\"" + num(mt + ph) + "\" x2=\"" + num(px) +
           "\" y2=\"" + num(mt + ph + 4) + "\" stroke=\"#333\"/>\n";
    svg += "<text x=\"" + num(px) + "\" y=\"" + num(mt + ph + 16) +
           "\" text-anchor=\"middle\">" + xml_escape(tick_label(t)) + "</text>\n";
  }
  const auto yticks = log_y_ ? log_ticks(ry.lo, ry.hi) : linear_ticks(ry.lo, ry.hi);
  for (double t : yticks) {
    if (t < ry.lo || t > ry.hi) continue;
    const double py = map_y(t);
    svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(py) + "\" x2=\"" + num(ml + pw) +
           "\" y2=\"" + num(py) + "\" stroke=\"#ddd\"/>\n";
    svg += "<line x1=\"" + num(ml - 4) + "\" y1=\"" + num(py) + "\" x2=\"" + num(ml) + "\" y2=\"" +
           num(py) + "\" stroke=\"#333\"/>\n";
    svg += "<text x=\"" + num(ml - 7) + "\" y=\"" + num(py + 4) + "\" text-anchor=\"end\">" +
           xml_escape(tick_label(t)) + "</text>\n";
  }

  for (const auto& s : series_) {
    std::string poly;
    for (const auto& [x, y] : s.points) {
      if (!usable(x, log_x_) || !usable(y, log_y_)) continue;
      const std::string px = num(map_x(x));
      const std::string py = num(map_y(y));
      if (s.line) poly += px + "," + py + " ";
      if (s.markers)
        svg += "<circle cx=\"" + px + "\" cy=\"" + py + "\" r=\"2.5\" fill=\"" + s.color +
               "\"/>\n";
    }
    if (s.line && !poly.empty()) {
      svg += "<polyline points=\"" + poly + "\" fill=\"none\" stroke=\"" + s.color +
             "\" stroke-width=\"1.5\"";
      if (s.dashed) svg += " stroke-dasharray=\"5,4\"";
      svg += "/>\n";
    }
  }

  double ly = mt + 14;
  for (const auto& s : series_) {
    if (s.label.empty()) continue;
    const double lx = ml + pw - 120;
    svg += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(lx + 18) +
           "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + s.color + "\" stroke-width=\"2\"";
    if (s.dashed) svg += " stroke-dasharray=\"5,4\"";
    svg += "/>\n";
    svg += "<text x=\"" + num(lx + 23) + "\" y=\"" + num(ly) + "\">" + xml_escape(s.label) +
           "</text>\n";
    ly += 15;
  }

  if (!title_.empty())
    svg += "<text x=\"" + num(ml + pw / 2) + "\" y=\"18\" text-anchor=\"middle\" "
           "font-size=\"13\">" + xml_escape(title_) + "</text>\n";
  if (!x_label_.empty())
    svg += "<text x=\"" + num(ml + pw / 2) + "\" y=\"" + num(mt + ph + 32) +
           "\" text-anchor=\"middle\">" + xml_escape(x_label_) + "</text>\n";
  if (!y_label_.empty())
    svg += "<text transform=\"translate(14," + num(mt + ph / 2) +
           ") rotate(-90)\" text-anchor=\"middle\">" + xml_escape(y_label_) + "</text>\n";

  svg += "</g>\n";
  return svg;
}

std::string SvgPlot::render_document(double width, double height) const {
  return svg_document(width, height, render_group(0, 0, width, height));
}

std::string svg_document(double width, double height, const std::string& body) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
         num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += body;
  out += "</svg>\n";
  return out;
}

}  // namespace lexnav
