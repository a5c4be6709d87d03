#include "randbasis/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace randbasis {

namespace {

constexpr double kWidth = 840.0;
constexpr double kHeight = 560.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 230.0;  // room for the legend
constexpr double kTop = 50.0;
constexpr double kBottom = 60.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

}  // namespace

void write_log_chart(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<ChartSeries>& series) {
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -std::numeric_limits<double>::infinity();
  double y_min = std::numeric_limits<double>::infinity();
  double y_max = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!(y > 0.0)) continue;
      any = true;
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (!any) {
    x_min = 0.0;
    x_max = 1.0;
    y_min = 0.1;
    y_max = 10.0;
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  double log_lo = std::floor(std::log10(y_min));
  double log_hi = std::ceil(std::log10(y_max));
  if (log_hi == log_lo) log_hi = log_lo + 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double y) {
    return kTop + (log_hi - std::log10(y)) / (log_hi - log_lo) * plot_h;
  };

  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_log_chart: cannot open '" + path + "'");
  }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"18\" "
      << "font-family=\"sans-serif\">" << title << "</text>\n";

  // Axes.
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + plot_h << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
      << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 16
      << "\" text-anchor=\"middle\" font-size=\"14\" font-family=\"sans-serif\">" << x_label
      << "</text>\n";
  out << "<text x=\"20\" y=\"" << kTop + plot_h / 2
      << "\" text-anchor=\"middle\" font-size=\"14\" font-family=\"sans-serif\" "
      << "transform=\"rotate(-90 20 " << kTop + plot_h / 2 << ")\">" << y_label << "</text>\n";

  // Decade ticks on y.
  for (double d = log_lo; d <= log_hi + 0.5; d += 1.0) {
    const double y = py(std::pow(10.0, d));
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << y << "\" x2=\"" << kLeft + plot_w
        << "\" y2=\"" << y << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << kLeft - 10 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\">1e" << num(d)
        << "</text>\n";
  }
  // About six x ticks at integer positions.
  const double span = x_max - x_min;
  double step = std::max(1.0, std::round(span / 6.0));
  for (double x = std::ceil(x_min); x <= x_max + 1e-9; x += step) {
    const double xx = px(x);
    out << "<line x1=\"" << xx << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << xx << "\" y2=\""
        << kTop + plot_h + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << xx << "\" y=\"" << kTop + plot_h + 20
        << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">" << num(x)
        << "</text>\n";
  }

  // Series polylines and legend.
  int color_idx = 0;
  double legend_y = kTop + 10.0;
  for (const auto& s : series) {
    const char* color = kPalette[color_idx % (sizeof(kPalette) / sizeof(kPalette[0]))];
    ++color_idx;
    std::ostringstream pts;
    for (const auto& [x, y] : s.points) {
      if (!(y > 0.0)) continue;
      pts << px(x) << ',' << py(y) << ' ';
    }
    if (!pts.str().empty()) {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\""
          << pts.str() << "\"/>\n";
    }
    const double lx = kLeft + plot_w + 18.0;
    out << "<line x1=\"" << lx << "\" y1=\"" << legend_y << "\" x2=\"" << lx + 24 << "\" y2=\""
        << legend_y << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << lx + 30 << "\" y=\"" << legend_y + 4
        << "\" font-size=\"12\" font-family=\"sans-serif\">" << s.label << "</text>\n";
    legend_y += 18.0;
  }

  out << "</svg>\n";
  if (!out) {
    throw std::runtime_error("write_log_chart: write failed on '" + path + "'");
  }
}

}  // namespace randbasis
