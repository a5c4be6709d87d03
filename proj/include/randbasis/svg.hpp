#pragma once

#include <string>
#include <vector>

namespace randbasis {

/// One labelled polyline of an x/y chart.
struct ChartSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

/// Writes a self-contained SVG line chart with a log10 y axis. Points with
/// nonpositive y are dropped; an empty series list still produces axes.
void write_log_chart(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<ChartSeries>& series);

}  // namespace randbasis
