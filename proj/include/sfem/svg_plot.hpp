#pragma once

#include <string>
#include <utility>
#include <vector>

namespace sfem {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
  /// Shown next to the label when set, e.g. the fitted convergence rate.
  std::string annotation;
};

/// Static log-log line plot: axes with decade ticks, one polyline with markers per series and a
/// legend. All values must be positive. Output is deterministic for identical input.
std::string render_loglog_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                              const std::vector<PlotSeries>& series);

}  // namespace sfem
