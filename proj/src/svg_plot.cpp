#include "sfem/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "sfem/error.hpp"

namespace sfem {

namespace {

constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 80, kRight = 200, kTop = 40, kBottom = 60;
constexpr const char* kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string tick_label(int decade) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "1e%d", decade);
  return buf;
}

}  // namespace

std::string render_loglog_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                              const std::vector<PlotSeries>& series) {
  double xmin = std::numeric_limits<double>::max(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!(x > 0.0) || !(y > 0.0)) throw Error(ErrorKind::InvalidArgument, "log-log plot needs positive values");
      xmin = std::min(xmin, std::log10(x));
      xmax = std::max(xmax, std::log10(x));
      ymin = std::min(ymin, std::log10(y));
      ymax = std::max(ymax, std::log10(y));
    }
  }
  if (xmin > xmax) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  // pad to whole decades so ticks land on the frame
  xmin = std::floor(xmin), xmax = std::max(std::ceil(xmax), xmin + 1);
  ymin = std::floor(ymin), ymax = std::max(std::ceil(ymax), ymin + 1);

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  const auto sx = [&](double lx) { return kLeft + (lx - xmin) / (xmax - xmin) * pw; };
  const auto sy = [&](double ly) { return kTop + (1.0 - (ly - ymin) / (ymax - ymin)) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(title) << "</text>\n";
  svg << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw) << "\" height=\""
      << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int d = static_cast<int>(xmin); d <= static_cast<int>(xmax); ++d) {
    const double x = sx(d);
    svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(x) << "\" y2=\""
        << num(kTop + ph + 6) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + ph + 20) << "\" text-anchor=\"middle\">"
        << tick_label(d) << "</text>\n";
    for (int m = 2; m <= 9 && d < static_cast<int>(xmax); ++m) {
      const double xm = sx(d + std::log10(m));
      svg << "<line x1=\"" << num(xm) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(xm) << "\" y2=\""
          << num(kTop + ph + 3) << "\" stroke=\"black\"/>\n";
    }
  }
  for (int d = static_cast<int>(ymin); d <= static_cast<int>(ymax); ++d) {
    const double y = sy(d);
    svg << "<line x1=\"" << num(kLeft - 6) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft) << "\" y2=\""
        << num(y) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << num(kLeft - 10) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">"
        << tick_label(d) << "</text>\n";
  }
  svg << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 15)
      << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
  svg << "<text transform=\"translate(20," << num(kTop + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(y_label) << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* colour = kColours[i % std::size(kColours)];
    svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < s.points.size(); ++k) {
      if (k) svg << ' ';
      svg << num(sx(std::log10(s.points[k].first))) << ',' << num(sy(std::log10(s.points[k].second)));
    }
    svg << "\"/>\n";
    for (const auto& [x, y] : s.points)
      svg << "<circle cx=\"" << num(sx(std::log10(x))) << "\" cy=\"" << num(sy(std::log10(y)))
          << "\" r=\"3\" fill=\"" << colour << "\"/>\n";
    const double ly = kTop + 10 + 32.0 * static_cast<double>(i);
    const double lx = kLeft + pw + 12;
    svg << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 20) << "\" y2=\"" << num(ly)
        << "\" stroke=\"" << colour << "\" stroke-width=\"1.5\"/>\n";
    svg << "<text x=\"" << num(lx + 26) << "\" y=\"" << num(ly + 4) << "\">" << escape(s.label) << "</text>\n";
    if (!s.annotation.empty())
      svg << "<text x=\"" << num(lx + 26) << "\" y=\"" << num(ly + 18) << "\" font-size=\"11\">"
          << escape(s.annotation) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace sfem
