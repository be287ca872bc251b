#include "dynpeak/svg_plot.hpp"

#include "dynpeak/csv.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace dynpeak::io {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 360.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 16.0;
constexpr double kTop = 28.0;
constexpr double kBottom = 44.0;

struct Frame {
  double x0, x1, y0, y1;

  double px(double x) const {
    const double span = x1 > x0 ? x1 - x0 : 1.0;
    return kLeft + (x - x0) / span * (kWidth - kLeft - kRight);
  }
  double py(double y) const {
    const double span = y1 > y0 ? y1 - y0 : 1.0;
    return kHeight - kBottom - (y - y0) / span * (kHeight - kTop - kBottom);
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void open_svg(std::ostringstream& s, const std::string& title) {
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << kLeft << "\" y=\"18\" font-size=\"13\">" << title << "</text>\n";
}

void axes(std::ostringstream& s, const Frame& f, const std::string& xlabel, const std::string& ylabel) {
  const double bx = kLeft, by = kHeight - kBottom;
  s << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
    << "<line x1=\"" << bx << "\" y1=\"" << by << "\" x2=\"" << kWidth - kRight << "\" y2=\"" << by << "\"/>\n"
    << "<line x1=\"" << bx << "\" y1=\"" << by << "\" x2=\"" << bx << "\" y2=\"" << kTop << "\"/>\n"
    << "</g>\n";
  for (int k = 0; k <= 5; ++k) {
    const double x = f.x0 + (f.x1 - f.x0) * k / 5.0;
    const double y = f.y0 + (f.y1 - f.y0) * k / 5.0;
    s << "<text x=\"" << num(f.px(x)) << "\" y=\"" << by + 16 << "\" text-anchor=\"middle\">"
      << format6(x) << "</text>\n";
    s << "<text x=\"" << bx - 6 << "\" y=\"" << num(f.py(y) + 4) << "\" text-anchor=\"end\">"
      << format6(y) << "</text>\n";
  }
  s << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 8
    << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  s << "<text x=\"14\" y=\"" << (kTop + kHeight - kBottom) / 2 << "\" transform=\"rotate(-90 14 "
    << (kTop + kHeight - kBottom) / 2 << ")\" text-anchor=\"middle\">" << ylabel << "</text>\n";
}

void polyline(std::ostringstream& s, const Frame& f, const std::vector<double>& xs,
              const std::vector<double>& ys, const std::string& cls, const std::string& style) {
  s << "<polyline class=\"" << cls << "\" fill=\"none\" " << style << " points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i)
    s << (i ? " " : "") << num(f.px(xs[i])) << ',' << num(f.py(ys[i]));
  s << "\"/>\n";
}

std::string series_plot(const TimeSeries& series, const DetectionResult& r) {
  std::ostringstream s;
  const auto [lo, hi] = std::minmax_element(series.values.begin(), series.values.end());
  Frame f{series.times.front(), series.times.back(), std::min(0.0, *lo), *hi * 1.05};
  open_svg(s, "LH series and detected pulses (" + std::to_string(r.pulses.size()) + ")");
  axes(s, f, "time (min)", "LH (ng/ml)");
  for (auto idx : r.pulses) {
    const double x = f.px(series.times[idx]);
    s << "<line class=\"pulse\" x1=\"" << num(x) << "\" y1=\"" << kTop << "\" x2=\"" << num(x)
      << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"#d62728\" stroke-width=\"1\"/>\n";
  }
  polyline(s, f, series.times, series.values, "series", "stroke=\"#1f77b4\" stroke-width=\"1\"");
  for (std::size_t i = 0; i < series.size(); ++i)
    s << "<circle class=\"sample\" cx=\"" << num(f.px(series.times[i])) << "\" cy=\""
      << num(f.py(series.values[i])) << "\" r=\"1.8\" fill=\"#1f77b4\"/>\n";
  s << "</svg>\n";
  return s.str();
}

std::string ipi_plot(const DetectionResult& r) {
  std::ostringstream s;
  if (r.ipi.size() == 0) {
    open_svg(s, "IPI series");
    s << "<text class=\"annotation\" x=\"" << kWidth / 2 << "\" y=\"" << kHeight / 2
      << "\" text-anchor=\"middle\">Fewer than two pulses detected: no IPI series</text>\n</svg>\n";
    return s.str();
  }
  double y_hi = 0.0;
  for (double v : r.ipi.values)
    y_hi = std::max(y_hi, v);
  for (double v : r.edges.upper)
    y_hi = std::max(y_hi, v);
  Frame f{r.ipi.anchor_times.front(), r.ipi.anchor_times.back(), 0.0, y_hi * 1.05};
  if (f.x1 <= f.x0) {
    f.x0 -= 1.0;
    f.x1 += 1.0;
  }
  open_svg(s, "IPI series and tunnel");
  axes(s, f, "pulse time (min)", "IPI (min)");
  polyline(s, f, r.edges.times, r.edges.trend, "trend",
           "stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"6 4\"");
  polyline(s, f, r.edges.times, r.edges.lower, "tunnel-lower", "stroke=\"#2ca02c\" stroke-width=\"1.5\"");
  polyline(s, f, r.edges.times, r.edges.upper, "tunnel-upper", "stroke=\"#2ca02c\" stroke-width=\"1.5\"");

  std::set<std::size_t> flagged(r.outliers.upper.begin(), r.outliers.upper.end());
  flagged.insert(r.outliers.lower.begin(), r.outliers.lower.end());
  for (std::size_t k = 0; k < r.ipi.size(); ++k) {
    const bool outlier = flagged.count(k) > 0;
    s << "<circle class=\"ipi" << (outlier ? " outlier" : "") << "\" cx=\""
      << num(f.px(r.ipi.anchor_times[k])) << "\" cy=\"" << num(f.py(r.ipi.values[k])) << "\" r=\""
      << (outlier ? 5 : 3) << "\" fill=\"" << (outlier ? "#d62728" : "#1f77b4") << "\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

} // namespace

SvgPlots render_plots(const TimeSeries& series, const DetectionResult& result) {
  return {series_plot(series, result), ipi_plot(result)};
}

} // namespace dynpeak::io
