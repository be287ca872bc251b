#include "dynpeak/ipi_tunnel.hpp"

#include "dynpeak/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dynpeak {

IpiSeries build_ipi(const TimeSeries& series, const PulseIndexes& pulses) {
  if (pulses.size() < 2)
    throw InputError("at least two pulses are needed for an IPI series");
  IpiSeries ipi;
  ipi.values.reserve(pulses.size() - 1);
  ipi.anchor_times.reserve(pulses.size() - 1);
  for (std::size_t i = 0; i + 1 < pulses.size(); ++i) {
    const double t0 = series.times.at(pulses[i]);
    const double t1 = series.times.at(pulses[i + 1]);
    ipi.values.push_back(t1 - t0);
    ipi.anchor_times.push_back(t1);
  }
  return ipi;
}

double TunnelFit::at(double x) const {
  return coeffs[0] + x * (coeffs[1] + x * (coeffs[2] + x * coeffs[3]));
}

TunnelFit fit_cubic(const IpiSeries& ipi, double lower_ratio, double upper_ratio) {
  const std::size_t n = ipi.size();
  if (n == 0)
    throw InputError("cannot fit an empty IPI series");
  if (!(lower_ratio >= 0.0 && lower_ratio < 1.0) || !(upper_ratio >= 0.0))
    throw InputError("tunnel ratios out of range");

  TunnelFit fit;
  fit.center = static_cast<double>(n) / 2.0;
  fit.lower_ratio = lower_ratio;
  fit.upper_ratio = upper_ratio;

  // Columns are powers of x / scale so the design matrix stays well
  // conditioned for long series; coefficients are unscaled afterwards.
  const int degree = static_cast<int>(std::min<std::size_t>(3, n - 1));
  const double scale = std::max(1.0, std::max(std::abs(1.0 - fit.center),
                                              std::abs(static_cast<double>(n) - fit.center)));
  Eigen::MatrixXd design(static_cast<Eigen::Index>(n), degree + 1);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const double u = (static_cast<double>(k) + 1.0 - fit.center) / scale;
    double power = 1.0;
    for (int d = 0; d <= degree; ++d) {
      design(static_cast<Eigen::Index>(k), d) = power;
      power *= u;
    }
    rhs(static_cast<Eigen::Index>(k)) = ipi.values[k];
  }
  const Eigen::VectorXd scaled = design.colPivHouseholderQr().solve(rhs);
  double unscale = 1.0;
  for (int d = 0; d <= degree; ++d) {
    fit.coeffs[static_cast<std::size_t>(d)] = scaled(d) / unscale;
    unscale *= scale;
  }
  return fit;
}

namespace {

double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  if (xs.empty() || x < xs.front() || x > xs.back())
    throw std::out_of_range("time outside the tunnel");
  auto hi = std::lower_bound(xs.begin(), xs.end(), x);
  const auto j = static_cast<std::size_t>(hi - xs.begin());
  if (xs[j] == x || j == 0)
    return ys[j];
  const double w = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
  return ys[j - 1] + w * (ys[j] - ys[j - 1]);
}

} // namespace

double TunnelEdges::lower_at(double t) const { return interpolate(times, lower, t); }
double TunnelEdges::upper_at(double t) const { return interpolate(times, upper, t); }

TunnelEdges tunnel_edges(const TunnelFit& fit, const IpiSeries& ipi) {
  TunnelEdges e;
  const std::size_t n = ipi.size();
  e.times = ipi.anchor_times;
  e.trend.reserve(n);
  e.lower.reserve(n);
  e.upper.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    e.trend.push_back(fit.trend(k));
    e.lower.push_back(fit.lower(k));
    e.upper.push_back(fit.upper(k));
  }
  return e;
}

std::string_view to_string(OutlierTag tag) {
  switch (tag) {
  case OutlierTag::PossibleMissedPulse:
    return "possible-missed-pulse";
  case OutlierTag::PossibleOverDetection:
    return "possible-over-detection";
  case OutlierTag::PossibleRhythmBreak:
    return "possible-rhythm-break";
  }
  return "unknown";
}

OutlierReport classify_outliers(const IpiSeries& ipi, const TunnelFit& fit) {
  OutlierReport report;
  const std::size_t n = ipi.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = ipi.values[k];
    const double phi = fit.trend(k);
    if (theta > fit.upper(k)) {
      report.upper.push_back(k);
      const auto tag = theta >= kMissedPulseRatio * phi ? OutlierTag::PossibleMissedPulse
                                                        : OutlierTag::PossibleRhythmBreak;
      report.diagnostics.push_back({k, true, tag});
    } else if (theta < fit.lower(k)) {
      report.lower.push_back(k);
      // A spurious pulse splits one interval in two: a short IPI whose sum
      // with a neighbour is close to the trend.
      auto pairs_to_trend = [&](std::size_t other) {
        return std::abs(theta + ipi.values[other] - phi) <= kPairSumTolerance * phi;
      };
      const bool split = theta <= kOverDetectionRatio * phi &&
                         ((k > 0 && pairs_to_trend(k - 1)) || (k + 1 < n && pairs_to_trend(k + 1)));
      report.diagnostics.push_back(
          {k, false, split ? OutlierTag::PossibleOverDetection : OutlierTag::PossibleRhythmBreak});
    }
  }
  return report;
}

} // namespace dynpeak
