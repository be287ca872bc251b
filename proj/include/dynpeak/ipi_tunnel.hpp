#pragma once

// Interpulse intervals, cubic trend and the tolerance tunnel around it.

#include "dynpeak/detection.hpp"
#include "dynpeak/time_series.hpp"

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

namespace dynpeak {

/// theta_k = t(p_{k+1}) - t(p_k), anchored at t(p_{k+1}).
struct IpiSeries {
  std::vector<double> values;        // minutes
  std::vector<double> anchor_times;  // minutes

  std::size_t size() const noexcept { return values.size(); }
};

/// Throws InputError when fewer than two pulses are given.
IpiSeries build_ipi(const TimeSeries& series, const PulseIndexes& pulses);

/// Least-squares cubic through the IPIs as a function of the centred interval
/// index x = k + 1 - n / 2 (k 0-based, n intervals). Fewer than four intervals
/// lower the degree so the fit interpolates.
struct TunnelFit {
  std::array<double, 4> coeffs{};  // c0 + c1 x + c2 x^2 + c3 x^3
  double center = 0.0;             // n / 2
  double lower_ratio = 0.6;
  double upper_ratio = 0.6;

  double at(double x) const;
  /// Trend value for 0-based interval k.
  double trend(std::size_t k) const { return at(static_cast<double>(k) + 1.0 - center); }
  double lower(std::size_t k) const { return (1.0 - lower_ratio) * trend(k); }
  double upper(std::size_t k) const { return (1.0 + upper_ratio) * trend(k); }
};

/// Throws InputError on an empty IPI series or invalid ratios.
TunnelFit fit_cubic(const IpiSeries& ipi, double lower_ratio = 0.6,
                    double upper_ratio = 0.6);

/// Tunnel vertices at the anchor times t(p_2) .. t(p_s); the edges are the
/// polylines through them.
struct TunnelEdges {
  std::vector<double> times;
  std::vector<double> trend;
  std::vector<double> lower;
  std::vector<double> upper;

  /// Piecewise-linear edge values; throws std::out_of_range outside
  /// [times.front(), times.back()].
  double lower_at(double t) const;
  double upper_at(double t) const;
};

TunnelEdges tunnel_edges(const TunnelFit& fit, const IpiSeries& ipi);

enum class OutlierTag { PossibleMissedPulse, PossibleOverDetection, PossibleRhythmBreak };
std::string_view to_string(OutlierTag tag);

struct Outlier {
  std::size_t index;  // 0-based interval index
  bool upper;
  OutlierTag tag;
};

struct OutlierReport {
  std::vector<std::size_t> upper;  // intervals above the upper edge
  std::vector<std::size_t> lower;  // intervals below the lower edge
  std::vector<Outlier> diagnostics;

  bool empty() const noexcept { return upper.empty() && lower.empty(); }
};

// Advisory tag cutoffs relative to the trend value.
inline constexpr double kMissedPulseRatio = 1.7;
inline constexpr double kOverDetectionRatio = 0.5;
inline constexpr double kPairSumTolerance = 0.25;

OutlierReport classify_outliers(const IpiSeries& ipi, const TunnelFit& fit);

} // namespace dynpeak
