#pragma once

#include "dynpeak/detection.hpp"
#include "dynpeak/ipi_tunnel.hpp"
#include "dynpeak/time_series.hpp"

#include <optional>

namespace dynpeak {

/// Everything the detector reports for one series.
struct DetectionResult {
  DetectionParams params;
  PulseIndexes pulses;
  IpiSeries ipi;                  // empty with fewer than two pulses
  std::optional<TunnelFit> fit;   // present iff ipi is non-empty
  TunnelEdges edges;
  OutlierReport outliers;
};

/// Runs the full pipeline: pulse detection, IPI series, cubic trend, tunnel
/// and outlier classification. `params.sampling_period` is taken from the
/// series when the series has at least two samples.
DetectionResult analyze(const TimeSeries& series, DetectionParams params);

} // namespace dynpeak
