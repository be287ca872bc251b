#pragma once

#include "dynpeak/analysis.hpp"
#include "dynpeak/time_series.hpp"

#include <string>

namespace dynpeak::io {

struct SvgPlots {
  std::string series;  // samples with vertical pulse bars
  std::string ipi;     // IPI points, dashed trend, solid tunnel edges
};

/// With fewer than two pulses the IPI document only carries a text note.
SvgPlots render_plots(const TimeSeries& series, const DetectionResult& result);

} // namespace dynpeak::io
