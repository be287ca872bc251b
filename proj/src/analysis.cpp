#include "dynpeak/analysis.hpp"

namespace dynpeak {

DetectionResult analyze(const TimeSeries& series, DetectionParams params) {
  validate_series(series);
  if (series.size() >= 2)
    params.sampling_period = series.sampling_period();

  DetectionResult r;
  r.params = params;
  r.pulses = detect_pulses(series, params);
  if (r.pulses.size() < 2)
    return r;
  r.ipi = build_ipi(series, r.pulses);
  r.fit = fit_cubic(r.ipi, params.tunnel_lower_ratio, params.tunnel_upper_ratio);
  r.edges = tunnel_edges(*r.fit, r.ipi);
  r.outliers = classify_outliers(r.ipi, *r.fit);
  return r;
}

} // namespace dynpeak
