#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace dynpeak {

/// Uniformly sampled hormone series: times in minutes, levels in ng/ml.
///
/// `effective_times` is only populated for synthetic series and records the
/// jittered instant at which each sample was actually taken.
struct TimeSeries {
  std::vector<double> times;
  std::vector<double> values;
  std::optional<std::vector<double>> effective_times;

  std::size_t size() const noexcept { return values.size(); }
  bool empty() const noexcept { return values.empty(); }

  /// Nominal sampling period; 0 for a single-sample series.
  double sampling_period() const noexcept {
    return times.size() >= 2 ? times[1] - times[0] : 0.0;
  }
};

/// Throws InputError unless times are strictly increasing with a constant
/// step (relative tolerance `rel_tol`), values are non-negative and the two
/// vectors have equal, non-zero length.
void validate_series(const TimeSeries& series, double rel_tol = 1e-6);

} // namespace dynpeak
