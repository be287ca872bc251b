#pragma once

// Multi-scale pulse detection on a uniformly sampled series.
//
// Pulse indexes are 0-based sample indexes, kept strictly increasing by every
// step. All windows are expressed in samples: k_p = floor(T_p / T_s).

#include "dynpeak/time_series.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace dynpeak {

struct DetectionParams {
  double sampling_period = 10.0;        // T_s, minutes
  double nominal_period = 40.0;         // T_p, minutes
  double relative_threshold = 0.2;      // lambda_r
  double absolute_threshold = 0.0;      // lambda_a, ng/ml
  double three_point_threshold = 0.1;   // lambda_3p
  double tunnel_lower_ratio = 0.6;      // lower tunnel ratio (alpha)
  double tunnel_upper_ratio = 0.6;      // upper tunnel ratio (beta)

  /// k_p, the scan window in samples.
  std::size_t window() const;
  /// Throws InputError naming the first parameter outside its range.
  void validate() const;
};

using PulseIndexes = std::vector<std::size_t>;

/// A_i minus the global minimum of the series.
double height(std::span<const double> values, std::size_t i);

/// Geometric mean of the elevations of sample `i` above the minima of the
/// open windows (left, i) and (i, right). Throws InputError when a window is
/// empty or `i` lies below either minimum.
double magnitude(std::span<const double> values, std::size_t left,
                 std::size_t i, std::size_t right);

/// Step 1: argmax over the first 2 k_p samples, smallest index on ties.
std::size_t first_pulse(std::span<const double> values, std::size_t window);

/// Step 2: alternate windowed argmin / argmax searches from `first`.
PulseIndexes forward_scan(std::span<const double> values, std::size_t window,
                          std::size_t first);

/// Step 3.1: keep pulses whose height exceeds lambda_r times the median height.
PulseIndexes filter_median_height(std::span<const double> values,
                                  const PulseIndexes& pulses,
                                  double relative_threshold);

/// Step 3.2: drop interior pulses whose local magnitude is small next to the
/// relative magnitude of their neighbours. Removals take effect immediately.
PulseIndexes filter_relative_magnitude(std::span<const double> values,
                                       PulseIndexes pulses,
                                       double relative_threshold);

/// Companion to step 3.2 for the last pulse, which has no right neighbour:
/// compares its magnitude against the trailing samples with the squared
/// relative magnitude of its left neighbour. Series that end right on the
/// pulse (no trailing sample) are left untouched.
PulseIndexes filter_trailing_pulse(std::span<const double> values, PulseIndexes pulses,
                                   double relative_threshold);

/// Step 3.3: drop interior pulses whose local magnitude is below lambda_a.
PulseIndexes filter_absolute_magnitude(std::span<const double> values,
                                       PulseIndexes pulses,
                                       double absolute_threshold);

/// Step 4: three passes inserting the best-scoring sample of each wide gap.
PulseIndexes retrieve_missed(std::span<const double> values,
                             const PulseIndexes& pulses,
                             double relative_threshold);

/// Step 5: drop peaks supported by three samples with sharp flanking minima.
PulseIndexes remove_three_point(std::span<const double> values,
                                const PulseIndexes& pulses,
                                double three_point_threshold);

/// Sharpness ratio of the 3-point pattern centred on `i`, or a negative value
/// when the pattern does not apply at `i`.
double three_point_sharpness(std::span<const double> values, std::size_t i);

enum class Step : std::size_t {
  FirstPulse,
  ForwardScan,
  MedianHeight,
  RelativeMagnitude,
  AbsoluteMagnitude,
  RetrieveMissed,
  RemoveThreePoint,
};
inline constexpr std::size_t kStepCount = 7;

/// Pulse set after each step, for diagnostics and tests.
struct DetectionTrace {
  std::array<PulseIndexes, kStepCount> after;

  const PulseIndexes& at(Step s) const {
    return after[static_cast<std::size_t>(s)];
  }
  const PulseIndexes& final() const { return after.back(); }
};

/// Steps 1 to 5 on `series`. Throws InputError when N < 2 k_p or the
/// parameters are invalid.
PulseIndexes detect_pulses(const TimeSeries& series,
                           const DetectionParams& params);
DetectionTrace detect_pulses_traced(const TimeSeries& series,
                                    const DetectionParams& params);

} // namespace dynpeak
