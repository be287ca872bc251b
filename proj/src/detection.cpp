#include "dynpeak/detection.hpp"

#include "dynpeak/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dynpeak {

std::size_t DetectionParams::window() const {
  // The epsilon absorbs ratios such as 0.3 / 0.1 = 2.9999999999999996.
  return static_cast<std::size_t>(std::floor(nominal_period / sampling_period * (1.0 + 1e-9)));
}

void DetectionParams::validate() const {
  if (!(sampling_period > 0.0))
    throw InputError("sampling period must be > 0");
  if (!(nominal_period >= sampling_period))
    throw InputError("nominal period must be >= the sampling period");
  if (!(relative_threshold > 0.0 && relative_threshold < 1.0))
    throw InputError("relative magnitude threshold must lie in (0, 1)");
  if (!(absolute_threshold >= 0.0) || !std::isfinite(absolute_threshold))
    throw InputError("absolute magnitude threshold must be >= 0");
  if (!(three_point_threshold > 0.0) || !std::isfinite(three_point_threshold))
    throw InputError("3-point peak threshold must be > 0");
  if (!(tunnel_lower_ratio >= 0.0 && tunnel_lower_ratio < 1.0))
    throw InputError("tunnel lower ratio must lie in [0, 1)");
  if (!(tunnel_upper_ratio >= 0.0) || !std::isfinite(tunnel_upper_ratio))
    throw InputError("tunnel upper ratio must be >= 0");
}

namespace {

// Smallest index of the extremum over the inclusive range [lo, hi].
std::size_t argmax(std::span<const double> a, std::size_t lo, std::size_t hi) {
  std::size_t best = lo;
  for (std::size_t k = lo + 1; k <= hi; ++k)
    if (a[k] > a[best])
      best = k;
  return best;
}

std::size_t argmin(std::span<const double> a, std::size_t lo, std::size_t hi) {
  std::size_t best = lo;
  for (std::size_t k = lo + 1; k <= hi; ++k)
    if (a[k] < a[best])
      best = k;
  return best;
}

// Minimum over the open window (lo, hi); +inf when empty.
double open_min(std::span<const double> a, std::size_t lo, std::size_t hi) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t k = lo + 1; k < hi; ++k)
    m = std::min(m, a[k]);
  return m;
}

double clamped_product(double x, double y) { return std::max(x, 0.0) * std::max(y, 0.0); }

// Squared local magnitude of pulses[i] and the squared relative magnitude of
// its neighbours, both against the open-window minima. Factors are clamped at
// zero so a non-peak never produces a positive product by sign cancellation.
struct LocalProducts {
  double own;
  double neighbours;
};

LocalProducts local_products(std::span<const double> a, const PulseIndexes& p, std::size_t i) {
  const double b1 = open_min(a, p[i - 1], p[i]);
  const double b2 = open_min(a, p[i], p[i + 1]);
  const double b0 = std::min(b1, b2);
  return {clamped_product(a[p[i]] - b1, a[p[i]] - b2),
          clamped_product(a[p[i - 1]] - b0, a[p[i + 1]] - b0)};
}

} // namespace

double height(std::span<const double> values, std::size_t i) {
  if (i >= values.size())
    throw InputError("sample index out of range");
  return values[i] - *std::min_element(values.begin(), values.end());
}

double magnitude(std::span<const double> values, std::size_t left, std::size_t i,
                 std::size_t right) {
  if (!(left < i && i < right && right < values.size()))
    throw InputError("magnitude needs left < i < right within the series");
  if (i - left < 2 || right - i < 2)
    throw InputError("magnitude window is empty");
  const double b1 = open_min(values, left, i);
  const double b2 = open_min(values, i, right);
  if (values[i] < b1 || values[i] < b2)
    throw InputError("sample lies below a neighbouring minimum");
  return std::sqrt((values[i] - b1) * (values[i] - b2));
}

std::size_t first_pulse(std::span<const double> values, std::size_t window) {
  if (window == 0)
    throw InputError("scan window must be at least one sample");
  if (values.size() < 2 * window)
    throw InputError("series has " + std::to_string(values.size()) +
                     " samples; at least 2 * k_p = " + std::to_string(2 * window) +
                     " are required");
  return argmax(values, 0, 2 * window - 1);
}

PulseIndexes forward_scan(std::span<const double> values, std::size_t window,
                          std::size_t first) {
  const std::size_t n = values.size();
  PulseIndexes p{first};
  std::size_t current = first;
  while (current + window < n) {
    const std::size_t m = argmin(values, current + 1, current + window);
    if (m + window >= n)
      break;
    current = argmax(values, m + 1, m + window);
    p.push_back(current);
  }
  return p;
}

PulseIndexes filter_median_height(std::span<const double> values, const PulseIndexes& pulses,
                                  double relative_threshold) {
  if (pulses.empty())
    return {};
  const double floor_level = *std::min_element(values.begin(), values.end());
  std::vector<double> h;
  h.reserve(pulses.size());
  for (auto idx : pulses)
    h.push_back(values[idx] - floor_level);
  std::vector<double> sorted = h;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

  PulseIndexes kept;
  for (std::size_t i = 0; i < pulses.size(); ++i)
    if (h[i] > relative_threshold * median)
      kept.push_back(pulses[i]);
  return kept;
}

PulseIndexes filter_relative_magnitude(std::span<const double> values, PulseIndexes pulses,
                                       double relative_threshold) {
  const double ratio2 = relative_threshold * relative_threshold;
  std::size_t i = 1;
  while (i + 1 < pulses.size()) {
    const auto lp = local_products(values, pulses, i);
    if (lp.own < ratio2 * lp.neighbours)
      pulses.erase(pulses.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  return pulses;
}

PulseIndexes filter_trailing_pulse(std::span<const double> values, PulseIndexes pulses,
                                   double relative_threshold) {
  const std::size_t s = pulses.size();
  if (s < 2 || pulses.back() + 1 >= values.size())
    return pulses;
  const std::size_t last = pulses[s - 1];
  const std::size_t prev = pulses[s - 2];
  const double b1 = open_min(values, prev, last);
  const double b2 = open_min(values, last, values.size());
  const double b0 = std::min(b1, b2);
  const double own = clamped_product(values[last] - b1, values[last] - b2);
  const double neighbour = clamped_product(values[prev] - b0, values[prev] - b0);
  if (own < relative_threshold * relative_threshold * neighbour)
    pulses.pop_back();
  return pulses;
}

PulseIndexes filter_absolute_magnitude(std::span<const double> values, PulseIndexes pulses,
                                       double absolute_threshold) {
  const double threshold2 = absolute_threshold * absolute_threshold;
  std::size_t i = 1;
  while (i + 1 < pulses.size()) {
    if (local_products(values, pulses, i).own < threshold2)
      pulses.erase(pulses.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  return pulses;
}

PulseIndexes retrieve_missed(std::span<const double> values, const PulseIndexes& pulses,
                             double relative_threshold) {
  const double ratio2 = relative_threshold * relative_threshold;
  PulseIndexes p = pulses;
  std::vector<double> prefix_min;
  std::vector<double> suffix_min;
  for (int pass = 0; pass < 3; ++pass) {
    PulseIndexes found;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      const std::size_t a = p[i];
      const std::size_t b = p[i + 1];
      if (a + 3 >= b)
        continue;
      // prefix_min[j - a - 1] = min A[a+1 .. j]; suffix_min likewise for A[j .. b-1].
      const std::size_t gap = b - a - 1;
      prefix_min.assign(gap, 0.0);
      suffix_min.assign(gap, 0.0);
      for (std::size_t k = 0; k < gap; ++k)
        prefix_min[k] = k ? std::min(prefix_min[k - 1], values[a + 1 + k]) : values[a + 1];
      for (std::size_t k = gap; k-- > 0;)
        suffix_min[k] = k + 1 < gap ? std::min(suffix_min[k + 1], values[a + 1 + k])
                                    : values[a + 1 + k];

      std::size_t best = a + 2;
      double best_score = -1.0;
      double best_b0 = 0.0;
      for (std::size_t j = a + 2; j + 2 <= b; ++j) {
        const double b1 = prefix_min[j - a - 1];
        const double b2 = suffix_min[j - a - 1];
        const double score = (values[j] - b1) * (values[j] - b2);
        if (score > best_score) {
          best_score = score;
          best = j;
          best_b0 = std::min(b1, b2);
        }
      }
      if (best_score > ratio2 * clamped_product(values[a] - best_b0, values[b] - best_b0))
        found.push_back(best);
    }
    if (found.empty())
      break;  // later passes would see the same gaps
    PulseIndexes merged;
    merged.reserve(p.size() + found.size());
    std::merge(p.begin(), p.end(), found.begin(), found.end(), std::back_inserter(merged));
    p = std::move(merged);
  }
  return p;
}

double three_point_sharpness(std::span<const double> a, std::size_t i) {
  if (i < 2 || i + 2 >= a.size())
    return -1.0;
  const bool pattern = a[i - 2] > a[i - 1] && a[i] > a[i - 1] && a[i] > a[i + 1] &&
                       a[i + 2] > a[i + 1];
  if (!pattern)
    return -1.0;
  const double outer = 0.5 * ((a[i - 2] - a[i - 1]) + (a[i + 2] - a[i + 1]));
  const double inner = std::sqrt((a[i] - a[i - 1]) * (a[i] - a[i + 1]));
  return outer / inner;
}

PulseIndexes remove_three_point(std::span<const double> values, const PulseIndexes& pulses,
                                double three_point_threshold) {
  PulseIndexes kept;
  for (auto idx : pulses) {
    const double r = three_point_sharpness(values, idx);
    if (!(r >= 0.0 && r >= three_point_threshold))
      kept.push_back(idx);
  }
  return kept;
}

DetectionTrace detect_pulses_traced(const TimeSeries& series, const DetectionParams& params) {
  params.validate();
  const std::span<const double> a = series.values;
  for (double v : a)
    if (!std::isfinite(v))
      throw InputError("series contains a non-finite level");
  const std::size_t k = params.window();

  DetectionTrace t;
  auto& s = t.after;
  s[0] = {first_pulse(a, k)};
  s[1] = forward_scan(a, k, s[0].front());
  s[2] = filter_median_height(a, s[1], params.relative_threshold);
  s[3] = filter_trailing_pulse(a, filter_relative_magnitude(a, s[2], params.relative_threshold),
                               params.relative_threshold);
  s[4] = filter_absolute_magnitude(a, s[3], params.absolute_threshold);
  s[5] = retrieve_missed(a, s[4], params.relative_threshold);
  s[6] = remove_three_point(a, s[5], params.three_point_threshold);
  return t;
}

PulseIndexes detect_pulses(const TimeSeries& series, const DetectionParams& params) {
  return detect_pulses_traced(series, params).final();
}

} // namespace dynpeak
