#include "dynpeak/time_series.hpp"

#include "dynpeak/error.hpp"

#include <cmath>
#include <string>

namespace dynpeak {

void validate_series(const TimeSeries& series, double rel_tol) {
  const auto& t = series.times;
  const auto& a = series.values;
  if (a.empty())
    throw InputError("series is empty");
  if (t.size() != a.size())
    throw InputError("times and values differ in length");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i]) || !std::isfinite(t[i]))
      throw InputError("non-finite sample at index " + std::to_string(i));
    if (a[i] < 0.0)
      throw InputError("negative level at index " + std::to_string(i));
  }
  if (t.size() < 2)
    return;
  const double step = t[1] - t[0];
  if (!(step > 0.0))
    throw InputError("times are not increasing at index 1");
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double d = t[i] - t[i - 1];
    if (!(d > 0.0))
      throw InputError("times are not increasing at index " + std::to_string(i));
    if (std::abs(d - step) > rel_tol * step)
      throw InputError("non-uniform sampling step at index " + std::to_string(i));
  }
}

} // namespace dynpeak
