#pragma once

// Synthetic plasma LH generator.
//
// Pituitary release is a train of spikes, each a jump to M_spike(t) followed
// by exponential decay with half-life tau_hl. Plasma level obeys
//
//     dL/dt = release(t) - clearance_rate * L(t)
//
// and is sampled on a uniform grid with optional timing jitter and
// multiplicative assay noise.

#include "dynpeak/time_series.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace dynpeak::lh {

/// Function of simulation time in minutes.
using TimeFunction = std::function<double(double)>;

/// Returns a function that always yields `value`.
TimeFunction constant(double value);
/// Returns c0 + c1 t + c2 t^2 + ...
TimeFunction polynomial(std::vector<double> coeffs);

struct GeneratorConfig {
  TimeFunction spike_amplitude;  // ng/(ml.min)
  TimeFunction spike_period;     // minutes
  double half_life = 20.0;       // spike half-life, minutes
  double clearance_rate = 6.0;   // per minute
  double duration = 1000.0;      // minutes
  double dt = 0.01;              // integration step, minutes
  /// Length of the pre-roll simulated before t = 0 so the plasma level starts
  /// on its periodic regime. Negative selects one spike period, P_spike(0).
  double warmup = -1.0;
  /// Plasma level at the start of the warm-up.
  double initial_level = 0.0;

  double decay_rate() const;        // k_hl = ln 2 / half_life
  double warmup_length() const;     // resolved warm-up
};

struct SamplingConfig {
  double period = 10.0;       // T_s, minutes
  double start_shift = 1.0;   // r, time of the first sample
  double time_jitter = 0.0;   // f, max |sampling-time error| in minutes
  double assay_noise = 0.0;   // b, max relative assay error
  std::uint64_t seed = 0;
  /// Number of samples; 0 takes as many as fit inside the dense solution.
  std::size_t count = 0;
};

/// Fine-grid plasma level. The grid starts at -warmup and ends at duration.
struct DenseSolution {
  std::vector<double> times;
  std::vector<double> values;

  double start() const { return times.front(); }
  double end() const { return times.back(); }
  /// Linear interpolation; throws std::out_of_range outside the grid.
  double level_at(double t) const;
};

/// Throws InputError when a field is outside its documented range. The
/// function invariants (P_spike > 0, M_spike >= 0) are checked on the dt grid.
void validate(const GeneratorConfig& cfg);
void validate(const SamplingConfig& cfg);

/// Instantaneous release rate at t in [0, duration], evaluated literally as
/// M(t) exp(-k (t - floor(t / P(t)) P(t))).
double release_rate(double t, const GeneratorConfig& cfg);

/// Exponential-Euler integration of the clearance equation from -warmup to
/// duration. Release is held at its step-midpoint value over each step.
DenseSolution integrate_plasma(const GeneratorConfig& cfg);

/// Exact periodic steady state of the clearance equation for constant spike
/// amplitude and period. `phase` is the time elapsed since the last spike and
/// may exceed one period (it is reduced modulo `period`).
double periodic_plasma_level(double phase, double amplitude, double period,
                             double half_life, double clearance_rate);

/// Samples `sol` at t_i = r + T_s (i - 1), jittered and noised per `cfg`.
/// Deterministic for a fixed seed.
TimeSeries sample_series(const DenseSolution& sol, const SamplingConfig& cfg);

struct Scenario {
  GeneratorConfig generator;
  SamplingConfig sampling;
};

/// Reference scenarios "A" to "F". Throws InputError for any other name.
Scenario scenario(std::string_view name);

/// CSV export with header `time_min,lh_ng_ml`.
void write_dense_csv(std::ostream& out, const DenseSolution& sol);

} // namespace dynpeak::lh
