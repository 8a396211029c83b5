#pragma once

#include <Eigen/Dense>

#include "wfd/errors.hpp"

namespace wfd {

// Absolute maximum voltage the analog front end tolerates. Generator specs
// are validated against it so no stimulus can exceed the converter rating.
inline constexpr double kAbsMaxVolts = 3.3;

// A biased sinusoid: v(t) = dc_bias + amplitude * sin(2*pi*frequency*t + phase).
struct ToneSpec {
    double frequency_hz = 0.0;
    double amplitude_v = 0.0;
    double dc_bias_v = 0.0;
    double phase_rad = 0.0;
};

// A linear chirp sweeping from f_start to f_end over `duration` seconds.
// Instantaneous frequency is linear in time; phase is its integral, so there
// are no per-sample frequency discontinuities.
struct ChirpSpec {
    double f_start_hz = 0.0;
    double f_end_hz = 0.0;
    double duration_s = 0.0;
    double amplitude_v = 0.0;
    double dc_bias_v = 0.0;
};

// A sampled analog waveform, in volts.
struct VoltageSequence {
    Eigen::ArrayXd samples_v;
    double sample_rate_hz = 0.0;
};

// Constant DC level, n samples long.
VoltageSequence gen_dc(double level_v, Eigen::Index n, double sample_rate_hz);

// Biased tone sampled at `sample_rate_hz` for `duration_s` seconds.
// Throws NyquistError unless sample_rate_hz > 2 * spec.frequency_hz.
VoltageSequence gen_tone(const ToneSpec& spec, double sample_rate_hz, double duration_s);

// Linear chirp with continuous phase:
//   phi(t) = 2*pi * (f_start*t + (f_end - f_start) * t^2 / (2*duration))
// so the instantaneous frequency at time t is f_start + (f_end - f_start)*t/duration.
// Throws NyquistError unless sample_rate_hz > 2 * max(f_start, f_end).
VoltageSequence gen_chirp(const ChirpSpec& spec, double sample_rate_hz);

} // namespace wfd
