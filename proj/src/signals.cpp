#include "wfd/signals.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wfd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_window(double amplitude_v, double dc_bias_v) {
    if (amplitude_v < 0.0)
        throw std::invalid_argument("signal amplitude must be non-negative");
    if (dc_bias_v - amplitude_v < 0.0 || dc_bias_v + amplitude_v > kAbsMaxVolts)
        throw std::invalid_argument("signal swing leaves the [0, 3.3] V input range");
}

Eigen::Index sample_count(double duration_s, double sample_rate_hz) {
    const auto n = static_cast<Eigen::Index>(std::llround(duration_s * sample_rate_hz));
    return n < 1 ? 1 : n;
}

} // namespace

VoltageSequence gen_dc(double level_v, Eigen::Index n, double sample_rate_hz) {
    if (n < 1)
        throw std::invalid_argument("gen_dc: need at least one sample");
    if (sample_rate_hz <= 0.0)
        throw std::invalid_argument("gen_dc: sample rate must be positive");
    return {Eigen::ArrayXd::Constant(n, level_v), sample_rate_hz};
}

VoltageSequence gen_tone(const ToneSpec& spec, double sample_rate_hz, double duration_s) {
    check_window(spec.amplitude_v, spec.dc_bias_v);
    if (sample_rate_hz <= 0.0 || duration_s <= 0.0)
        throw std::invalid_argument("gen_tone: sample rate and duration must be positive");
    if (sample_rate_hz <= 2.0 * spec.frequency_hz)
        throw NyquistError("gen_tone: sample rate must exceed twice the tone frequency");

    const Eigen::Index n = sample_count(duration_s, sample_rate_hz);
    // sample index n corresponds to t = n / fs, t = 0 at the first sample
    const Eigen::ArrayXd idx = Eigen::ArrayXd::LinSpaced(n, 0.0, static_cast<double>(n - 1));
    const double step = kTwoPi * spec.frequency_hz / sample_rate_hz;
    return {spec.dc_bias_v + spec.amplitude_v * (step * idx + spec.phase_rad).sin(),
            sample_rate_hz};
}

VoltageSequence gen_chirp(const ChirpSpec& spec, double sample_rate_hz) {
    check_window(spec.amplitude_v, spec.dc_bias_v);
    if (spec.duration_s <= 0.0)
        throw std::invalid_argument("gen_chirp: duration must be positive");
    if (spec.f_start_hz < 0.0 || spec.f_end_hz < 0.0)
        throw std::invalid_argument("gen_chirp: frequencies must be non-negative");
    if (sample_rate_hz <= 0.0)
        throw std::invalid_argument("gen_chirp: sample rate must be positive");
    if (sample_rate_hz <= 2.0 * std::max(spec.f_start_hz, spec.f_end_hz))
        throw NyquistError("gen_chirp: sample rate must exceed twice the highest sweep frequency");

    const Eigen::Index n = sample_count(spec.duration_s, sample_rate_hz);
    const Eigen::ArrayXd t =
        Eigen::ArrayXd::LinSpaced(n, 0.0, static_cast<double>(n - 1)) / sample_rate_hz;
    // phase integrates the linear frequency ramp f(t) = f0 + (f1 - f0) * t / T
    const double ramp = (spec.f_end_hz - spec.f_start_hz) / (2.0 * spec.duration_s);
    const Eigen::ArrayXd phase = kTwoPi * (spec.f_start_hz * t + ramp * t.square());
    return {spec.dc_bias_v + spec.amplitude_v * phase.sin(), sample_rate_hz};
}

} // namespace wfd
