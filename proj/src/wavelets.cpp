#include "wfd/wavelets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wfd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kQ14Lsb = 1.0 / 8191.0;

double gaussian(double t, double sigma) {
    return std::exp(-(t * t) / (2.0 * sigma * sigma));
}

} // namespace

WaveletSpec default_wavelet_spec() {
    const WaveletSpec spec{6000.0, 4.5, 20000.0, 133};
    // The 133-tap bank truncates the Gaussian at t_edge = 66 / fs. The width
    // must keep the envelope below one quantization LSB there, i.e.
    // t_edge / sigma > sqrt(2 * ln 8191), or the cut would be audible in the
    // quantized coefficients. Verified on every call rather than assumed.
    const double sigma = spec.width / spec.center_freq_hz;
    const double t_edge = static_cast<double>((spec.tap_count - 1) / 2) / spec.sample_rate_hz;
    if (gaussian(t_edge, sigma) >= kQ14Lsb)
        throw std::logic_error("default wavelet width leaves visible edge coefficients");
    return spec;
}

void validate_wavelet_spec(const WaveletSpec& spec) {
    if (spec.tap_count < 1 || spec.tap_count % 2 == 0)
        throw std::invalid_argument("wavelet tap count must be odd and positive");
    if (spec.width <= 0.0)
        throw std::invalid_argument("wavelet width must be positive");
    if (spec.center_freq_hz <= 0.0 || spec.sample_rate_hz <= 0.0)
        throw std::invalid_argument("wavelet frequencies must be positive");
    if (spec.center_freq_hz >= spec.sample_rate_hz / 2.0)
        throw NyquistError("wavelet center frequency must be below half the sample rate");
}

FloatCoefficientBank morlet(const WaveletSpec& spec) {
    validate_wavelet_spec(spec);

    const Eigen::Index n = spec.tap_count;
    const Eigen::Index center = (n - 1) / 2;
    const double sigma = spec.width / spec.center_freq_hz;

    Eigen::ArrayXd real(n);
    Eigen::ArrayXd imag(n);
    for (Eigen::Index k = 0; k < center; ++k) {
        const double t = static_cast<double>(k - center) / spec.sample_rate_hz;
        const double g = gaussian(t, sigma);
        const double ph = kTwoPi * spec.center_freq_hz * t;
        real[k] = std::cos(ph) * g;
        imag[k] = std::sin(ph) * g;
        // mirror instead of recomputing: even/odd symmetry holds exactly
        real[n - 1 - k] = real[k];
        imag[n - 1 - k] = -imag[k];
    }
    real[center] = 1.0;
    imag[center] = 0.0;
    return {std::move(real), std::move(imag), spec};
}

namespace {

Eigen::Index scaled_tap_count(double center_freq_hz, double sample_rate_hz,
                              const WaveletSpec& reference) {
    if (center_freq_hz <= 0.0)
        throw std::invalid_argument("tap count scaling needs a positive frequency");
    if (sample_rate_hz <= 0.0)
        throw std::invalid_argument("tap count scaling needs a positive sample rate");
    const double scale = (reference.center_freq_hz / center_freq_hz) *
                         (sample_rate_hz / reference.sample_rate_hz);
    return static_cast<Eigen::Index>(
        std::llround(static_cast<double>(reference.tap_count) * scale));
}

} // namespace

Eigen::Index tap_count_for(double center_freq_hz, double sample_rate_hz,
                           const WaveletSpec& reference) {
    Eigen::Index n = scaled_tap_count(center_freq_hz, sample_rate_hz, reference);
    if (n < 1)
        n = 1;
    if (n % 2 == 0)
        ++n; // keep the bank symmetric about a center tap
    return n;
}

Eigen::Index coefficient_total_estimate(double center_freq_hz, double sample_rate_hz,
                                        const WaveletSpec& reference) {
    return 2 * scaled_tap_count(center_freq_hz, sample_rate_hz, reference);
}

FloatCoefficientBank haar(Eigen::Index n_samples) {
    if (n_samples < 2 || n_samples % 2 != 0)
        throw std::invalid_argument("haar: sample count must be even and at least 2");

    Eigen::ArrayXd real(n_samples);
    real.head(n_samples / 2).setConstant(1.0);
    real.tail(n_samples / 2).setConstant(-1.0);

    // Unit support sampled at t = k / n; nominal spec fields describe that
    // one-cycle step shape.
    WaveletSpec spec{1.0, 1.0, static_cast<double>(n_samples), n_samples};
    return {std::move(real), Eigen::ArrayXd::Zero(n_samples), spec};
}

} // namespace wfd
