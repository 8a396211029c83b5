#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wfd/quantize.hpp"
#include "wfd/signals.hpp"

namespace wfd {

// Electrical constants of the pre-amplifier + dual 14-bit converter chain.
// The converter window is symmetric about the 1.65 V reference; the
// pre-amplifier is inverting, so gain code 0x01 means a gain of -1 and inputs
// below the reference produce positive codes.
struct AdcConfig {
    double v_ref = 1.65;
    double v_min = 0.4;
    double v_max = 2.9;
    double v_abs_max = 3.3;
    int bits = 14;
    std::uint8_t gain_code = 0x01;
    double gain = -1.0;

    int code_min() const noexcept { return -(1 << (bits - 1)); }     // -8192
    int code_max() const noexcept { return (1 << (bits - 1)) - 1; }  //  8191

    // Rejects anything but the symmetric 14-bit window with gain code 0x01;
    // other pre-amplifier gain codes are not modeled.
    void validate() const;
};

// Builds a validated config for a pre-amplifier gain code. Only 0x01 (gain -1)
// is accepted.
AdcConfig adc_config_for_gain_code(std::uint8_t gain_code);

// One simultaneous sample of both converter channels.
struct AdcSamplePair {
    Q14 channel_a;
    Q14 channel_b;
};

// The 34-bit serial frame the converter shifts out per sample:
//   2 pad bits | 14-bit channel A (two's complement, MSB first) |
//   2 pad bits | 14-bit channel B | 2 pad bits
// bits[0] is transmitted first. Pad bits transmit as 0 and are ignored on
// decode.
struct SpiFrame {
    static constexpr int kBitCount = 34;
    static constexpr int kChannelBits = 14;
    std::array<std::uint8_t, kBitCount> bits{};
};

// Converts one voltage to a 14-bit code:
//   code = clamp(round(gain * (v - v_ref) / (v_max - v_ref) * 8192), -8192, 8191)
// with round-half-away-from-zero, so the map is symmetric about the
// reference. Voltages outside [v_min, v_max] saturate at the code extremes.
// v > v_abs_max throws DamageError; v < 0 throws std::invalid_argument.
Q14 sample_voltage(double v, const AdcConfig& cfg);

// Element-wise sample_voltage over a generated waveform.
std::vector<Q14> sample_stream(const VoltageSequence& seq, const AdcConfig& cfg);

// Serializes a sample pair into the 34-bit frame layout above.
SpiFrame encode_frame(const AdcSamplePair& pair);

// Recovers the sample pair from serially received bits. The decode walks the
// bits in transmission order through a shift register (new LSB per bit) and
// then slices the two channel fields; pad bits are ignored. Throws
// FramingError unless exactly 34 bits are supplied.
AdcSamplePair decode_frame(std::span<const std::uint8_t> serial_bits);
AdcSamplePair decode_frame(const SpiFrame& frame);

// Text form: 34 '0'/'1' characters in transmission order.
std::string to_string(const SpiFrame& frame);
SpiFrame frame_from_string(std::string_view text);

// Fastest sampling rate a given serial clock supports: one 34-bit frame must
// be shifted out between samples, so rate = spi_clock / 34.
double max_sample_rate(double spi_clock_hz);

// Half the sample rate; the highest frequency representable without aliasing.
double nyquist_limit(double sample_rate_hz);

// Counter divider driving the sample pulse, with the rate it actually achieves.
struct PulseDivider {
    long divider = 0;
    double achieved_hz = 0.0;
    double relative_error = 0.0; // |achieved - target| / target
};

// Divider for a counter-based pulse generator: round(clk / target_fs).
// Requires clk >= target_fs > 0.
PulseDivider pulse_divider(double clk_hz, double target_fs_hz);

// Clocking of the sampling chain: the counter runs from the module clock and
// the serial transfer from the SPI clock.
struct TimingConfig {
    double module_clock_hz = 10e6;
    double spi_clock_hz = 50e6;
    double sample_rate_hz = 20e3;
};

// Validated sampling chain. Construction rejects a requested sample rate above
// what the serial link can transfer (max_sample_rate of the SPI clock) and
// anything the pulse divider cannot realize.
class SamplingChain {
public:
    SamplingChain(AdcConfig adc, TimingConfig timing);

    const AdcConfig& adc() const noexcept { return adc_; }
    const TimingConfig& timing() const noexcept { return timing_; }
    const PulseDivider& divider() const noexcept { return divider_; }
    double achieved_sample_rate() const noexcept { return divider_.achieved_hz; }

private:
    AdcConfig adc_;
    TimingConfig timing_;
    PulseDivider divider_;
};

} // namespace wfd
