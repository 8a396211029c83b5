#include "wfd/frontend.hpp"

#include <cmath>
#include <stdexcept>

namespace wfd {

void AdcConfig::validate() const {
    if (bits != 14)
        throw std::invalid_argument("AdcConfig: only the 14-bit converter is modeled");
    if (!(v_min < v_ref && v_ref < v_max && v_max <= v_abs_max))
        throw std::invalid_argument("AdcConfig: window must satisfy v_min < v_ref < v_max <= v_abs_max");
    if (std::abs((v_ref - v_min) - (v_max - v_ref)) > 1e-12)
        throw std::invalid_argument("AdcConfig: window must be symmetric about the reference");
    if (gain_code != 0x01 || gain != -1.0)
        throw std::invalid_argument("AdcConfig: unsupported pre-amplifier gain code");
}

AdcConfig adc_config_for_gain_code(std::uint8_t gain_code) {
    if (gain_code != 0x01)
        throw std::invalid_argument("adc_config_for_gain_code: only code 0x01 (gain -1) is supported");
    AdcConfig cfg;
    cfg.gain_code = gain_code;
    cfg.gain = -1.0;
    cfg.validate();
    return cfg;
}

Q14 sample_voltage(double v, const AdcConfig& cfg) {
    if (v < 0.0)
        throw std::invalid_argument("sample_voltage: negative input voltage");
    if (v > cfg.v_abs_max)
        throw DamageError("sample_voltage: input above the converter's absolute maximum");

    const double half_window = cfg.v_max - cfg.v_ref;
    const double scaled = cfg.gain * (v - cfg.v_ref) / half_window * 8192.0;
    // round half away from zero, then saturate at the code extremes
    long code = std::lround(scaled);
    if (code < cfg.code_min())
        code = cfg.code_min();
    if (code > cfg.code_max())
        code = cfg.code_max();
    return Q14(static_cast<int>(code));
}

std::vector<Q14> sample_stream(const VoltageSequence& seq, const AdcConfig& cfg) {
    std::vector<Q14> codes;
    codes.reserve(static_cast<std::size_t>(seq.samples_v.size()));
    for (Eigen::Index i = 0; i < seq.samples_v.size(); ++i)
        codes.push_back(sample_voltage(seq.samples_v[i], cfg));
    return codes;
}

namespace {

constexpr int kPad = 2;
constexpr int kChannelAOffset = kPad;                                   // bits 2..15
constexpr int kChannelBOffset = kPad + SpiFrame::kChannelBits + kPad;   // bits 18..31

void put_channel(SpiFrame& frame, int offset, int code) {
    const auto u = static_cast<std::uint16_t>(code) & 0x3FFF; // 14-bit two's complement
    for (int b = 0; b < SpiFrame::kChannelBits; ++b)          // MSB first
        frame.bits[static_cast<std::size_t>(offset + b)] =
            static_cast<std::uint8_t>((u >> (SpiFrame::kChannelBits - 1 - b)) & 1);
}

int sign_extend_14(std::uint32_t u) {
    return (u & 0x2000) ? static_cast<int>(u) - 0x4000 : static_cast<int>(u);
}

} // namespace

SpiFrame encode_frame(const AdcSamplePair& pair) {
    SpiFrame frame; // pads stay 0
    put_channel(frame, kChannelAOffset, pair.channel_a.value());
    put_channel(frame, kChannelBOffset, pair.channel_b.value());
    return frame;
}

AdcSamplePair decode_frame(std::span<const std::uint8_t> serial_bits) {
    if (serial_bits.size() != SpiFrame::kBitCount)
        throw FramingError("decode_frame: expected exactly 34 bits");

    // Shift bits through a register in transmission order, new LSB per bit,
    // then slice the channel fields out of the settled register.
    std::uint64_t reg = 0;
    for (const std::uint8_t bit : serial_bits)
        reg = (reg << 1) | (bit & 1u);

    const auto a = static_cast<std::uint32_t>(
        (reg >> (SpiFrame::kBitCount - kChannelAOffset - SpiFrame::kChannelBits)) & 0x3FFF);
    const auto b = static_cast<std::uint32_t>(
        (reg >> (SpiFrame::kBitCount - kChannelBOffset - SpiFrame::kChannelBits)) & 0x3FFF);
    return {Q14(sign_extend_14(a)), Q14(sign_extend_14(b))};
}

AdcSamplePair decode_frame(const SpiFrame& frame) {
    return decode_frame(std::span<const std::uint8_t>(frame.bits));
}

std::string to_string(const SpiFrame& frame) {
    std::string text(SpiFrame::kBitCount, '0');
    for (int i = 0; i < SpiFrame::kBitCount; ++i)
        text[static_cast<std::size_t>(i)] = frame.bits[static_cast<std::size_t>(i)] ? '1' : '0';
    return text;
}

SpiFrame frame_from_string(std::string_view text) {
    if (text.size() != SpiFrame::kBitCount)
        throw FramingError("frame_from_string: expected 34 characters");
    SpiFrame frame;
    for (int i = 0; i < SpiFrame::kBitCount; ++i) {
        const char c = text[static_cast<std::size_t>(i)];
        if (c != '0' && c != '1')
            throw FramingError("frame_from_string: frame text must be '0'/'1' only");
        frame.bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(c == '1');
    }
    return frame;
}

double max_sample_rate(double spi_clock_hz) {
    if (spi_clock_hz <= 0.0)
        throw std::invalid_argument("max_sample_rate: clock must be positive");
    return spi_clock_hz / SpiFrame::kBitCount;
}

double nyquist_limit(double sample_rate_hz) {
    if (sample_rate_hz <= 0.0)
        throw std::invalid_argument("nyquist_limit: sample rate must be positive");
    return sample_rate_hz / 2.0;
}

PulseDivider pulse_divider(double clk_hz, double target_fs_hz) {
    if (target_fs_hz <= 0.0 || clk_hz < target_fs_hz)
        throw std::invalid_argument("pulse_divider: need clk >= target_fs > 0");
    PulseDivider d;
    d.divider = std::lround(clk_hz / target_fs_hz);
    d.achieved_hz = clk_hz / static_cast<double>(d.divider);
    d.relative_error = std::abs(d.achieved_hz - target_fs_hz) / target_fs_hz;
    return d;
}

SamplingChain::SamplingChain(AdcConfig adc, TimingConfig timing)
    : adc_(adc), timing_(timing) {
    adc_.validate();
    if (timing_.sample_rate_hz > max_sample_rate(timing_.spi_clock_hz))
        throw std::invalid_argument(
            "SamplingChain: requested sample rate exceeds what the SPI clock can transfer");
    divider_ = pulse_divider(timing_.module_clock_hz, timing_.sample_rate_hz);
}

} // namespace wfd
