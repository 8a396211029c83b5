#include "wfd/detector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace wfd {

namespace {

using uint128 = unsigned __int128;

int bit_width_u128(uint128 v) {
    int bits = 0;
    while (v != 0) {
        ++bits;
        v >>= 1;
    }
    return bits;
}

std::uint64_t worst_case_accumulator(const Q14CoefficientBank& bank) {
    std::uint64_t sum_real = 0;
    std::uint64_t sum_imag = 0;
    for (Eigen::Index i = 0; i < bank.real.size(); ++i)
        sum_real += static_cast<std::uint64_t>(std::abs(static_cast<int>(bank.real[i])));
    for (Eigen::Index i = 0; i < bank.imag.size(); ++i)
        sum_imag += static_cast<std::uint64_t>(std::abs(static_cast<int>(bank.imag[i])));
    return 8192u * std::max(sum_real, sum_imag);
}

void validate_bank(const Q14CoefficientBank& bank) {
    if (bank.real.size() != bank.imag.size() || bank.real.size() < 1)
        throw std::invalid_argument("coefficient bank halves must be non-empty and equal length");
    for (Eigen::Index i = 0; i < bank.real.size(); ++i) {
        if (std::abs(static_cast<int>(bank.real[i])) > Q14::kScale ||
            std::abs(static_cast<int>(bank.imag[i])) > Q14::kScale)
            throw std::invalid_argument("coefficient outside [-8191, 8191]");
    }
}

} // namespace

int required_accumulator_bits(const Q14CoefficientBank& bank) {
    const std::uint64_t bound = worst_case_accumulator(bank);
    if (bound == 0)
        return 1;
    // ceil(log2(bound)) magnitude bits plus a sign bit
    return std::bit_width(bound - 1) + 1;
}

int response_shift_for(const Q14CoefficientBank& bank) {
    const std::uint64_t bound = worst_case_accumulator(bank);
    const uint128 worst_mag_sq = 2 * static_cast<uint128>(bound) * bound;
    const int excess = bit_width_u128(worst_mag_sq) - Response::kBits;
    return excess > 0 ? excess : 0;
}

DetectorState::DetectorState(Q14CoefficientBank bank) : bank_(std::move(bank)) {
    validate_bank(bank_);
    if (required_accumulator_bits(bank_) > 63)
        throw std::invalid_argument("DetectorState: bank too large for 64-bit accumulators");
    taps_ = Q14Array::Zero(bank_.real.size());
    response_shift_ = response_shift_for(bank_);
}

Response DetectorState::push_sample(Q14 sample) {
    const Eigen::Index n = taps_.size();
    // evict the oldest tap and slide the rest toward it; the new sample
    // lands in slot 0
    std::copy_backward(taps_.data(), taps_.data() + n - 1, taps_.data() + n);
    taps_[0] = static_cast<std::int16_t>(sample.value());

    const auto taps64 = taps_.cast<std::int64_t>();
    acc_.real_part = (taps64 * bank_.real.cast<std::int64_t>()).sum();
    acc_.imag_part = (taps64 * bank_.imag.cast<std::int64_t>()).sum();

    const uint128 sq = static_cast<uint128>(static_cast<__int128>(acc_.real_part) * acc_.real_part) +
                       static_cast<uint128>(static_cast<__int128>(acc_.imag_part) * acc_.imag_part);
    return Response{static_cast<std::uint64_t>(sq >> response_shift_)};
}

std::uint32_t clip_response(const Response& r) {
    return static_cast<std::uint32_t>((r.mag_sq >> 32) & 0x3FFFFu);
}

ThresholdBank ThresholdBank::from_max_response(std::uint64_t max_response) {
    if (max_response == 0)
        throw CalibrationError("threshold calibration produced a zero maximum response");
    if ((max_response >> Response::kBits) != 0)
        throw std::invalid_argument("ThresholdBank: maximum response outside the 50-bit domain");

    ThresholdBank t;
    t.max_response = max_response;
    for (int k = 1; k <= 8; ++k) {
        // divide the range into 8 segments, then pull each threshold down by
        // one sixteenth of the maximum so it sits mid-segment
        const std::uint64_t full = static_cast<std::uint64_t>(2 * k - 1) * max_response / 16u;
        t.full[static_cast<std::size_t>(k - 1)] = full;
        t.clipped[static_cast<std::size_t>(k - 1)] = static_cast<std::uint32_t>(full >> 34);
    }
    return t;
}

int led_level(const Response& r, const ThresholdBank& t) {
    const std::uint32_t clipped = clip_response(r);
    int level = 0;
    for (const std::uint32_t threshold : t.clipped) {
        // the stored thresholds dropped 34 low bits, the response window only
        // 32; append two zero bits to compare at the same positions
        if (clipped > (threshold << 2))
            ++level;
    }
    return level;
}

int led_level_unclipped(const Response& r, const ThresholdBank& t) {
    int level = 0;
    for (const std::uint64_t threshold : t.full) {
        if (r.mag_sq > threshold)
            ++level;
    }
    return level;
}

ThresholdBank calibrate_max_response(const Q14CoefficientBank& bank, const AdcConfig& cfg) {
    validate_bank(bank);
    cfg.validate();
    validate_wavelet_spec(bank.source);

    const double fs = bank.source.sample_rate_hz;
    const Eigen::Index n_samples = 3 * bank.source.tap_count;
    const double duration = static_cast<double>(n_samples) / fs;
    const double amplitude = cfg.v_max - cfg.v_ref; // full scale

    // Peak response depends slightly on where the samples land on the tone,
    // so sweep a fixed set of starting phases and keep the overall maximum.
    std::uint64_t max_mag = 0;
    for (int p = 0; p < 8; ++p) {
        const double phase = static_cast<double>(p) * (2.0 * std::numbers::pi / 8.0);
        const ToneSpec tone{bank.source.center_freq_hz, amplitude, cfg.v_ref, phase};
        const std::vector<Q14> codes = sample_stream(gen_tone(tone, fs, duration), cfg);

        DetectorState detector(bank);
        for (const Q14 code : codes)
            max_mag = std::max(max_mag, detector.push_sample(code).mag_sq);
    }

    if (max_mag == 0)
        throw CalibrationError("calibration tone produced no detector response");
    return ThresholdBank::from_max_response(max_mag);
}

Eigen::ArrayXd float_response(const FloatCoefficientBank& bank, const Eigen::ArrayXd& signal) {
    if (signal.size() < 1)
        throw std::invalid_argument("float_response: need at least one sample");
    if (bank.real.size() != bank.imag.size() || bank.real.size() < 1)
        throw std::invalid_argument("float_response: malformed bank");

    const Eigen::Index n = bank.real.size();
    const Eigen::Index len = signal.size();

    // zero history before the first sample, mirroring the streaming path
    Eigen::ArrayXd padded = Eigen::ArrayXd::Zero(len + n - 1);
    padded.tail(len) = signal;

    Eigen::ArrayXd out(len);
    for (Eigen::Index i = 0; i < len; ++i) {
        const auto window = padded.segment(i, n).reverse();
        const double re = (window * bank.real).sum();
        const double im = (window * bank.imag).sum();
        out[i] = re * re + im * im;
    }
    return out;
}

} // namespace wfd
