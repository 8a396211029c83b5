#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "wfd/frontend.hpp"
#include "wfd/quantize.hpp"

namespace wfd {

// Dot-product accumulators of the streaming complex FIR. Worst case is
// bounded by 8192 * sum(|coefficient|) per channel; see
// required_accumulator_bits for the exact register sizing.
struct ComplexAccumulator {
    std::int64_t real_part = 0;
    std::int64_t imag_part = 0;
};

// Magnitude-squared detector output. The response register is 50 bits wide;
// push_sample scales the exact square sum into that budget (see
// response_shift_for), so mag_sq < 2^50 always holds.
struct Response {
    static constexpr int kBits = 50;
    std::uint64_t mag_sq = 0;
};

// Number of bits a two's-complement accumulator needs to hold any dot product
// of this bank with 14-bit samples: ceil(log2(8192 * max(sum|real|, sum|imag|)))
// plus a sign bit. Returns 1 for an all-zero bank.
int required_accumulator_bits(const Q14CoefficientBank& bank);

// Right shift applied to the exact square sum real^2 + imag^2 so the worst
// case fits the 50-bit response register. Squaring two accumulators of B
// magnitude bits needs up to 2B+1 bits, which exceeds 50 for any bank long
// enough to be frequency selective; the excess is shifted out. Zero when the
// budget already suffices.
int response_shift_for(const Q14CoefficientBank& bank);

// Streaming detector: a length-N delay line of 14-bit samples convolved
// against the quantized bank on every push. Single-owner mutable; run one
// stream per instance.
class DetectorState {
public:
    explicit DetectorState(Q14CoefficientBank bank);

    // Shifts the delay line (newest sample enters slot 0, oldest falls off),
    // recomputes both dot products and returns the scaled magnitude-squared.
    Response push_sample(Q14 sample);

    const Q14CoefficientBank& bank() const noexcept { return bank_; }
    const ComplexAccumulator& accumulator() const noexcept { return acc_; }
    Eigen::Index tap_count() const noexcept { return taps_.size(); }
    int response_shift() const noexcept { return response_shift_; }

private:
    Q14CoefficientBank bank_;
    Q14Array taps_;
    ComplexAccumulator acc_;
    int response_shift_ = 0;
};

// Top 18 bits of the response window: bits 49..32 of mag_sq.
std::uint32_t clip_response(const Response& r);

// Eight ascending thresholds derived from a calibrated maximum response M:
//   full[k]    = (2k-1) * M / 16            (integer division), k = 1..8
// i.e. M/8 segments shifted down by M/16 so each threshold sits mid-segment.
//   clipped[k] = full[k] >> 34              (16-bit values)
// The clipped forms are what the comparison hardware stores; the full forms
// are kept for reference checks.
struct ThresholdBank {
    std::array<std::uint64_t, 8> full{};
    std::array<std::uint32_t, 8> clipped{};
    std::uint64_t max_response = 0;

    // Throws CalibrationError for M == 0 and std::invalid_argument for an M
    // outside the 50-bit response domain.
    static ThresholdBank from_max_response(std::uint64_t max_response);
};

// Count of thresholds strictly exceeded, 0..8. The comparison runs on the
// clipped values: the 18-bit response window against each 16-bit threshold
// re-aligned to the same bit positions (two zero LSBs appended). Ties round
// down, so a response exactly at a threshold leaves that LED off.
int led_level(const Response& r, const ThresholdBank& t);

// Reference comparison on the full 50-bit values. Matches led_level whenever
// mag_sq is at least 2^34 away from every threshold.
int led_level_unclipped(const Response& r, const ThresholdBank& t);

// Determines the calibration constant M by streaming a full-scale tone at the
// bank's center frequency through the complete 14-bit pipeline (voltage ->
// codes -> detector) for 3N samples, repeated over eight fixed starting
// phases, and taking the maximum observed mag_sq. Throws CalibrationError if
// the bank produces no response (e.g. all-zero coefficients).
ThresholdBank calibrate_max_response(const Q14CoefficientBank& bank, const AdcConfig& cfg);

// Floating-point reference path: sliding complex dot product of a
// dimensionless signal against the float bank, returning |.|^2 per input
// sample (zero history before the first sample). This is the stage-1
// simulation the fixed path is validated against.
Eigen::ArrayXd float_response(const FloatCoefficientBank& bank, const Eigen::ArrayXd& signal);

} // namespace wfd
