#pragma once

#include <cstdint>
#include <Eigen/Dense>

#include "wfd/wavelets.hpp"

namespace wfd {

// Signed 14-bit sample/coefficient code, the converter's native format.
class Q14 {
public:
    static constexpr int kBits = 14;
    static constexpr int kMin = -8192;
    static constexpr int kMax = 8191;
    static constexpr int kScale = 8191; // unit value maps to the largest positive code

    Q14() = default;
    explicit Q14(int value) : value_(static_cast<std::int16_t>(value)) {
        if (value < kMin || value > kMax)
            throw std::out_of_range("Q14: code outside [-8192, 8191]");
    }

    int value() const noexcept { return value_; }
    friend bool operator==(Q14 a, Q14 b) noexcept { return a.value_ == b.value_; }

private:
    std::int16_t value_ = 0;
};

// Dense storage for 14-bit sequences; every element is a valid Q14 code.
using Q14Array = Eigen::Array<std::int16_t, Eigen::Dynamic, 1>;

// Quantized coefficient bank. Values stay within [-8191, 8191]: the float
// source is within [-1, 1] and scaling is by 8191, so -8192 is unreachable.
struct Q14CoefficientBank {
    Q14Array real;
    Q14Array imag;
    WaveletSpec source;
};

// Scales a unit-range value by 8191 and truncates toward zero. Truncation
// (not rounding) matches the coefficient conversion used for the hardware
// tables; toward-zero keeps the map odd, so trunc(-x) == -trunc(x) and
// symmetric banks quantize symmetrically. |x| > 1 throws std::out_of_range.
Q14 quantize_value(double x);

// Element-wise quantize_value over both halves of a float bank.
Q14CoefficientBank quantize_bank(const FloatCoefficientBank& bank);

} // namespace wfd
