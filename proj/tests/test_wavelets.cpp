#include <doctest.h>

#include <cmath>

#include "wfd/wavelets.hpp"

using namespace wfd;

TEST_CASE("default spec matches the reference configuration") {
    const WaveletSpec spec = default_wavelet_spec();
    CHECK(spec.center_freq_hz == 6000.0);
    CHECK(spec.sample_rate_hz == 20000.0);
    CHECK(spec.tap_count == 133);
    CHECK(spec.width == 4.5);
}

TEST_CASE("morlet center tap is exactly 1 + 0i") {
    const FloatCoefficientBank bank = morlet(default_wavelet_spec());
    const Eigen::Index center = (bank.spec.tap_count - 1) / 2;
    CHECK(bank.real[center] == 1.0);
    CHECK(bank.imag[center] == 0.0);
}

TEST_CASE("default bank has 133 taps per channel, 266 values total") {
    const FloatCoefficientBank bank = morlet(default_wavelet_spec());
    CHECK(bank.real.size() == 133);
    CHECK(bank.imag.size() == 133);
    CHECK(bank.real.size() + bank.imag.size() == 266);
}

TEST_CASE("morlet symmetry is exact tap by tap") {
    const FloatCoefficientBank bank = morlet(default_wavelet_spec());
    const Eigen::Index n = bank.spec.tap_count;
    for (Eigen::Index k = 0; k < n; ++k) {
        CHECK(bank.real[k] == bank.real[n - 1 - k]);
        CHECK(bank.imag[k] == -bank.imag[n - 1 - k]);
    }
}

TEST_CASE("morlet peak is 1 and attained at the center") {
    const FloatCoefficientBank bank = morlet(default_wavelet_spec());
    CHECK(bank.real.abs().maxCoeff() == 1.0);
    CHECK(bank.imag.abs().maxCoeff() < 1.0);
}

TEST_CASE("morlet is zero-mean to numerical precision") {
    const FloatCoefficientBank bank = morlet(default_wavelet_spec());
    const double n = static_cast<double>(bank.spec.tap_count);
    CHECK(std::abs(bank.real.sum()) < 1e-6 * n);
    CHECK(std::abs(bank.imag.sum()) < 1e-6 * n);
}

TEST_CASE("default width keeps edge taps below one quantization step") {
    const FloatCoefficientBank bank = morlet(default_wavelet_spec());
    CHECK(std::abs(bank.real[0]) < 1.0 / 8191.0);
    CHECK(std::abs(bank.imag[0]) < 1.0 / 8191.0);
}

TEST_CASE("morlet validates its spec") {
    CHECK_THROWS_AS(morlet({6000.0, 4.5, 20000.0, 132}), std::invalid_argument);
    CHECK_THROWS_AS(morlet({10000.0, 4.5, 20000.0, 133}), NyquistError);
    CHECK_THROWS_AS(morlet({11000.0, 4.5, 20000.0, 133}), NyquistError);
    CHECK_THROWS_AS(morlet({6000.0, 0.0, 20000.0, 133}), std::invalid_argument);
    CHECK_THROWS_AS(morlet({6000.0, 4.5, 20000.0, 0}), std::invalid_argument);
}

TEST_CASE("tap count scales inversely with frequency") {
    const WaveletSpec ref = default_wavelet_spec();
    CHECK(tap_count_for(6000.0, 20000.0, ref) == 133);
    CHECK(tap_count_for(3000.0, 20000.0, ref) == 267); // 266 rounded up to odd
    CHECK(tap_count_for(1000.0, 20000.0, ref) == 799); // 798 rounded up to odd
    CHECK(tap_count_for(12000.0, 20000.0, ref) == 67);
    CHECK_THROWS_AS(tap_count_for(0.0, 20000.0, ref), std::invalid_argument);
    CHECK_THROWS_AS(tap_count_for(-100.0, 20000.0, ref), std::invalid_argument);
}

TEST_CASE("coefficient totals reproduce the published resource arithmetic") {
    const WaveletSpec ref = default_wavelet_spec();
    CHECK(coefficient_total_estimate(6000.0, 20000.0, ref) == 266);
    CHECK(coefficient_total_estimate(1000.0, 20000.0, ref) == 1596);
}

TEST_CASE("tap scaling respects the sample-rate ratio") {
    const WaveletSpec ref = default_wavelet_spec();
    CHECK(tap_count_for(6000.0, 40000.0, ref) == 267); // double rate, double taps, forced odd
}

TEST_CASE("haar wavelet steps from +1 to -1") {
    const FloatCoefficientBank h2 = haar(2);
    CHECK(h2.real[0] == 1.0);
    CHECK(h2.real[1] == -1.0);

    const FloatCoefficientBank h4 = haar(4);
    CHECK(h4.real[0] == 1.0);
    CHECK(h4.real[1] == 1.0);
    CHECK(h4.real[2] == -1.0);
    CHECK(h4.real[3] == -1.0);
    CHECK((h4.imag == 0.0).all());
}

TEST_CASE("haar banks are zero-mean for any valid length") {
    for (Eigen::Index n = 2; n <= 64; n += 2)
        CHECK(haar(n).real.sum() == 0.0);
}

TEST_CASE("haar rejects odd or tiny sizes") {
    CHECK_THROWS_AS(haar(3), std::invalid_argument);
    CHECK_THROWS_AS(haar(0), std::invalid_argument);
    CHECK_THROWS_AS(haar(1), std::invalid_argument);
}
