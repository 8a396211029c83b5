#include <doctest.h>

#include <cmath>
#include <random>

#include "wfd/quantize.hpp"

using namespace wfd;

TEST_CASE("quantize_value anchors") {
    CHECK(quantize_value(1.0).value() == 8191);
    CHECK(quantize_value(-1.0).value() == -8191);
    CHECK(quantize_value(0.0).value() == 0);
    CHECK(quantize_value(-0.999).value() == -8182); // trunc(-8182.809) toward zero
    CHECK(quantize_value(0.999).value() == 8182);
}

TEST_CASE("quantize_value rejects out-of-range input") {
    CHECK_THROWS_AS(quantize_value(1.0001), std::out_of_range);
    CHECK_THROWS_AS(quantize_value(-1.0001), std::out_of_range);
}

TEST_CASE("quantization error stays below one step") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const double x = dist(rng);
        const double back = static_cast<double>(quantize_value(x).value()) / 8191.0;
        CHECK(std::abs(back - x) < 1.0 / 8191.0);
    }
}

TEST_CASE("quantize_value is monotone") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        double a = dist(rng);
        double b = dist(rng);
        if (a > b)
            std::swap(a, b);
        CHECK(quantize_value(a).value() <= quantize_value(b).value());
    }
}

TEST_CASE("truncation toward zero is odd-symmetric") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const double x = dist(rng);
        CHECK(quantize_value(-x).value() == -quantize_value(x).value());
    }
}

TEST_CASE("quantized bank preserves the float bank's symmetry exactly") {
    const Q14CoefficientBank bank = quantize_bank(morlet(default_wavelet_spec()));
    const Eigen::Index n = bank.source.tap_count;
    REQUIRE(bank.real.size() == n);
    REQUIRE(bank.imag.size() == n);

    const Eigen::Index center = (n - 1) / 2;
    CHECK(bank.real[center] == 8191);
    CHECK(bank.imag[center] == 0);
    for (Eigen::Index k = 0; k < n; ++k) {
        CHECK(bank.real[k] == bank.real[n - 1 - k]);
        CHECK(bank.imag[k] == -bank.imag[n - 1 - k]);
    }
}

TEST_CASE("quantized bank values stay within [-8191, 8191]") {
    const Q14CoefficientBank bank = quantize_bank(morlet(default_wavelet_spec()));
    CHECK(bank.real.abs().maxCoeff() <= 8191);
    CHECK(bank.imag.abs().maxCoeff() <= 8191);
}

TEST_CASE("quantized bank zero-mean drift is bounded") {
    const Q14CoefficientBank bank = quantize_bank(morlet(default_wavelet_spec()));
    const long sum_real = bank.real.cast<long>().sum();
    const long sum_imag = bank.imag.cast<long>().sum();
    CHECK(std::abs(sum_real) <= bank.source.tap_count);
    CHECK(sum_imag == 0); // odd symmetry cancels in pairs
}

TEST_CASE("Q14 construction enforces its bounds") {
    CHECK(Q14(-8192).value() == -8192);
    CHECK(Q14(8191).value() == 8191);
    CHECK_THROWS_AS(Q14(8192), std::out_of_range);
    CHECK_THROWS_AS(Q14(-8193), std::out_of_range);
}
