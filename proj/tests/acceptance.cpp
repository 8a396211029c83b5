// Acceptance suite: end-to-end checks of the detector pipeline against its
// documented anchor values and properties. Prints one PASS/FAIL line per
// criterion; exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wfd/harness.hpp"

using namespace wfd;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty())
                detail += "; ";
            detail += what;
        }
    }
};

int g_failures = 0;

void run_criterion(int id, const char* name, const std::function<void(Outcome&)>& body) {
    Outcome outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(outcome);
    } catch (const std::exception& e) {
        outcome.pass = false;
        outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::printf("[%s] criterion %2d: %-28s (%.2f s)%s%s\n", outcome.pass ? "PASS" : "FAIL",
                id, name, seconds, outcome.detail.empty() ? "" : " -- ",
                outcome.detail.c_str());
    if (!outcome.pass)
        ++g_failures;
}

double relative_error(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}

// Steady-state float peak of a unit tone at `freq`, same windowing as the
// fixed sweep (3N samples, peak once the delay line is full).
double float_tone_peak(const FloatCoefficientBank& bank, double freq) {
    const Eigen::Index n = bank.spec.tap_count;
    const double fs = bank.spec.sample_rate_hz;
    const Eigen::ArrayXd t =
        Eigen::ArrayXd::LinSpaced(3 * n, 0.0, static_cast<double>(3 * n - 1)) / fs;
    const Eigen::ArrayXd out = float_response(bank, (2.0 * M_PI * freq * t).sin());
    return out.tail(2 * n).maxCoeff();
}

} // namespace

int main() {
    const ExperimentConfig cfg; // reference configuration throughout

    // shared artifacts; several criteria read from the same sweep and chirp
    const auto setup_start = std::chrono::steady_clock::now();
    const FloatCoefficientBank bank_f = morlet(cfg.wavelet);
    const Q14CoefficientBank bank_q = quantize_bank(bank_f);
    const SweepResult sweep = run_sweep(cfg);
    const ChirpTrace chirp = run_chirp(cfg);
    std::printf("setup: bank, calibration, sweep, chirp (%.2f s)\n",
                std::chrono::duration<double>(std::chrono::steady_clock::now() - setup_start)
                    .count());

    run_criterion(1, "coefficient counts", [&](Outcome& o) {
        o.require(bank_f.real.size() == 133, "default bank is not 133 taps");
        o.require(bank_q.real.size() + bank_q.imag.size() == 266,
                  "default bank total is not 266");
        const Eigen::Index total_1k = coefficient_total_estimate(1000.0, 20000.0, cfg.wavelet);
        o.require(total_1k == 1596,
                  "1 kHz variant total is " + std::to_string(total_1k) + ", want 1596");
    });

    run_criterion(2, "converter endpoint codes", [&](Outcome& o) {
        const int at_max = sample_voltage(2.9, cfg.adc).value();
        const int at_min = sample_voltage(0.4, cfg.adc).value();
        o.require(at_max == -8192, "2.9 V gave " + std::to_string(at_max));
        o.require(at_min == 8191, "0.4 V gave " + std::to_string(at_min));
    });

    run_criterion(3, "rate arithmetic", [&](Outcome& o) {
        const double rate = max_sample_rate(50e6);
        o.require(relative_error(rate, 1.4706e6) <= 0.005, "max sample rate off 1.47 MSPS");
        o.require(relative_error(nyquist_limit(rate), 0.735e6) <= 0.005,
                  "Nyquist limit off 0.735 MHz");
        o.require(pulse_divider(10e6, 20e3).divider == 500, "divider is not 500");
    });

    run_criterion(4, "serial frame codec", [&](Outcome& o) {
        long mismatches = 0;
        for (int code = -8192; code <= 8191; ++code) {
            const AdcSamplePair a = decode_frame(encode_frame({Q14(code), Q14(0)}));
            if (a.channel_a.value() != code || a.channel_b.value() != 0)
                ++mismatches;
            const AdcSamplePair b = decode_frame(encode_frame({Q14(0), Q14(code)}));
            if (b.channel_a.value() != 0 || b.channel_b.value() != code)
                ++mismatches;
        }
        std::mt19937 rng(12345);
        std::uniform_int_distribution<int> dist(-8192, 8191);
        for (int i = 0; i < 10000; ++i) {
            const int a = dist(rng);
            const int b = dist(rng);
            const AdcSamplePair back = decode_frame(encode_frame({Q14(a), Q14(b)}));
            if (back.channel_a.value() != a || back.channel_b.value() != b)
                ++mismatches;
        }
        o.require(mismatches == 0, std::to_string(mismatches) + " roundtrip mismatches");
    });

    run_criterion(5, "register sizing", [&](Outcome& o) {
        const int bits = required_accumulator_bits(bank_q);
        o.require(bits <= 33, "accumulators need " + std::to_string(bits) + " bits");
        std::uint64_t max_mag = 0;
        for (const SweepRow& row : sweep.rows)
            max_mag = std::max(max_mag, row.peak_mag_sq);
        o.require((max_mag >> 50) == 0, "sweep response exceeded 50 bits");
        o.require(max_mag > 0, "sweep produced no response");
    });

    run_criterion(6, "frequency selectivity", [&](Outcome& o) {
        const SweepRow* at_center = nullptr;
        for (const SweepRow& row : sweep.rows)
            if (!at_center || std::abs(row.frequency_hz - 6000.0) <
                                  std::abs(at_center->frequency_hz - 6000.0))
                at_center = &row;
        o.require(at_center && std::abs(at_center->frequency_hz - 6000.0) < 1e-9,
                  "6 kHz missing from the sweep grid");
        if (at_center)
            o.require(at_center->led_level == 8, "6 kHz level is " +
                                                     std::to_string(at_center->led_level));
        o.require(sweep.rows.front().led_level == 0, "500 Hz edge lights LEDs");
        o.require(sweep.rows.back().led_level == 0, "9.5 kHz edge lights LEDs");

        bool monotone = true;
        for (const SweepRow& a : sweep.rows)
            for (const SweepRow& b : sweep.rows) {
                const double da = std::abs(a.frequency_hz - 6000.0);
                const double db = std::abs(b.frequency_hz - 6000.0);
                if (da < db && a.led_level < b.led_level)
                    monotone = false;
            }
        o.require(monotone, "LED level is not non-increasing with distance from 6 kHz");
    });

    run_criterion(7, "fixed vs float agreement", [&](Outcome& o) {
        // normalized steady-state peaks across the sweep
        std::vector<double> fixed_peaks;
        std::vector<double> float_peaks;
        for (const SweepRow& row : sweep.rows) {
            fixed_peaks.push_back(static_cast<double>(row.peak_mag_sq));
            float_peaks.push_back(float_tone_peak(bank_f, row.frequency_hz));
        }
        const double fixed_max = *std::max_element(fixed_peaks.begin(), fixed_peaks.end());
        const double float_max = *std::max_element(float_peaks.begin(), float_peaks.end());
        double worst = 0.0;
        for (std::size_t i = 0; i < fixed_peaks.size(); ++i)
            worst = std::max(worst, std::abs(fixed_peaks[i] / fixed_max -
                                             float_peaks[i] / float_max));
        o.require(worst <= 0.02,
                  "normalized peak difference " + std::to_string(worst) + " > 2%");

        // chirp traces through both pipelines stay strongly correlated
        std::vector<double> fixed_trace;
        std::vector<double> float_trace;
        for (const ChirpTraceRow& row : chirp.rows) {
            fixed_trace.push_back(static_cast<double>(row.fixed_mag_sq));
            float_trace.push_back(row.float_response);
        }
        const double r = oracle::pearson(fixed_trace, float_trace);
        o.require(r >= 0.99, "chirp correlation " + std::to_string(r) + " < 0.99");
    });

    run_criterion(8, "chirp localization", [&](Outcome& o) {
        const double fs = cfg.wavelet.sample_rate_hz;
        const Eigen::Index n = cfg.wavelet.tap_count;
        const double t_cross = (cfg.wavelet.center_freq_hz - cfg.chirp.f_start_hz) /
                               (cfg.chirp.f_end_hz - cfg.chirp.f_start_hz) *
                               cfg.chirp.duration_s;
        const double window_samples = static_cast<double>(n - 1) / 2.0 + 10.0;

        std::size_t argmax_fixed = 0;
        std::size_t argmax_float = 0;
        for (std::size_t i = 0; i < chirp.rows.size(); ++i) {
            if (chirp.rows[i].fixed_mag_sq > chirp.rows[argmax_fixed].fixed_mag_sq)
                argmax_fixed = i;
            if (chirp.rows[i].float_response > chirp.rows[argmax_float].float_response)
                argmax_float = i;
        }
        const double off_fixed =
            std::abs(static_cast<double>(argmax_fixed) - t_cross * fs);
        const double off_float =
            std::abs(static_cast<double>(argmax_float) - t_cross * fs);
        o.require(off_fixed <= window_samples,
                  "fixed argmax off by " + std::to_string(off_fixed) + " samples");
        o.require(off_float <= window_samples,
                  "float argmax off by " + std::to_string(off_float) + " samples");
    });

    run_criterion(9, "clipping-trick soundness", [&](Outcome& o) {
        const ThresholdBank& t = sweep.thresholds;
        const std::uint64_t margin = std::uint64_t(1) << 34;
        std::mt19937_64 rng(987654321);
        std::uniform_int_distribution<std::uint64_t> dist(0, (std::uint64_t(1) << 50) - 1);

        long violations = 0;
        long comparable = 0;
        for (int i = 0; i < 100000; ++i) {
            const std::uint64_t mag = dist(rng);
            bool near_boundary = false;
            for (const std::uint64_t full : t.full) {
                const std::uint64_t d = mag > full ? mag - full : full - mag;
                if (d < margin)
                    near_boundary = true;
            }
            if (near_boundary)
                continue;
            ++comparable;
            const Response r{mag};
            if (led_level(r, t) != led_level_unclipped(r, t))
                ++violations;
        }
        o.require(violations == 0, std::to_string(violations) + " disagreements");
        o.require(comparable > 50000, "condition filter left too few samples");
    });

    run_criterion(10, "wavelet correctness", [&](Outcome& o) {
        const Eigen::Index n = bank_f.spec.tap_count;
        const Eigen::Index center = (n - 1) / 2;
        o.require(bank_f.real[center] == 1.0 && bank_f.imag[center] == 0.0,
                  "center tap is not 1 + 0i");

        bool symmetric = true;
        for (Eigen::Index k = 0; k < n; ++k)
            if (bank_f.real[k] != bank_f.real[n - 1 - k] ||
                bank_f.imag[k] != -bank_f.imag[n - 1 - k])
                symmetric = false;
        o.require(symmetric, "bank is not symmetric tap-exact");

        const double tol = 1e-6 * static_cast<double>(n);
        o.require(std::abs(bank_f.real.sum()) < tol, "real part is not zero-mean");
        o.require(std::abs(bank_f.imag.sum()) < tol, "imag part is not zero-mean");

        const double lsb = 1.0 / 8191.0;
        o.require(std::abs(bank_f.real[0]) < lsb && std::abs(bank_f.imag[0]) < lsb,
                  "edge coefficients exceed one quantization step");
    });

    if (g_failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria failed\n", g_failures);
    return g_failures;
}
