#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "wfd/detector.hpp"
#include "wfd/frontend.hpp"
#include "wfd/signals.hpp"
#include "wfd/wavelets.hpp"

namespace wfd {

struct SweepConfig {
    double f_start_hz = 500.0;
    double f_end_hz = 9500.0;
    int steps = 37; // 250 Hz spacing with the center frequency on the grid
    double amplitude_v = 1.25;
};

// Everything one experiment run needs. Defaults reproduce the reference
// hardware configuration: 6 kHz wavelet at 20 ksps with 133 taps, gain -1,
// full-scale 1.25 V stimuli.
struct ExperimentConfig {
    WaveletSpec wavelet = default_wavelet_spec();
    AdcConfig adc{};
    TimingConfig timing{};
    SweepConfig sweep{};
    ChirpSpec chirp{500.0, 9500.0, 1.0, 1.25, 1.65};
    std::filesystem::path output_dir = "out";

    void validate() const;
};

// Reads a JSON config file; absent keys keep their defaults. Throws
// std::invalid_argument on parse errors or invalid values.
ExperimentConfig load_config(const std::filesystem::path& path);

// DC sanity check: samples the window extremes and the reference level and
// compares the codes against the expected extremes 0x1FFF / 0x2000.
struct DcCheckRow {
    double voltage_v = 0.0;
    int code = 0;
    std::string hex;        // 14-bit code as 4 hex digits
    std::string frame_text; // 34-bit serial frame, channel B mirroring A
};
struct DcCheckReport {
    std::vector<DcCheckRow> rows;
    bool pass = false;
};
DcCheckReport run_dc_check(const ExperimentConfig& cfg);

// Tone sweep across the responsive band: per frequency, a full-scale tone is
// run through front end + detector for 3N samples and the steady-state peak
// response (delay line full) and its LED level are recorded.
struct SweepRow {
    double frequency_hz = 0.0;
    std::uint64_t peak_mag_sq = 0;
    int led_level = 0;
};
struct SweepResult {
    std::vector<SweepRow> rows; // frequencies strictly ascending
    ThresholdBank thresholds;
};
SweepResult run_sweep(const ExperimentConfig& cfg);

// Chirp response trace through both pipelines, sample by sample.
struct ChirpTraceRow {
    double time_s = 0.0;
    double float_response = 0.0;
    std::uint64_t fixed_mag_sq = 0;
    int led_level = 0;
};
struct ChirpTrace {
    std::vector<ChirpTraceRow> rows;
    ThresholdBank thresholds;
    bool straddles_center = true; // false => the sweep never crosses the wavelet frequency
};
ChirpTrace run_chirp(const ExperimentConfig& cfg);

// Clock arithmetic report for the sampling chain.
struct TimingReport {
    PulseDivider divider;
    double max_sample_rate_hz = 0.0;
    double nyquist_of_max_hz = 0.0;
    double nyquist_of_achieved_hz = 0.0;
    double wavelet_freq_hz = 0.0;
    bool pass = false; // wavelet center frequency below the achieved Nyquist limit
};
TimingReport timing_report(const ExperimentConfig& cfg);

// CSV writers. Output is deterministic: identical config -> byte-identical
// files (header comments echo the configuration, never the clock).
void write_sweep_csv(const SweepResult& result, const ExperimentConfig& cfg, std::ostream& out);
void write_chirp_csv(const ChirpTrace& trace, const ExperimentConfig& cfg, std::ostream& out);

enum class CoefficientFormat { vh, csv };

// Writes a quantized bank as either a Verilog header (two signed-literal
// array initializations, one 14-bit value per element) or CSV rows of
// index,real,imag. Both formats are documented in the README and stable
// across runs.
void export_coefficients(const Q14CoefficientBank& bank, CoefficientFormat format,
                         std::ostream& out);
void export_coefficients_file(const Q14CoefficientBank& bank, CoefficientFormat format,
                              const std::filesystem::path& path);

// Re-reads a CSV coefficient export; inverse of the csv form above.
Q14CoefficientBank parse_coefficients_csv(std::istream& in);

} // namespace wfd
