// Command-line driver for the wavelet frequency detector experiments.
//
// Exit codes: 0 on success, 1 when a check fails, 2 for invalid
// configuration or I/O problems.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wfd/harness.hpp"

namespace {

using namespace wfd;

struct CliOptions {
    std::optional<std::string> config_path;
    std::optional<std::string> out_dir;
    std::optional<double> freq;
    std::optional<int> steps;
    std::optional<double> amplitude;
    std::optional<double> f_start;
    std::optional<double> f_end;
    std::optional<double> duration;
    std::string format = "csv";
};

ExperimentConfig build_config(const CliOptions& opt) {
    ExperimentConfig cfg =
        opt.config_path ? load_config(*opt.config_path) : ExperimentConfig{};

    if (opt.freq) {
        // retarget the wavelet; the tap count follows the frequency-scaling rule
        cfg.wavelet.tap_count =
            tap_count_for(*opt.freq, cfg.wavelet.sample_rate_hz, cfg.wavelet);
        cfg.wavelet.center_freq_hz = *opt.freq;
    }
    if (opt.steps)
        cfg.sweep.steps = *opt.steps;
    if (opt.amplitude) {
        cfg.sweep.amplitude_v = *opt.amplitude;
        cfg.chirp.amplitude_v = *opt.amplitude;
    }
    if (opt.f_start) {
        cfg.sweep.f_start_hz = *opt.f_start;
        cfg.chirp.f_start_hz = *opt.f_start;
    }
    if (opt.f_end) {
        cfg.sweep.f_end_hz = *opt.f_end;
        cfg.chirp.f_end_hz = *opt.f_end;
    }
    if (opt.duration)
        cfg.chirp.duration_s = *opt.duration;
    if (opt.out_dir)
        cfg.output_dir = *opt.out_dir;

    cfg.validate();
    return cfg;
}

std::filesystem::path prepare_output(const ExperimentConfig& cfg, const char* filename) {
    std::filesystem::create_directories(cfg.output_dir);
    return cfg.output_dir / filename;
}

void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& writer) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    writer(out);
}

int cmd_dc_check(const ExperimentConfig& cfg) {
    const DcCheckReport report = run_dc_check(cfg);
    for (const DcCheckRow& row : report.rows)
        std::printf("%.2f V -> code %6d (0x%s)  frame %s\n", row.voltage_v, row.code,
                    row.hex.c_str(), row.frame_text.c_str());
    std::printf("dc-check: %s\n", report.pass ? "PASS" : "FAIL");
    return report.pass ? 0 : 1;
}

int cmd_sweep(const ExperimentConfig& cfg) {
    const SweepResult result = run_sweep(cfg);
    const auto path = prepare_output(cfg, "sweep.csv");
    write_file(path, [&](std::ostream& out) { write_sweep_csv(result, cfg, out); });

    const SweepRow* peak = &result.rows.front();
    for (const SweepRow& row : result.rows)
        if (row.peak_mag_sq > peak->peak_mag_sq)
            peak = &row;
    std::printf("sweep: %zu rows -> %s (peak at %.0f Hz, level %d)\n", result.rows.size(),
                path.c_str(), peak->frequency_hz, peak->led_level);
    return 0;
}

int cmd_chirp(const ExperimentConfig& cfg) {
    const ChirpTrace trace = run_chirp(cfg);
    if (!trace.straddles_center)
        std::fprintf(stderr,
                     "warning: chirp band does not cross the wavelet center frequency\n");
    const auto path = prepare_output(cfg, "chirp.csv");
    write_file(path, [&](std::ostream& out) { write_chirp_csv(trace, cfg, out); });
    std::printf("chirp: %zu samples -> %s\n", trace.rows.size(), path.c_str());
    return 0;
}

int cmd_export(const ExperimentConfig& cfg, const std::string& format) {
    if (format != "vh" && format != "csv")
        throw std::invalid_argument("export format must be vh or csv");
    const Q14CoefficientBank bank = quantize_bank(morlet(cfg.wavelet));
    const char* filename =
        format == "vh" ? "wavelet_coefficients.vh" : "wavelet_coefficients.csv";
    const auto path = prepare_output(cfg, filename);
    export_coefficients_file(
        bank, format == "vh" ? CoefficientFormat::vh : CoefficientFormat::csv, path);
    std::printf("export: %lld taps (%lld values) -> %s\n",
                static_cast<long long>(bank.source.tap_count),
                static_cast<long long>(2 * bank.source.tap_count), path.c_str());
    return 0;
}

int cmd_timing(const ExperimentConfig& cfg) {
    const TimingReport r = timing_report(cfg);
    std::printf("pulse divider     : %ld\n", r.divider.divider);
    std::printf("achieved rate     : %.6g Hz (error %.3g%%)\n", r.divider.achieved_hz,
                100.0 * r.divider.relative_error);
    std::printf("max sample rate   : %.6g Hz\n", r.max_sample_rate_hz);
    std::printf("nyquist (max)     : %.6g Hz\n", r.nyquist_of_max_hz);
    std::printf("nyquist (achieved): %.6g Hz\n", r.nyquist_of_achieved_hz);
    std::printf("wavelet frequency : %.6g Hz\n", r.wavelet_freq_hz);
    std::printf("timing: %s\n", r.pass ? "PASS" : "FAIL");
    return r.pass ? 0 : 1;
}

int cmd_calibrate(const ExperimentConfig& cfg) {
    const Q14CoefficientBank bank = quantize_bank(morlet(cfg.wavelet));
    const ThresholdBank t = calibrate_max_response(bank, cfg.adc);
    std::printf("max response: %llu\n", static_cast<unsigned long long>(t.max_response));
    for (int k = 0; k < 8; ++k)
        std::printf("threshold %d: full %llu  clipped %u\n", k + 1,
                    static_cast<unsigned long long>(t.full[static_cast<std::size_t>(k)]),
                    t.clipped[static_cast<std::size_t>(k)]);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"wavelet-based frequency detector experiments"};
    app.require_subcommand(1);

    CliOptions opt;
    app.add_option("--config", opt.config_path, "JSON config file");
    app.add_option("--out", opt.out_dir, "output directory for CSV and header files");

    CLI::App* dc = app.add_subcommand("dc-check", "verify converter endpoint codes");
    CLI::App* sweep = app.add_subcommand("sweep", "tone sweep across the responsive band");
    sweep->add_option("--freq", opt.freq, "retarget the wavelet center frequency (Hz)");
    sweep->add_option("--steps", opt.steps, "number of sweep frequencies");
    sweep->add_option("--amplitude", opt.amplitude, "stimulus amplitude (V)");
    sweep->add_option("--f-start", opt.f_start, "sweep start (Hz)");
    sweep->add_option("--f-end", opt.f_end, "sweep end (Hz)");
    CLI::App* chirp = app.add_subcommand("chirp", "chirp response trace");
    chirp->add_option("--freq", opt.freq, "retarget the wavelet center frequency (Hz)");
    chirp->add_option("--f-start", opt.f_start, "chirp start (Hz)");
    chirp->add_option("--f-end", opt.f_end, "chirp end (Hz)");
    chirp->add_option("--duration", opt.duration, "chirp duration (s)");
    chirp->add_option("--amplitude", opt.amplitude, "stimulus amplitude (V)");
    CLI::App* exp = app.add_subcommand("export", "write the quantized coefficient bank");
    exp->add_option("--freq", opt.freq, "retarget the wavelet center frequency (Hz)");
    exp->add_option("--format", opt.format, "vh or csv")->default_val("csv");
    CLI::App* timing = app.add_subcommand("timing", "clock and rate report");
    CLI::App* calibrate = app.add_subcommand("calibrate", "threshold calibration report");
    calibrate->add_option("--freq", opt.freq, "retarget the wavelet center frequency (Hz)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const ExperimentConfig cfg = build_config(opt);
        if (dc->parsed())
            return cmd_dc_check(cfg);
        if (sweep->parsed())
            return cmd_sweep(cfg);
        if (chirp->parsed())
            return cmd_chirp(cfg);
        if (exp->parsed())
            return cmd_export(cfg, opt.format);
        if (timing->parsed())
            return cmd_timing(cfg);
        if (calibrate->parsed())
            return cmd_calibrate(cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
