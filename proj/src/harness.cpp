#include "wfd/harness.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace wfd {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string hex_code(int code) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%04X", static_cast<unsigned>(code) & 0x3FFFu);
    return buf;
}

void write_config_header(const ExperimentConfig& cfg, std::ostream& out) {
    out << "# wavelet: center_freq_hz=" << format_double(cfg.wavelet.center_freq_hz)
        << " width=" << format_double(cfg.wavelet.width)
        << " sample_rate_hz=" << format_double(cfg.wavelet.sample_rate_hz)
        << " tap_count=" << cfg.wavelet.tap_count << "\n";
    out << "# adc: gain_code=0x" << hex_code(cfg.adc.gain_code).substr(2)
        << " window=[" << format_double(cfg.adc.v_min) << "," << format_double(cfg.adc.v_max)
        << "] v_ref=" << format_double(cfg.adc.v_ref) << "\n";
}

} // namespace

void ExperimentConfig::validate() const {
    if (wavelet.tap_count < 1 || wavelet.tap_count % 2 == 0)
        throw std::invalid_argument("config: wavelet tap count must be odd and positive");
    if (wavelet.width <= 0.0 || wavelet.center_freq_hz <= 0.0 || wavelet.sample_rate_hz <= 0.0)
        throw std::invalid_argument("config: wavelet parameters must be positive");
    adc.validate();
    if (timing.module_clock_hz <= 0.0 || timing.spi_clock_hz <= 0.0 || timing.sample_rate_hz <= 0.0)
        throw std::invalid_argument("config: clocks must be positive");
    if (sweep.steps < 2)
        throw std::invalid_argument("config: sweep needs at least 2 steps");
    if (sweep.f_start_hz <= 0.0 || sweep.f_end_hz <= sweep.f_start_hz)
        throw std::invalid_argument("config: sweep band must be ascending and positive");
    if (sweep.amplitude_v < 0.0 || chirp.amplitude_v < 0.0)
        throw std::invalid_argument("config: amplitudes must be non-negative");
    if (chirp.duration_s <= 0.0)
        throw std::invalid_argument("config: chirp duration must be positive");
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config file: " + path.string());

    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }

    ExperimentConfig cfg;
    try {
        if (j.contains("wavelet")) {
            const auto& w = j["wavelet"];
            cfg.wavelet.center_freq_hz = w.value("center_freq_hz", cfg.wavelet.center_freq_hz);
            cfg.wavelet.width = w.value("width", cfg.wavelet.width);
            cfg.wavelet.sample_rate_hz = w.value("sample_rate_hz", cfg.wavelet.sample_rate_hz);
            cfg.wavelet.tap_count = w.value("tap_count", cfg.wavelet.tap_count);
        }
        if (j.contains("adc")) {
            const int code = j["adc"].value("gain_code", 0x01);
            if (code < 0 || code > 0xFF)
                throw std::invalid_argument("config: gain_code must be an 8-bit value");
            cfg.adc = adc_config_for_gain_code(static_cast<std::uint8_t>(code));
        }
        if (j.contains("timing")) {
            const auto& t = j["timing"];
            cfg.timing.module_clock_hz = t.value("module_clock_hz", cfg.timing.module_clock_hz);
            cfg.timing.spi_clock_hz = t.value("spi_clock_hz", cfg.timing.spi_clock_hz);
        }
        if (j.contains("sweep")) {
            const auto& s = j["sweep"];
            cfg.sweep.f_start_hz = s.value("f_start_hz", cfg.sweep.f_start_hz);
            cfg.sweep.f_end_hz = s.value("f_end_hz", cfg.sweep.f_end_hz);
            cfg.sweep.steps = s.value("steps", cfg.sweep.steps);
            cfg.sweep.amplitude_v = s.value("amplitude_v", cfg.sweep.amplitude_v);
        }
        if (j.contains("chirp")) {
            const auto& c = j["chirp"];
            cfg.chirp.f_start_hz = c.value("f_start_hz", cfg.chirp.f_start_hz);
            cfg.chirp.f_end_hz = c.value("f_end_hz", cfg.chirp.f_end_hz);
            cfg.chirp.duration_s = c.value("duration_s", cfg.chirp.duration_s);
            cfg.chirp.amplitude_v = c.value("amplitude_v", cfg.chirp.amplitude_v);
            cfg.chirp.dc_bias_v = c.value("dc_bias_v", cfg.chirp.dc_bias_v);
        }
        if (j.contains("output_dir"))
            cfg.output_dir = j["output_dir"].get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config field error: ") + e.what());
    }

    // one sampling rate drives the whole chain
    cfg.timing.sample_rate_hz = cfg.wavelet.sample_rate_hz;
    cfg.validate();
    return cfg;
}

DcCheckReport run_dc_check(const ExperimentConfig& cfg) {
    cfg.validate();

    DcCheckReport report;
    // channel B mirrors channel A: the experiments drive a single input
    const auto probe = [&](double v) {
        const Q14 code = sample_voltage(v, cfg.adc);
        DcCheckRow row;
        row.voltage_v = v;
        row.code = code.value();
        row.hex = hex_code(code.value());
        row.frame_text = to_string(encode_frame({code, code}));
        report.rows.push_back(row);
        return code.value();
    };

    const int at_min = probe(cfg.adc.v_min);
    const int at_max = probe(cfg.adc.v_max);
    probe(cfg.adc.v_ref);
    report.pass = at_min == cfg.adc.code_max() && at_max == cfg.adc.code_min();
    return report;
}

namespace {

struct FixedRun {
    std::uint64_t peak_mag_sq = 0;
};

// Full-scale tone through converter + detector; peak once the delay line has
// filled (pushes N .. 3N-1).
FixedRun run_fixed_tone(const ExperimentConfig& cfg, const Q14CoefficientBank& bank,
                        double frequency_hz) {
    const double fs = cfg.wavelet.sample_rate_hz;
    const Eigen::Index n = bank.source.tap_count;
    const Eigen::Index total = 3 * n;
    const ToneSpec tone{frequency_hz, cfg.sweep.amplitude_v, cfg.adc.v_ref, 0.0};
    const std::vector<Q14> codes =
        sample_stream(gen_tone(tone, fs, static_cast<double>(total) / fs), cfg.adc);

    DetectorState detector(bank);
    FixedRun run;
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(codes.size()); ++i) {
        const Response r = detector.push_sample(codes[static_cast<std::size_t>(i)]);
        if (i >= n)
            run.peak_mag_sq = std::max(run.peak_mag_sq, r.mag_sq);
    }
    return run;
}

} // namespace

SweepResult run_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const double nyquist = nyquist_limit(cfg.wavelet.sample_rate_hz);
    if (cfg.sweep.f_end_hz >= nyquist)
        throw NyquistError("run_sweep: sweep band reaches the Nyquist limit");

    const FloatCoefficientBank bank_f = morlet(cfg.wavelet);
    const Q14CoefficientBank bank_q = quantize_bank(bank_f);

    SweepResult result;
    result.thresholds = calibrate_max_response(bank_q, cfg.adc);

    const double span = cfg.sweep.f_end_hz - cfg.sweep.f_start_hz;
    for (int k = 0; k < cfg.sweep.steps; ++k) {
        const double f =
            cfg.sweep.f_start_hz + span * static_cast<double>(k) / (cfg.sweep.steps - 1);
        const FixedRun run = run_fixed_tone(cfg, bank_q, f);
        result.rows.push_back(
            {f, run.peak_mag_sq, led_level(Response{run.peak_mag_sq}, result.thresholds)});
    }
    return result;
}

ChirpTrace run_chirp(const ExperimentConfig& cfg) {
    cfg.validate();

    const FloatCoefficientBank bank_f = morlet(cfg.wavelet);
    const Q14CoefficientBank bank_q = quantize_bank(bank_f);
    const double fs = cfg.wavelet.sample_rate_hz;

    ChirpTrace trace;
    trace.thresholds = calibrate_max_response(bank_q, cfg.adc);

    const double lo = std::min(cfg.chirp.f_start_hz, cfg.chirp.f_end_hz);
    const double hi = std::max(cfg.chirp.f_start_hz, cfg.chirp.f_end_hz);
    trace.straddles_center =
        lo <= cfg.wavelet.center_freq_hz && cfg.wavelet.center_freq_hz <= hi;

    const VoltageSequence chirp = gen_chirp(cfg.chirp, fs);
    const std::vector<Q14> codes = sample_stream(chirp, cfg.adc);

    // stage-1 reference: the same waveform normalized to unit scale, no
    // quantization anywhere
    const Eigen::ArrayXd reference =
        cfg.adc.gain * (chirp.samples_v - cfg.adc.v_ref) / (cfg.adc.v_max - cfg.adc.v_ref);
    const Eigen::ArrayXd float_trace = float_response(bank_f, reference);

    DetectorState detector(bank_q);
    trace.rows.reserve(codes.size());
    for (std::size_t i = 0; i < codes.size(); ++i) {
        const Response r = detector.push_sample(codes[i]);
        trace.rows.push_back({static_cast<double>(i) / fs,
                              float_trace[static_cast<Eigen::Index>(i)], r.mag_sq,
                              led_level(r, trace.thresholds)});
    }
    return trace;
}

TimingReport timing_report(const ExperimentConfig& cfg) {
    cfg.validate();
    const SamplingChain chain(cfg.adc, cfg.timing);

    TimingReport report;
    report.divider = chain.divider();
    report.max_sample_rate_hz = max_sample_rate(cfg.timing.spi_clock_hz);
    report.nyquist_of_max_hz = nyquist_limit(report.max_sample_rate_hz);
    report.nyquist_of_achieved_hz = nyquist_limit(chain.achieved_sample_rate());
    report.wavelet_freq_hz = cfg.wavelet.center_freq_hz;
    report.pass = report.wavelet_freq_hz < report.nyquist_of_achieved_hz;
    return report;
}

void write_sweep_csv(const SweepResult& result, const ExperimentConfig& cfg, std::ostream& out) {
    write_config_header(cfg, out);
    out << "# sweep: " << format_double(cfg.sweep.f_start_hz) << ".."
        << format_double(cfg.sweep.f_end_hz) << " Hz in " << cfg.sweep.steps
        << " steps, amplitude " << format_double(cfg.sweep.amplitude_v)
        << " V (tool defaults unless overridden)\n";
    out << "# max_response: " << result.thresholds.max_response << "\n";
    out << "frequency_hz,peak_mag_sq,led_level\n";
    for (const SweepRow& row : result.rows)
        out << format_double(row.frequency_hz) << ',' << row.peak_mag_sq << ','
            << row.led_level << "\n";
}

void write_chirp_csv(const ChirpTrace& trace, const ExperimentConfig& cfg, std::ostream& out) {
    write_config_header(cfg, out);
    out << "# chirp: " << format_double(cfg.chirp.f_start_hz) << ".."
        << format_double(cfg.chirp.f_end_hz) << " Hz over "
        << format_double(cfg.chirp.duration_s) << " s (tool defaults unless overridden)\n";
    out << "time_s,float_response,fixed_mag_sq,led_level";
    for (int k = 1; k <= 8; ++k)
        out << ",threshold_" << k;
    out << "\n";

    char buf[64];
    for (const ChirpTraceRow& row : trace.rows) {
        std::snprintf(buf, sizeof(buf), "%.8f,%.10e,%" PRIu64 ",%d", row.time_s,
                      row.float_response, row.fixed_mag_sq, row.led_level);
        out << buf;
        for (const std::uint64_t t : trace.thresholds.full)
            out << ',' << t;
        out << "\n";
    }
}

} // namespace wfd
