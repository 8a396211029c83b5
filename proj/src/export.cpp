#include "wfd/harness.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace wfd {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

// Verilog signed decimal literal, e.g. 14'sd8191 or -14'sd23.
std::string vh_literal(int value) {
    std::string text;
    if (value < 0) {
        text += '-';
        value = -value;
    }
    text += "14'sd";
    text += std::to_string(value);
    return text;
}

void write_vh_array(const char* name, const Q14Array& values, std::ostream& out) {
    const Eigen::Index n = values.size();
    out << "localparam signed [13:0] " << name << " [0:" << (n - 1) << "] = '{\n";
    for (Eigen::Index i = 0; i < n; ++i) {
        if (i % 8 == 0)
            out << "    ";
        out << vh_literal(values[i]);
        if (i + 1 < n)
            out << ",";
        out << ((i % 8 == 7 || i + 1 == n) ? "\n" : " ");
    }
    out << "};\n";
}

void write_metadata(const Q14CoefficientBank& bank, char comment_lead, std::ostream& out) {
    const char* lead = comment_lead == '#' ? "# " : "// ";
    out << lead << "wfd coefficient bank (Q14, scaled by 8191, fraction truncated)\n";
    out << lead << "taps: " << bank.source.tap_count << "\n";
    out << lead << "center_freq_hz: " << format_double(bank.source.center_freq_hz) << "\n";
    out << lead << "sample_rate_hz: " << format_double(bank.source.sample_rate_hz) << "\n";
    out << lead << "width: " << format_double(bank.source.width) << "\n";
}

} // namespace

void export_coefficients(const Q14CoefficientBank& bank, CoefficientFormat format,
                         std::ostream& out) {
    if (bank.real.size() != bank.imag.size() || bank.real.size() < 1)
        throw std::invalid_argument("export_coefficients: malformed bank");

    if (format == CoefficientFormat::vh) {
        write_metadata(bank, '/', out);
        out << "localparam integer WAVELET_TAPS = " << bank.source.tap_count << ";\n";
        write_vh_array("WAVELET_REAL", bank.real, out);
        write_vh_array("WAVELET_IMAG", bank.imag, out);
    } else {
        write_metadata(bank, '#', out);
        out << "index,real,imag\n";
        for (Eigen::Index i = 0; i < bank.real.size(); ++i)
            out << i << ',' << bank.real[i] << ',' << bank.imag[i] << "\n";
    }
}

void export_coefficients_file(const Q14CoefficientBank& bank, CoefficientFormat format,
                              const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write coefficient file: " + path.string());
    export_coefficients(bank, format, out);
    out.flush();
    if (!out)
        throw std::runtime_error("write failed: " + path.string());
}

Q14CoefficientBank parse_coefficients_csv(std::istream& in) {
    WaveletSpec spec;
    std::vector<std::int16_t> real;
    std::vector<std::int16_t> imag;

    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (line.front() == '#') {
            // metadata comments carry the source spec
            const auto parse_field = [&](const char* key, auto setter) {
                const std::string tag = std::string("# ") + key + ": ";
                if (line.rfind(tag, 0) == 0)
                    setter(line.substr(tag.size()));
            };
            parse_field("taps", [&](const std::string& v) { spec.tap_count = std::stol(v); });
            parse_field("center_freq_hz",
                        [&](const std::string& v) { spec.center_freq_hz = std::stod(v); });
            parse_field("sample_rate_hz",
                        [&](const std::string& v) { spec.sample_rate_hz = std::stod(v); });
            parse_field("width", [&](const std::string& v) { spec.width = std::stod(v); });
            continue;
        }
        if (!header_seen) { // the index,real,imag column row
            header_seen = true;
            continue;
        }

        std::istringstream row(line);
        std::string cell;
        long idx = 0;
        int re = 0;
        int im = 0;
        if (!std::getline(row, cell, ','))
            throw std::invalid_argument("coefficient csv: missing index column");
        idx = std::stol(cell);
        if (!std::getline(row, cell, ','))
            throw std::invalid_argument("coefficient csv: missing real column");
        re = std::stoi(cell);
        if (!std::getline(row, cell, ','))
            throw std::invalid_argument("coefficient csv: missing imag column");
        im = std::stoi(cell);

        if (idx != static_cast<long>(real.size()))
            throw std::invalid_argument("coefficient csv: indices must be contiguous from 0");
        real.push_back(static_cast<std::int16_t>(re));
        imag.push_back(static_cast<std::int16_t>(im));
    }

    if (real.empty())
        throw std::invalid_argument("coefficient csv: no coefficient rows");
    if (spec.tap_count != static_cast<Eigen::Index>(real.size()))
        throw std::invalid_argument("coefficient csv: tap metadata disagrees with row count");

    Q14CoefficientBank bank;
    bank.real = Eigen::Map<const Q14Array>(real.data(), static_cast<Eigen::Index>(real.size()));
    bank.imag = Eigen::Map<const Q14Array>(imag.data(), static_cast<Eigen::Index>(imag.size()));
    bank.source = spec;
    return bank;
}

} // namespace wfd
