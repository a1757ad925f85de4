#include "bindft/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bindft/errors.hpp"

namespace bindft {

namespace {

std::string strip_comment(const std::string& line) {
    const auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

bool blank(const std::string& s) {
    for (const char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CorruptDataError("cannot open '" + path + "' for reading");
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw CorruptDataError("cannot open '" + path + "' for writing");
    return out;
}

int parse_header_int(std::istream& in, const std::string& key) {
    std::string line;
    while (std::getline(in, line)) {
        line = strip_comment(line);
        if (blank(line)) continue;
        std::istringstream ls(line);
        std::string k;
        long long value = 0;
        if (!(ls >> k >> value) || k != key)
            throw CorruptDataError("expected header line '" + key + " <int>', got '" + line +
                                   "'");
        return static_cast<int>(value);
    }
    throw CorruptDataError("missing header line '" + key + " <int>'");
}

} // namespace

BinaryVector read_vector(std::istream& in) {
    std::string digits;
    std::string line;
    while (std::getline(in, line)) {
        line = strip_comment(line);
        for (const char c : line) {
            if (std::isspace(static_cast<unsigned char>(c))) continue;
            digits.push_back(c);
        }
    }
    if (digits.empty()) throw CorruptDataError("vector file contains no digits");
    try {
        return BinaryVector::from_string(digits);
    } catch (const std::invalid_argument& e) {
        throw CorruptDataError(std::string("bad vector file: ") + e.what());
    }
}

BinaryVector read_vector_file(const std::string& path) {
    auto in = open_in(path);
    return read_vector(in);
}

void write_vector(std::ostream& out, const BinaryVector& x) { out << x.to_string() << '\n'; }

void write_vector_file(const std::string& path, const BinaryVector& x) {
    auto out = open_out(path);
    write_vector(out, x);
}

SpectralData read_spectral(std::istream& in) {
    const int n = parse_header_int(in, "N");
    const int r = parse_header_int(in, "r");
    const int band = parse_header_int(in, "L");
    std::vector<std::complex<double>> coeffs;
    coeffs.reserve(static_cast<std::size_t>(std::max(0, band)));
    std::string line;
    int expected_m = 1;
    while (expected_m <= band && std::getline(in, line)) {
        line = strip_comment(line);
        if (blank(line)) continue;
        std::istringstream ls(line);
        int m = 0;
        double re = 0.0, im = 0.0;
        if (!(ls >> m >> re >> im))
            throw CorruptDataError("expected coefficient line 'm re im', got '" + line + "'");
        if (m != expected_m)
            throw CorruptDataError("coefficient index " + std::to_string(m) +
                                   " out of order; expected " + std::to_string(expected_m));
        coeffs.emplace_back(re, im);
        ++expected_m;
    }
    if (expected_m <= band)
        throw CorruptDataError("spectral file ends before coefficient " +
                               std::to_string(expected_m));
    try {
        SpectralData data(n, band, r, std::move(coeffs));
        if (!data.physical())
            std::fprintf(stderr,
                         "warning: spectral data violate |c_m| <= r; treating as noisy input\n");
        return data;
    } catch (const std::invalid_argument& e) {
        throw CorruptDataError(std::string("bad spectral file: ") + e.what());
    }
}

SpectralData read_spectral_file(const std::string& path) {
    auto in = open_in(path);
    return read_spectral(in);
}

double round_significant(double value, int digits) {
    if (digits <= 0) return value;
    if (digits > 17) throw std::invalid_argument("significant digits outside [1, 17]");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, value);
    return std::strtod(buf, nullptr);
}

void write_spectral(std::ostream& out, const SpectralData& data, int significant_digits) {
    char buf[64];
    const auto fmt = [&](double v) {
        if (significant_digits > 0) v = round_significant(v, significant_digits);
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    out << "N " << data.n_len << '\n';
    out << "r " << data.popcount << '\n';
    out << "L " << data.band << '\n';
    for (int m = 1; m <= data.band; ++m) {
        out << m << ' ' << fmt(data.coeffs[m - 1].real()) << ' '
            << fmt(data.coeffs[m - 1].imag()) << '\n';
    }
}

void write_spectral_file(const std::string& path, const SpectralData& data,
                         int significant_digits) {
    auto out = open_out(path);
    write_spectral(out, data, significant_digits);
}

std::map<std::string, std::string> read_config(std::istream& in) {
    std::map<std::string, std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        line = strip_comment(line);
        if (blank(line)) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CorruptDataError("expected 'key = value', got '" + line + "'");
        const auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw CorruptDataError("empty key or value in '" + line + "'");
        out[key] = value;
    }
    return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    auto in = open_in(path);
    return read_config(in);
}

} // namespace bindft
