#include "bindft/dft.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>

#include "bindft/errors.hpp"

namespace bindft {

RootTable::RootTable(int n) : n_(n), roots_(static_cast<std::size_t>(n)) {
    if (n < 1) throw std::invalid_argument("root table order must be positive");
    const long double two_pi = 6.283185307179586476925286766559L;
    for (int k = 0; k < n; ++k) {
        const long double angle = two_pi * k / n;
        roots_[k] = {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
    }
}

const RootTable& roots_for(int n) {
    static std::mutex mu;
    static std::map<int, RootTable> tables;
    std::lock_guard lock(mu);
    auto it = tables.find(n);
    if (it == tables.end()) it = tables.emplace(n, RootTable(n)).first;
    return it->second;
}

SpectralData::SpectralData(int n, int band_, int popcount_,
                           std::vector<std::complex<double>> coeffs_)
    : n_len(n), band(band_), popcount(popcount_), coeffs(std::move(coeffs_)) {
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("spectral data length must be odd and >= 3");
    if (band < 0 || band > half_band())
        throw BandLimitError("band " + std::to_string(band) + " outside [0, " +
                             std::to_string(half_band()) + "]");
    if (static_cast<int>(coeffs.size()) != band)
        throw std::invalid_argument("expected exactly band coefficients");
}

std::complex<double> SpectralData::coeff(int m) const {
    if (m == 0) return {static_cast<double>(popcount), 0.0};
    const int a = std::abs(m);
    if (a > band) throw BandLimitError("coefficient index " + std::to_string(m) + " beyond band");
    return m > 0 ? coeffs[a - 1] : std::conj(coeffs[a - 1]);
}

bool SpectralData::physical(double tol) const {
    for (const auto& c : coeffs)
        if (std::abs(c) > popcount + tol) return false;
    return popcount >= 0 && popcount <= n_len;
}

namespace {

template <class Value>
SpectralData forward_impl(const Value* x, int n, int band, int popcount) {
    const int m_max = (n - 1) / 2;
    if (band < 1 || band > m_max)
        throw BandLimitError("band " + std::to_string(band) + " outside [1, " +
                             std::to_string(m_max) + "]");
    const RootTable& roots = roots_for(n);
    std::vector<std::complex<double>> coeffs(band);
    for (int m = 1; m <= band; ++m) {
        std::complex<double> acc{0.0, 0.0};
        // 1-based positions in the exponent
        for (int pos = 1; pos <= n; ++pos) {
            const Value v = x[pos - 1];
            if (v == Value{0}) continue;
            acc += static_cast<double>(v) * roots.root(static_cast<long long>(m) * pos);
        }
        coeffs[m - 1] = acc;
    }
    return SpectralData(n, band, popcount, std::move(coeffs));
}

} // namespace

SpectralData dft_forward(const BinaryVector& x, int band) {
    return forward_impl(x.bits().data(), x.n(), band, x.popcount());
}

SpectralData dft_forward(const RelaxedVector& v, int band) {
    double sum = 0.0;
    for (const double e : v.values()) sum += e;
    return forward_impl(v.values().data(), v.n(), band, static_cast<int>(std::lround(sum)));
}

RelaxedVector idft_band_limited(const SpectralData& data) {
    const int n = data.n_len;
    const RootTable& roots = roots_for(n);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int pos = 1; pos <= n; ++pos) {
        std::complex<double> acc{static_cast<double>(data.popcount), 0.0};
        for (int m = 1; m <= data.band; ++m) {
            const auto c = data.coeffs[m - 1];
            acc += c * std::conj(roots.root(static_cast<long long>(pos) * m));
            acc += std::conj(c) * roots.root(static_cast<long long>(pos) * m);
        }
        acc /= static_cast<double>(n);
        if (std::abs(acc.imag()) >= 1e-9)
            throw CorruptDataError("imaginary residue " + std::to_string(acc.imag()) +
                                   " in band-limited reconstruction");
        out[pos - 1] = acc.real();
    }
    return RelaxedVector(std::move(out));
}

SpectralData two_species_to_binary(const SpectralData& species, const TwoSpeciesMap& map) {
    const double scale = map.b - map.a;
    const double r_raw = (species.popcount - map.a * species.n_len) / scale;
    const double r_int = std::round(r_raw);
    if (std::abs(r_raw - r_int) > 1e-6)
        throw SpeciesError("popcount " + std::to_string(r_raw) +
                           " not integral after species mapping");
    std::vector<std::complex<double>> coeffs(species.coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = species.coeffs[i] / scale;
    return SpectralData(species.n_len, species.band, static_cast<int>(r_int), std::move(coeffs));
}

Norm norm_from_string(std::string_view s) {
    if (s == "1") return Norm::l1;
    if (s == "2") return Norm::l2;
    if (s == "inf") return Norm::linf;
    throw std::invalid_argument("norm must be one of 1, 2, inf");
}

std::string to_string(Norm p) {
    switch (p) {
        case Norm::l1: return "1";
        case Norm::l2: return "2";
        case Norm::linf: return "inf";
    }
    return "?";
}

double chi_distance(const SpectralData& x, const SpectralData& y, int band, Norm p) {
    if (x.n_len != y.n_len)
        throw std::invalid_argument("chi distance requires equal lengths");
    if (band < 1) throw BandLimitError("chi distance requires band >= 1");
    if (band > x.band || band > y.band)
        throw BandLimitError("spectral data carry fewer than " + std::to_string(band) +
                             " coefficients");
    double acc = 0.0;
    for (int m = 1; m <= band; ++m) {
        const double diff = std::abs(x.coeffs[m - 1] - y.coeffs[m - 1]);
        switch (p) {
            case Norm::l1: acc += diff; break;
            case Norm::l2: acc += diff * diff; break;
            case Norm::linf: acc = std::max(acc, diff); break;
        }
    }
    switch (p) {
        case Norm::l1: return acc / band;
        case Norm::l2: return std::sqrt(acc / band);
        case Norm::linf: return acc;
    }
    return 0.0;
}

double chi_distance(const BinaryVector& x, const BinaryVector& y, int band, Norm p) {
    return chi_distance(dft_forward(x, band), dft_forward(y, band), band, p);
}

double chi_distance(const BinaryVector& x, const SpectralData& y, int band, Norm p) {
    return chi_distance(dft_forward(x, band), y, band, p);
}

int real_distance(const BinaryVector& x, const BinaryVector& y) {
    if (x.n() != y.n()) throw std::invalid_argument("real distance requires equal lengths");
    if (x.popcount() != y.popcount())
        throw std::invalid_argument("real distance requires equal popcounts");
    int diff = 0;
    for (int i = 0; i < x.n(); ++i) diff += x[i] != y[i];
    return diff / 2;
}

} // namespace bindft
