#include "bindft/binary_vector.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "bindft/errors.hpp"

namespace bindft {

BinaryVector::BinaryVector(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    const auto n = bits_.size();
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("binary vector length must be odd and >= 3, got " +
                                    std::to_string(n));
    for (const auto b : bits_) {
        if (b > 1) throw std::invalid_argument("binary vector entries must be 0 or 1");
        popcount_ += b;
    }
}

BinaryVector BinaryVector::from_string(std::string_view digits) {
    std::vector<std::uint8_t> bits;
    bits.reserve(digits.size());
    for (const char c : digits) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c != '0' && c != '1')
            throw std::invalid_argument(std::string("invalid vector character '") + c + "'");
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return BinaryVector(std::move(bits));
}

std::vector<int> BinaryVector::one_positions() const {
    std::vector<int> out;
    out.reserve(popcount_);
    for (int i = 0; i < n(); ++i)
        if (bits_[i]) out.push_back(i + 1);
    return out;
}

std::vector<int> BinaryVector::zero_positions() const {
    std::vector<int> out;
    out.reserve(n() - popcount_);
    for (int i = 0; i < n(); ++i)
        if (!bits_[i]) out.push_back(i + 1);
    return out;
}

BinaryVector BinaryVector::complement() const {
    std::vector<std::uint8_t> flipped(bits_.size());
    for (std::size_t i = 0; i < bits_.size(); ++i) flipped[i] = bits_[i] ? 0 : 1;
    return BinaryVector(std::move(flipped));
}

std::string BinaryVector::to_string() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) s[i] = '1';
    return s;
}

RelaxedVector::RelaxedVector(std::vector<double> values) : values_(std::move(values)) {
    const auto n = values_.size();
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("relaxed vector length must be odd and >= 3");
    for (const double v : values_)
        if (!std::isfinite(v)) throw std::invalid_argument("relaxed vector entry not finite");
}

RelaxedVector::RelaxedVector(const BinaryVector& x) : values_(x.n()) {
    for (int i = 0; i < x.n(); ++i) values_[i] = x[i];
}

TwoSpeciesMap::TwoSpeciesMap(double a_, double b_) : a(a_), b(b_) {
    if (!(a != b)) throw std::invalid_argument("two-species values must differ");
    if (!std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("two-species values must be finite");
}

} // namespace bindft
