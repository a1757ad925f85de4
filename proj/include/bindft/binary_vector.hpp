#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bindft {

/// Vector of odd length N >= 3 with entries in {0,1}. Immutable after
/// construction; the popcount is cached and kept consistent by construction.
class BinaryVector {
  public:
    /// Shortest valid vector (three zeros); placeholder for containers.
    BinaryVector() : bits_(3, 0) {}
    explicit BinaryVector(std::vector<std::uint8_t> bits);
    static BinaryVector from_string(std::string_view digits);

    int n() const { return static_cast<int>(bits_.size()); }
    int popcount() const { return popcount_; }
    /// M = (N-1)/2, the largest informative DFT index.
    int half_band() const { return (n() - 1) / 2; }

    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    const std::vector<std::uint8_t>& bits() const { return bits_; }

    /// 1-based positions carrying a 1 (resp. 0), ascending.
    std::vector<int> one_positions() const;
    std::vector<int> zero_positions() const;

    /// 0 <-> 1 swap; maps popcount r to N - r.
    BinaryVector complement() const;

    std::string to_string() const;

    bool operator==(const BinaryVector&) const = default;

  private:
    std::vector<std::uint8_t> bits_;
    int popcount_ = 0;
};

/// Unconstrained real vector of odd length N; all entries finite.
class RelaxedVector {
  public:
    explicit RelaxedVector(std::vector<double> values);
    explicit RelaxedVector(const BinaryVector& x);

    int n() const { return static_cast<int>(values_.size()); }
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

  private:
    std::vector<double> values_;
};

/// Affine two-species encoding v_n = a + (b - a) x_n with a != b.
struct TwoSpeciesMap {
    double a;
    double b;
    TwoSpeciesMap(double a_, double b_);
};

} // namespace bindft
