#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bindft/binary_vector.hpp"

namespace bindft {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 32;

/// Exact binomial coefficient N over r.
BigInt omega_size(int n, int r);

/// omega_size as uint64 when it fits under the cap; nullopt otherwise.
std::optional<std::uint64_t> omega_size_u64(int n, int r, std::uint64_t cap = kDefaultEnumerationCap);

/// Streams all vectors with popcount r in lexicographic order of the
/// 1-position sets (equivalently: the vector whose leftmost 1 is earliest
/// comes first). Single consumer; create one stream per worker.
class OmegaStream {
  public:
    OmegaStream(int n, int r, std::uint64_t cap = kDefaultEnumerationCap);

    /// Next vector, or nullopt when exhausted.
    std::optional<BinaryVector> next();

    /// Steps past the upcoming vector without materializing it.
    /// Returns false when the stream was already exhausted.
    bool advance();

    /// 1-based 1-positions of the upcoming vector (empty when exhausted).
    const std::vector<int>& positions() const { return ones_; }

  private:
    void advance_successor();

    int n_;
    int r_;
    bool done_ = false;
    std::vector<int> ones_;
};

/// 1-based 1-positions of the rank-th (0-based) vector in the stream order.
std::vector<int> unrank_combination(int n, int r, std::uint64_t rank);

/// Uniform draw from the popcount-r vectors; a pure function of (seed, index),
/// so parallel callers reproduce identical ensembles. Repeats across indices
/// are possible.
BinaryVector random_omega_sample(int n, int r, std::uint64_t seed, std::uint64_t index);

} // namespace bindft
