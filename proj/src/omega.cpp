#include "bindft/omega.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

#include "bindft/errors.hpp"
#include "bindft/rng.hpp"

namespace bindft {

BigInt omega_size(int n, int r) {
    if (n < 1 || r < 0 || r > n)
        throw std::invalid_argument("popcount " + std::to_string(r) + " outside [0, " +
                                    std::to_string(n) + "]");
    BigInt acc = 1;
    // C(n, r) by incremental exact division
    const int k = std::min(r, n - r);
    for (int i = 1; i <= k; ++i) {
        acc *= n - k + i;
        acc /= i;
    }
    return acc;
}

std::optional<std::uint64_t> omega_size_u64(int n, int r, std::uint64_t cap) {
    const BigInt s = omega_size(n, r);
    if (s > cap) return std::nullopt;
    return static_cast<std::uint64_t>(s);
}

namespace {

// C(n, k) saturated at uint64 max; enough for enumeration bookkeeping.
std::uint64_t binom_u64(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (int i = 1; i <= k; ++i) {
        acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (acc > std::numeric_limits<std::uint64_t>::max()) {
            return std::numeric_limits<std::uint64_t>::max();
        }
    }
    return static_cast<std::uint64_t>(acc);
}

} // namespace

OmegaStream::OmegaStream(int n, int r, std::uint64_t cap) : n_(n), r_(r) {
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("enumeration length must be odd and >= 3");
    if (r < 0 || r > n) throw std::invalid_argument("popcount outside [0, n]");
    const BigInt size = omega_size(n, r);
    if (size > cap)
        throw EnumerationCapError("set size " + size.str() + " exceeds enumeration cap " +
                                  std::to_string(cap));
    ones_.resize(static_cast<std::size_t>(r));
    std::iota(ones_.begin(), ones_.end(), 1);
}

std::optional<BinaryVector> OmegaStream::next() {
    if (done_) return std::nullopt;
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n_), 0);
    for (const int pos : ones_) bits[pos - 1] = 1;
    BinaryVector out(std::move(bits));
    advance_successor();
    return out;
}

bool OmegaStream::advance() {
    if (done_) return false;
    advance_successor();
    return true;
}

// lexicographic successor of the 1-position set
void OmegaStream::advance_successor() {
    if (r_ == 0) {
        done_ = true;
        return;
    }
    int i = r_ - 1;
    while (i >= 0 && ones_[i] == n_ - (r_ - 1 - i)) --i;
    if (i < 0) {
        done_ = true;
    } else {
        ++ones_[i];
        for (int j = i + 1; j < r_; ++j) ones_[j] = ones_[j - 1] + 1;
    }
}

std::vector<int> unrank_combination(int n, int r, std::uint64_t rank) {
    std::vector<int> ones(static_cast<std::size_t>(r));
    int next = 1;
    for (int slot = 0; slot < r; ++slot) {
        for (int cand = next;; ++cand) {
            if (cand > n - (r - slot - 1)) throw std::out_of_range("combination rank too large");
            const std::uint64_t below = binom_u64(n - cand, r - slot - 1);
            if (rank < below) {
                ones[slot] = cand;
                next = cand + 1;
                break;
            }
            rank -= below;
        }
    }
    return ones;
}

BinaryVector random_omega_sample(int n, int r, std::uint64_t seed, std::uint64_t index) {
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("sample length must be odd and >= 3");
    if (r <= 0 || r > n) throw std::invalid_argument("sample popcount outside (0, n]");
    auto eng = make_engine(seed, index);
    // partial Fisher-Yates over the position list: first r entries are the 1s
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < r; ++i) {
        const auto j = i + static_cast<int>(uniform_below(eng, static_cast<std::uint64_t>(n - i)));
        std::swap(perm[i], perm[j]);
        bits[perm[i]] = 1;
    }
    return BinaryVector(std::move(bits));
}

} // namespace bindft
