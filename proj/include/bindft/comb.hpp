#pragma once

#include <cstdint>
#include <functional>

#include "bindft/dft.hpp"
#include "bindft/omega.hpp"

namespace bindft {

struct CombConfig {
    double epsilon = 1e-5;
    int max_depth = 10; // clamped to the popcount; effective default min(10, r)
    Norm norm = Norm::l2;
    int threads = 1;
    /// Invoked from the search loop roughly every 10^7 candidates.
    std::function<void(std::uint64_t tested, int depth)> progress;
};

struct InversionResult {
    BinaryVector solution;
    double achieved_chi = 0.0;
    int stop_condition = 0; // 1: distance threshold met, 2: budget exhausted
    int depth_found = 0;    // swap distance from the roughened guess (combinatorial)
                            // or outer iteration of the best minimum (optimization)
    BigInt candidates_tested = 0;
    double wall_time_s = 0.0;
    /// False when a multi-worker stop-1 race decided which of several
    /// admissible solutions was returned.
    bool deterministic = true;
};

/// Projects a real vector onto the popcount-r binary vectors: the r largest
/// entries become 1. Ties go to the smaller position index.
BinaryVector roughen(const RelaxedVector& g, int r);

/// Depth-ordered exhaustive search around the roughened low-pass guess:
/// all vectors at swap distance d are tested before any at d+1, each exactly
/// once, by swapping d-subsets of the guess's 1s with d-subsets of its 0s.
InversionResult invert_combinatorial(const SpectralData& data, const CombConfig& cfg = {});

/// Exact number of candidates a full depth-max_depth search tests:
/// sum over d of C(r, d) * C(N-r, d).
BigInt complexity_estimate(int n, int r, int max_depth);

struct GuessDistanceStats {
    double mean = 0.0;
    double stddev = 0.0;
};

/// Swap distance between random popcount-r models and their roughened
/// band-limited guesses, sampled over `samples` seeded draws.
GuessDistanceStats guess_distance_stats(int n, int r, int band, int samples, std::uint64_t seed);

} // namespace bindft
