#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bindft/dft.hpp"
#include "bindft/omega.hpp"

namespace bindft {

/// Fourier-space distance (chi_2 at the given band) from x to its nearest
/// distinct neighbor of equal length and popcount. A full scan; refuses when
/// the set size exceeds the cap. Values below 1e-9 (round-off scale of an
/// exact coincidence) are clamped to zero.
double kappa(const BinaryVector& x, int band, int threads = 1,
             std::uint64_t cap = kDefaultEnumerationCap);

struct StabilityOptions {
    int samples = 10'000;      // requested J; may be reduced to fit the budget
    std::uint64_t seed = 0;
    int threads = 1;
    /// Rough bound on candidate evaluations (J * |Omega|, or |Omega|^2 / 2 in
    /// exhaustive mode). Requests beyond it shrink J with a warning.
    std::uint64_t eval_budget = std::uint64_t{4} << 30;
    /// Exhaustive mode: compute kappa for every vector instead of sampling.
    /// Switched on automatically when |Omega| <= 2^20 and the budget allows.
    bool exact = false;
};

struct StabilityReport {
    int n_len = 0;
    int popcount = 0;
    int band = 0;
    long samples_used = 0;
    bool exact = false;
    std::uint64_t seed = 0;
    double kappa_mean = 0.0;
    double kappa_std = 0.0;
    std::vector<std::pair<double, double>> cumulative; // (epsilon, P(epsilon))
};

/// Nearest-neighbor distances for a seeded ensemble (or the whole set in
/// exhaustive mode) with mean, standard deviation, and the cumulative
/// fraction below each requested epsilon.
StabilityReport stability_report(int n, int r, int band, const std::vector<double>& epsilons,
                                 const StabilityOptions& opts = {});

/// Mean and standard deviation of kappa over the seeded ensemble.
std::pair<double, double> kappa_statistics(int n, int r, int band, int samples,
                                           std::uint64_t seed, int threads = 1);

/// P(epsilon) = fraction of ensemble members whose nearest distinct neighbor
/// lies within epsilon (inclusive).
std::vector<double> cumulative_probability(int n, int r, int band,
                                           const std::vector<double>& epsilons, int samples,
                                           std::uint64_t seed, int threads = 1);

enum class Reliability { confident, inconclusive };

struct ReliabilityVerdict {
    Reliability verdict = Reliability::inconclusive;
    double chi = 0.0;       // distance of the solution to the data
    double threshold = 0.0; // mean - 2 std of the ensemble kappa
};

/// Heuristic confidence check: the solution's residual distance must fall
/// below mean(kappa) - 2 std(kappa) for the matching (N, r, band) ensemble.
ReliabilityVerdict reliability_check(const BinaryVector& solution, const SpectralData& data,
                                     const StabilityReport& stats);

} // namespace bindft
