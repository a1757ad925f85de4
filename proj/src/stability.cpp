#include "bindft/stability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <thread>

#include "bindft/errors.hpp"

namespace bindft {

namespace {

constexpr double kZeroTol = 1e-9; // round-off scale of an exact spectral coincidence

// Full scan of every popcount-r vector against a fixed target spectrum.
// Level-k spectra are fresh copies of their parents, so every candidate's
// score is a fixed left-to-right sum independent of work partitioning.
class NeighborScan {
  public:
    NeighborScan(int n, int r, int band, const std::vector<std::complex<double>>& target,
                 const std::vector<int>& skip_ones)
        : n_(n), r_(r), band_(band), skip_(skip_ones),
          rows_(static_cast<std::size_t>(n + 1) * band),
          levels_(static_cast<std::size_t>(r + 1) * band), sel_(static_cast<std::size_t>(r)) {
        const RootTable& roots = roots_for(n);
        for (int pos = 1; pos <= n; ++pos)
            for (int m = 1; m <= band; ++m)
                rows_[static_cast<std::size_t>(pos) * band + m - 1] =
                    roots.root(static_cast<long long>(m) * pos);
        for (int m = 0; m < band; ++m) levels_[m] = -target[m];
    }

    // Minimum squared-sum score over all candidates whose smallest 1-position
    // equals first_pos (the candidate equal to skip_ones excluded).
    double run_first(int first_pos) {
        best_ = std::numeric_limits<double>::infinity();
        if (r_ == 1) {
            if (first_pos != skip_[0]) {
                const std::complex<double>* src = level(0);
                const std::complex<double>* rw = row(first_pos);
                double s = 0.0;
                for (int m = 0; m < band_; ++m) {
                    const double re = src[m].real() + rw[m].real();
                    const double im = src[m].imag() + rw[m].imag();
                    s += re * re + im * im;
                }
                best_ = s;
            }
            return best_;
        }
        sel_[0] = first_pos;
        apply(0, first_pos);
        recurse(1, first_pos == skip_[0]);
        return best_;
    }

  private:
    const std::complex<double>* level(int k) const { return levels_.data() + k * band_; }
    std::complex<double>* level(int k) { return levels_.data() + k * band_; }
    const std::complex<double>* row(int pos) const {
        return rows_.data() + static_cast<std::size_t>(pos) * band_;
    }

    void apply(int k, int pos) {
        const std::complex<double>* src = level(k);
        std::complex<double>* dst = level(k + 1);
        const std::complex<double>* rw = row(pos);
        for (int m = 0; m < band_; ++m) dst[m] = src[m] + rw[m];
    }

    void recurse(int k, bool prefix_match) {
        if (k == r_ - 1) {
            const std::complex<double>* src = level(k);
            const int skip_last = prefix_match ? skip_[r_ - 1] : 0;
            for (int pos = sel_[k - 1] + 1; pos <= n_; ++pos) {
                if (pos == skip_last) continue;
                const std::complex<double>* rw = row(pos);
                double s = 0.0;
                for (int m = 0; m < band_; ++m) {
                    const double re = src[m].real() + rw[m].real();
                    const double im = src[m].imag() + rw[m].imag();
                    s += re * re + im * im;
                }
                if (s < best_) best_ = s;
            }
            return;
        }
        for (int pos = sel_[k - 1] + 1; pos <= n_ - (r_ - 1 - k); ++pos) {
            sel_[k] = pos;
            apply(k, pos);
            recurse(k + 1, prefix_match && pos == skip_[k]);
        }
    }

    int n_, r_, band_;
    const std::vector<int>& skip_;
    std::vector<std::complex<double>> rows_;
    std::vector<std::complex<double>> levels_;
    std::vector<int> sel_;
    double best_ = std::numeric_limits<double>::infinity();
};

double min_score_scan(int n, int r, int band, const std::vector<std::complex<double>>& target,
                      const std::vector<int>& skip_ones, int threads) {
    const int first_max = n - r + 1;
    const int active = std::max(1, std::min(threads, first_max));
    std::atomic<int> next{1};
    std::vector<double> mins(static_cast<std::size_t>(active),
                             std::numeric_limits<double>::infinity());
    const auto body = [&](int t) {
        NeighborScan scan(n, r, band, target, skip_ones);
        double local = std::numeric_limits<double>::infinity();
        for (;;) {
            const int first = next.fetch_add(1, std::memory_order_relaxed);
            if (first > first_max) break;
            local = std::min(local, scan.run_first(first));
        }
        mins[t] = local;
    };
    if (active == 1) {
        body(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < active; ++t) pool.emplace_back(body, t);
        for (auto& th : pool) th.join();
    }
    return *std::min_element(mins.begin(), mins.end());
}

double kappa_of_spectrum(int n, int r, int band,
                         const std::vector<std::complex<double>>& target,
                         const std::vector<int>& ones, int threads) {
    const double s = min_score_scan(n, r, band, target, ones, threads);
    const double value = std::sqrt(s / band);
    return value < kZeroTol ? 0.0 : value;
}

void require_scannable(int n, int r, std::uint64_t cap) {
    const BigInt size = omega_size(n, r);
    if (size < 2)
        throw std::invalid_argument("no distinct neighbors exist for popcount " +
                                    std::to_string(r));
    if (size > cap)
        throw EnumerationCapError("set size " + size.str() +
                                  " exceeds the scan cap " + std::to_string(cap));
}

} // namespace

double kappa(const BinaryVector& x, int band, int threads, std::uint64_t cap) {
    require_scannable(x.n(), x.popcount(), cap);
    const SpectralData spec = dft_forward(x, band);
    return kappa_of_spectrum(x.n(), x.popcount(), band, spec.coeffs, x.one_positions(), threads);
}

namespace {

struct KappaEnsemble {
    std::vector<double> values;
    bool exact = false;
    long samples_used = 0;
};

KappaEnsemble collect_kappas(int n, int r, int band, const StabilityOptions& opts) {
    require_scannable(n, r, kDefaultEnumerationCap);
    if (opts.samples < 1) throw std::invalid_argument("need at least one sample");
    const BigInt size_big = omega_size(n, r);
    const int threads = std::max(1, opts.threads);
    KappaEnsemble out;

    const bool auto_exact = size_big <= (std::uint64_t{1} << 20) &&
                            size_big * size_big <= BigInt(opts.eval_budget);
    if (opts.exact || auto_exact) {
        if (size_big > (std::uint64_t{1} << 20))
            throw EnumerationCapError("exact stability scan of " + size_big.str() +
                                      " vectors is beyond the 2^20 structural cap");
        const auto size = static_cast<std::size_t>(size_big);
        // precompute all spectra once, then one full row scan per vector
        std::vector<std::vector<std::complex<double>>> spectra(size);
        std::vector<std::vector<int>> ones(size);
        OmegaStream stream(n, r);
        for (std::size_t i = 0; i < size; ++i) {
            ones[i] = stream.positions();
            const auto x = stream.next();
            spectra[i] = dft_forward(*x, band).coeffs;
        }
        out.values.assign(size, 0.0);
        std::atomic<std::size_t> cursor{0};
        const auto body = [&] {
            for (;;) {
                const std::size_t i = cursor.fetch_add(1);
                if (i >= size) break;
                double best = std::numeric_limits<double>::infinity();
                for (std::size_t j = 0; j < size; ++j) {
                    if (j == i) continue;
                    double s = 0.0;
                    for (int m = 0; m < band; ++m) {
                        const auto d = spectra[i][m] - spectra[j][m];
                        s += d.real() * d.real() + d.imag() * d.imag();
                    }
                    best = std::min(best, s);
                }
                const double value = std::sqrt(best / band);
                out.values[i] = value < kZeroTol ? 0.0 : value;
            }
        };
        if (threads == 1) {
            body();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < threads; ++t) pool.emplace_back(body);
            for (auto& th : pool) th.join();
        }
        out.exact = true;
        out.samples_used = static_cast<long>(size);
        return out;
    }

    // sampled mode; shrink J to keep J * |Omega| inside the budget
    const std::uint64_t size = static_cast<std::uint64_t>(size_big);
    long samples = opts.samples;
    const std::uint64_t affordable =
        std::max<std::uint64_t>(1, opts.eval_budget / std::max<std::uint64_t>(1, size));
    if (static_cast<std::uint64_t>(samples) > affordable) {
        std::fprintf(stderr,
                     "stability: reducing samples from %ld to %llu to fit the evaluation "
                     "budget\n",
                     samples, static_cast<unsigned long long>(affordable));
        samples = static_cast<long>(affordable);
    }
    out.values.assign(static_cast<std::size_t>(samples), 0.0);
    std::atomic<long> cursor{0};
    const auto body = [&] {
        for (;;) {
            const long j = cursor.fetch_add(1);
            if (j >= samples) break;
            const BinaryVector x =
                random_omega_sample(n, r, opts.seed, static_cast<std::uint64_t>(j));
            const SpectralData spec = dft_forward(x, band);
            // scans are serial per sample; parallelism is across samples
            out.values[static_cast<std::size_t>(j)] =
                kappa_of_spectrum(n, r, band, spec.coeffs, x.one_positions(), 1);
        }
    };
    if (threads == 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(body);
        for (auto& th : pool) th.join();
    }
    out.samples_used = samples;
    return out;
}

} // namespace

StabilityReport stability_report(int n, int r, int band, const std::vector<double>& epsilons,
                                 const StabilityOptions& opts) {
    if (band < 1 || band > (n - 1) / 2) throw BandLimitError("band outside [1, (n-1)/2]");
    const KappaEnsemble ensemble = collect_kappas(n, r, band, opts);
    StabilityReport report;
    report.n_len = n;
    report.popcount = r;
    report.band = band;
    report.samples_used = ensemble.samples_used;
    report.exact = ensemble.exact;
    report.seed = opts.seed;

    double sum = 0.0, sum_sq = 0.0;
    for (const double k : ensemble.values) {
        sum += k;
        sum_sq += k * k;
    }
    const double inv = 1.0 / static_cast<double>(ensemble.values.size());
    report.kappa_mean = sum * inv;
    double var = sum_sq * inv - report.kappa_mean * report.kappa_mean;
    if (var < 0.0) var = 0.0; // clamp tiny negative round-off
    report.kappa_std = std::sqrt(var);

    report.cumulative.reserve(epsilons.size());
    for (const double eps : epsilons) {
        long hits = 0;
        for (const double k : ensemble.values)
            if (k <= eps) ++hits;
        report.cumulative.emplace_back(eps, static_cast<double>(hits) * inv);
    }
    return report;
}

std::pair<double, double> kappa_statistics(int n, int r, int band, int samples,
                                           std::uint64_t seed, int threads) {
    if (samples < 2) throw std::invalid_argument("statistics require at least two samples");
    StabilityOptions opts;
    opts.samples = samples;
    opts.seed = seed;
    opts.threads = threads;
    const StabilityReport report = stability_report(n, r, band, {}, opts);
    return {report.kappa_mean, report.kappa_std};
}

std::vector<double> cumulative_probability(int n, int r, int band,
                                           const std::vector<double>& epsilons, int samples,
                                           std::uint64_t seed, int threads) {
    StabilityOptions opts;
    opts.samples = samples;
    opts.seed = seed;
    opts.threads = threads;
    const StabilityReport report = stability_report(n, r, band, epsilons, opts);
    std::vector<double> out;
    out.reserve(report.cumulative.size());
    for (const auto& [eps, p] : report.cumulative) out.push_back(p);
    return out;
}

ReliabilityVerdict reliability_check(const BinaryVector& solution, const SpectralData& data,
                                     const StabilityReport& stats) {
    if (solution.n() != data.n_len || data.n_len != stats.n_len ||
        solution.popcount() != stats.popcount || data.popcount != stats.popcount ||
        data.band < stats.band)
        throw std::invalid_argument("solution, data and stability report must share (n, r, L)");
    ReliabilityVerdict verdict;
    verdict.chi = chi_distance(solution, data, stats.band, Norm::l2);
    verdict.threshold = stats.kappa_mean - 2.0 * stats.kappa_std;
    verdict.verdict =
        verdict.chi < verdict.threshold ? Reliability::confident : Reliability::inconclusive;
    return verdict;
}

} // namespace bindft
