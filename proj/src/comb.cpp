#include "bindft/comb.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "bindft/errors.hpp"

namespace bindft {

BinaryVector roughen(const RelaxedVector& g, int r) {
    const int n = g.n();
    if (r <= 0 || r > n) throw std::invalid_argument("roughening popcount outside (0, n]");
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[i] = i;
    // descending by value, ties to the smaller index
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (g[a] != g[b]) return g[a] > g[b];
        return a < b;
    });
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < r; ++i) bits[order[i]] = 1;
    return BinaryVector(std::move(bits));
}

BigInt complexity_estimate(int n, int r, int max_depth) {
    if (max_depth < 0 || max_depth > r)
        throw std::invalid_argument("search depth outside [0, popcount]");
    BigInt total = 0;
    for (int d = 1; d <= max_depth; ++d) {
        total += omega_size(r, d) * omega_size(n - r, d);
    }
    return total;
}

namespace {

// sum |D_m|^p over the band (p = 1 or 2) or max |D_m|; the stop threshold is
// pre-transformed so candidates compare raw scores without any root-taking.
struct ScoreRule {
    Norm norm;
    int band;
    double threshold; // raw-score form of the chi <= epsilon test

    double score(const std::complex<double>* d) const {
        double acc = 0.0;
        switch (norm) {
            case Norm::l1:
                for (int m = 0; m < band; ++m) acc += std::abs(d[m]);
                break;
            case Norm::l2:
                for (int m = 0; m < band; ++m)
                    acc += d[m].real() * d[m].real() + d[m].imag() * d[m].imag();
                break;
            case Norm::linf:
                for (int m = 0; m < band; ++m) acc = std::max(acc, std::abs(d[m]));
                break;
        }
        return acc;
    }

    double chi_from_score(double s) const {
        switch (norm) {
            case Norm::l1: return s / band;
            case Norm::l2: return std::sqrt(s / band);
            case Norm::linf: return s;
        }
        return 0.0;
    }

    static double threshold_from_chi(double epsilon, Norm norm, int band) {
        switch (norm) {
            case Norm::l1: return epsilon * band;
            case Norm::l2: return epsilon * epsilon * band;
            case Norm::linf: return epsilon;
        }
        return 0.0;
    }
};

struct BestCandidate {
    double score = std::numeric_limits<double>::infinity();
    int depth = 0;
    std::vector<std::uint8_t> bits;

    // strict improvement, ties to the lexicographically smaller vector so the
    // stop-2 result does not depend on the worker count
    bool improves(double s, const std::vector<std::uint8_t>& cand) const {
        if (s < score) return true;
        if (s > score) return false;
        return bits.empty() ? true : cand < bits;
    }
};

// Per-worker state for one fixed swap depth. The per-level spectra are stored
// as stacked rows so that a candidate's score never depends on how the
// recursion reached it: each level's row is written fresh from its parent.
class DepthSearch {
  public:
    DepthSearch(const ScoreRule& rule, const std::vector<std::complex<double>>& base_diff,
                const std::vector<int>& one_pos, const std::vector<int>& zero_pos,
                const std::vector<std::complex<double>>& one_rows,
                const std::vector<std::complex<double>>& zero_rows, int depth,
                const std::vector<std::uint8_t>& guess_bits)
        : rule_(rule), ones_(one_pos), zeros_(zero_pos), one_rows_(one_rows),
          zero_rows_(zero_rows), depth_(depth), guess_bits_(guess_bits),
          levels_(static_cast<std::size_t>(2 * depth + 1) * rule.band),
          sel_ones_(static_cast<std::size_t>(depth)), sel_zeros_(static_cast<std::size_t>(depth)) {
        std::copy(base_diff.begin(), base_diff.end(), levels_.begin());
    }

    std::uint64_t tested() const { return tested_; }
    const BestCandidate& best() const { return best_; }
    double hit_score() const { return hit_score_; }

    // Runs the subtree rooted at the given first removed 1 (index into the
    // ones list). Returns true when the stop flag fired.
    bool run_first_one(int first, std::atomic<bool>& stop,
                       std::vector<std::uint8_t>* hit_out) {
        stop_ = &stop;
        hit_out_ = hit_out;
        sel_ones_[0] = first;
        apply_one(0, first);
        return recurse_ones(1);
    }

  private:
    const std::complex<double>* level(int k) const { return levels_.data() + k * rule_.band; }
    std::complex<double>* level(int k) { return levels_.data() + k * rule_.band; }

    void apply_one(int k, int idx) {
        const std::complex<double>* src = level(k);
        std::complex<double>* dst = level(k + 1);
        const std::complex<double>* row = one_rows_.data() + static_cast<std::size_t>(idx) * rule_.band;
        for (int m = 0; m < rule_.band; ++m) dst[m] = src[m] - row[m];
    }

    void apply_zero(int k, int idx) {
        const std::complex<double>* src = level(depth_ + k);
        std::complex<double>* dst = level(depth_ + k + 1);
        const std::complex<double>* row =
            zero_rows_.data() + static_cast<std::size_t>(idx) * rule_.band;
        for (int m = 0; m < rule_.band; ++m) dst[m] = src[m] + row[m];
    }

    bool recurse_ones(int k) {
        if (k == depth_) return recurse_zeros(0);
        const int avail = static_cast<int>(ones_.size());
        for (int i = sel_ones_[k - 1] + 1; i <= avail - (depth_ - k); ++i) {
            sel_ones_[k] = i;
            apply_one(k, i);
            if (recurse_ones(k + 1)) return true;
        }
        return false;
    }

    bool recurse_zeros(int k) {
        if (stop_->load(std::memory_order_relaxed)) return true;
        const int avail = static_cast<int>(zeros_.size());
        const int lo = k == 0 ? 0 : sel_zeros_[k - 1] + 1;
        if (k == depth_ - 1) {
            const std::complex<double>* src = level(depth_ + k);
            for (int i = lo; i < avail; ++i) {
                sel_zeros_[k] = i;
                std::complex<double>* dst = level(depth_ + k + 1);
                const std::complex<double>* row =
                    zero_rows_.data() + static_cast<std::size_t>(i) * rule_.band;
                for (int m = 0; m < rule_.band; ++m) dst[m] = src[m] + row[m];
                ++tested_;
                const double s = rule_.score(dst);
                if (s <= rule_.threshold) {
                    publish_hit(s);
                    return true;
                }
                if (s <= best_.score) track_best(s);
            }
            return false;
        }
        for (int i = lo; i <= avail - (depth_ - k); ++i) {
            sel_zeros_[k] = i;
            apply_zero(k, i);
            if (recurse_zeros(k + 1)) return true;
        }
        return false;
    }

    std::vector<std::uint8_t> materialize() const {
        std::vector<std::uint8_t> bits(guess_bits_);
        for (int k = 0; k < depth_; ++k) {
            bits[ones_[sel_ones_[k]] - 1] = 0;
            bits[zeros_[sel_zeros_[k]] - 1] = 1;
        }
        return bits;
    }

    void publish_hit(double s) {
        *hit_out_ = materialize();
        hit_score_ = s;
        stop_->store(true, std::memory_order_relaxed);
    }

    void track_best(double s) {
        auto cand = materialize();
        if (best_.improves(s, cand)) {
            best_.score = s;
            best_.depth = depth_;
            best_.bits = std::move(cand);
        }
    }

    const ScoreRule& rule_;
    const std::vector<int>& ones_;
    const std::vector<int>& zeros_;
    const std::vector<std::complex<double>>& one_rows_;
    const std::vector<std::complex<double>>& zero_rows_;
    int depth_;
    const std::vector<std::uint8_t>& guess_bits_;
    std::vector<std::complex<double>> levels_;
    std::vector<int> sel_ones_;
    std::vector<int> sel_zeros_;
    std::uint64_t tested_ = 0;
    BestCandidate best_;
    double hit_score_ = 0.0;
    std::atomic<bool>* stop_ = nullptr;
    std::vector<std::uint8_t>* hit_out_ = nullptr;
};

} // namespace

InversionResult invert_combinatorial(const SpectralData& data, const CombConfig& cfg) {
    const auto t_start = std::chrono::steady_clock::now();
    const int n = data.n_len;
    const int r = data.popcount;
    const int band = data.band;
    if (band < 1) throw BandLimitError("inversion requires band >= 1");
    if (r <= 0 || r > n) throw std::invalid_argument("data popcount outside (0, n]");
    if (cfg.epsilon < 0) throw std::invalid_argument("epsilon must be nonnegative");
    if (cfg.max_depth < 1) throw std::invalid_argument("max depth must be >= 1");
    const int threads = std::max(1, cfg.threads);
    const int depth_max = std::min(cfg.max_depth, std::min(r, n - r));

    const RootTable& roots = roots_for(n);
    const RelaxedVector guess = idft_band_limited(data);
    const BinaryVector b = roughen(guess, r);

    const ScoreRule rule{cfg.norm, band,
                         ScoreRule::threshold_from_chi(cfg.epsilon, cfg.norm, band)};

    // spectrum difference of the roughened guess against the data
    const SpectralData b_spec = dft_forward(b, band);
    std::vector<std::complex<double>> base_diff(static_cast<std::size_t>(band));
    for (int m = 1; m <= band; ++m) base_diff[m - 1] = b_spec.coeffs[m - 1] - data.coeffs[m - 1];

    InversionResult result{b, 0.0, 2, 0, 0, 0.0, true};
    const double guess_score = rule.score(base_diff.data());
    const auto finish = [&](InversionResult res) {
        res.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        return res;
    };

    if (guess_score <= rule.threshold) {
        result.stop_condition = 1;
        result.achieved_chi = rule.chi_from_score(guess_score);
        return finish(result);
    }

    const std::vector<int> one_pos = b.one_positions();
    const std::vector<int> zero_pos = b.zero_positions();

    // per-position coefficient rows root(m * pos), m = 1..band
    const auto make_rows = [&](const std::vector<int>& positions) {
        std::vector<std::complex<double>> rows(positions.size() * static_cast<std::size_t>(band));
        for (std::size_t i = 0; i < positions.size(); ++i)
            for (int m = 1; m <= band; ++m)
                rows[i * band + m - 1] = roots.root(static_cast<long long>(m) * positions[i]);
        return rows;
    };
    const std::vector<std::complex<double>> one_rows = make_rows(one_pos);
    const std::vector<std::complex<double>> zero_rows = make_rows(zero_pos);

    BestCandidate best;
    best.score = guess_score;
    best.depth = 0;
    best.bits = b.bits();

    std::uint64_t tested_total = 0;
    std::atomic<std::uint64_t> tested_shared{0};
    std::atomic<std::uint64_t> progress_mark{0};
    std::atomic<bool> stop{false};
    std::vector<std::uint8_t> hit_bits;
    double hit_score = 0.0;
    std::mutex merge_mu;
    int hit_depth = 0;
    bool racy_hit = false;

    for (int depth = 1; depth <= depth_max && !stop.load(); ++depth) {
        const int first_max = r - depth; // first removed 1 ranges over [0, first_max]
        std::atomic<int> next_first{0};
        std::vector<std::unique_ptr<DepthSearch>> workers;
        std::vector<std::thread> pool;
        const int active = std::min(threads, first_max + 1);
        std::atomic<int> hits_this_depth{0};

        const auto worker_body = [&](DepthSearch& search) {
            std::vector<std::uint8_t> local_hit;
            std::uint64_t flushed = 0;
            for (;;) {
                const int first = next_first.fetch_add(1, std::memory_order_relaxed);
                if (first > first_max || stop.load(std::memory_order_relaxed)) break;
                const bool stopped = search.run_first_one(first, stop, &local_hit);
                const std::uint64_t now =
                    tested_shared.fetch_add(search.tested() - flushed) + search.tested() - flushed;
                flushed = search.tested();
                if (cfg.progress) {
                    std::uint64_t mark = progress_mark.load(std::memory_order_relaxed);
                    if (now - mark >= 10'000'000 &&
                        progress_mark.compare_exchange_strong(mark, now)) {
                        std::lock_guard lock(merge_mu);
                        cfg.progress(now, depth);
                    }
                }
                if (stopped) break;
            }
            tested_shared.fetch_add(search.tested() - flushed);
            std::lock_guard lock(merge_mu);
            if (!local_hit.empty()) {
                hits_this_depth.fetch_add(1);
                if (hit_bits.empty()) {
                    hit_bits = std::move(local_hit);
                    hit_score = search.hit_score();
                    hit_depth = depth;
                }
            }
        };

        for (int t = 0; t < active; ++t)
            workers.push_back(std::make_unique<DepthSearch>(rule, base_diff, one_pos, zero_pos,
                                                            one_rows, zero_rows, depth, b.bits()));
        if (active == 1) {
            worker_body(*workers[0]);
        } else {
            for (int t = 0; t < active; ++t)
                pool.emplace_back(worker_body, std::ref(*workers[t]));
            for (auto& th : pool) th.join();
        }

        for (const auto& w : workers) {
            tested_total += w->tested();
            const auto& wb = w->best();
            if (!wb.bits.empty() && best.improves(wb.score, wb.bits)) {
                best.score = wb.score;
                best.depth = wb.depth;
                best.bits = wb.bits;
            }
        }
        if (active > 1 && hits_this_depth.load() > 0) racy_hit = true;
    }

    result.candidates_tested = tested_total;
    if (!hit_bits.empty()) {
        result.solution = BinaryVector(std::move(hit_bits));
        result.achieved_chi = rule.chi_from_score(hit_score);
        result.stop_condition = 1;
        result.depth_found = hit_depth;
        result.deterministic = !racy_hit;
        return finish(result);
    }
    result.solution = BinaryVector(best.bits);
    result.achieved_chi = rule.chi_from_score(best.score);
    result.stop_condition = 2;
    result.depth_found = best.depth;
    return finish(result);
}

GuessDistanceStats guess_distance_stats(int n, int r, int band, int samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("need at least one sample");
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int j = 0; j < samples; ++j) {
        const BinaryVector x = random_omega_sample(n, r, seed, static_cast<std::uint64_t>(j));
        const SpectralData phi = dft_forward(x, band);
        const BinaryVector rough = roughen(idft_band_limited(phi), r);
        const double d = real_distance(rough, x);
        sum += d;
        sum_sq += d * d;
    }
    const double mean = sum / samples;
    const double var = std::max(0.0, sum_sq / samples - mean * mean);
    return {mean, std::sqrt(var)};
}

} // namespace bindft
