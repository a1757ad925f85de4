#include "bindft/opt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "bindft/errors.hpp"
#include "bindft/rng.hpp"

namespace bindft {

namespace {

constexpr double kCostFloor = 1e-26;  // cost below this is binary to ~1e-13 per entry
constexpr long kMaxInnerSteps = 500'000;
constexpr int kMaxHalvings = 40;
constexpr int kMaxProbeRounds = 5;
constexpr double kProbeStep = 1e-5;
constexpr int kProbeHalvings = 10;

// u_n = v_n (v_n - 1)(2 v_n - 1), the entrywise slope of the binarity cost
void binarity_slope(const std::vector<double>& v, std::vector<double>& u) {
    u.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double x = v[i];
        u[i] = x * (x - 1.0) * (2.0 * x - 1.0);
    }
}

// gc[j], gs[j] = sum_n u_n cos/sin(xi m n) for m = band+1+j; exponent walked
// as (m*n mod N) without divisions
void half_gradient(const std::vector<double>& u, const RootTable& roots, int band,
                   std::vector<double>& gc, std::vector<double>& gs) {
    const int n = roots.n();
    const int m_max = (n - 1) / 2;
    gc.assign(static_cast<std::size_t>(m_max - band), 0.0);
    gs.assign(static_cast<std::size_t>(m_max - band), 0.0);
    for (int m = band + 1; m <= m_max; ++m) {
        double c = 0.0, s = 0.0;
        int k = 0;
        for (int pos = 1; pos <= n; ++pos) {
            k += m;
            if (k >= n) k -= n;
            c += u[pos - 1] * roots.cos_at(k);
            s += u[pos - 1] * roots.sin_at(k);
        }
        gc[m - band - 1] = c;
        gs[m - band - 1] = s;
    }
}

// p_n = sum_m [ fc_m cos(xi m n) + fs_m sin(xi m n) ], m = band+1..M
void synthesize(const std::vector<double>& fc, const std::vector<double>& fs,
                const RootTable& roots, int band, std::vector<double>& p) {
    const int n = roots.n();
    const int m_max = (n - 1) / 2;
    p.assign(static_cast<std::size_t>(n), 0.0);
    for (int m = band + 1; m <= m_max; ++m) {
        const double cm = fc[m - band - 1];
        const double sm = fs[m - band - 1];
        if (cm == 0.0 && sm == 0.0) continue;
        int k = 0;
        for (int pos = 1; pos <= n; ++pos) {
            k += m;
            if (k >= n) k -= n;
            p[pos - 1] += cm * roots.cos_at(k) + sm * roots.sin_at(k);
        }
    }
}

double cost_of(const std::vector<double>& v) {
    double acc = 0.0;
    for (const double x : v) {
        const double t = x * (x - 1.0);
        acc += t * t;
    }
    return acc;
}

void require_free_band(int band, int m_max) {
    if (band >= m_max)
        throw BandLimitError("band " + std::to_string(band) +
                             " leaves no free harmonics (M = " + std::to_string(m_max) + ")");
    if (band < 0) throw BandLimitError("band must be nonnegative");
}

} // namespace

double binarity_cost(const RelaxedVector& v) { return cost_of(v.values()); }

GradientCoefficients gradient_coefficients(const RelaxedVector& v, int band) {
    const int m_max = (v.n() - 1) / 2;
    require_free_band(band, m_max);
    const RootTable& roots = roots_for(v.n());
    std::vector<double> u;
    binarity_slope(v.values(), u);
    GradientCoefficients out;
    out.band = band;
    half_gradient(u, roots, band, out.cos_terms, out.sin_terms);
    for (auto& c : out.cos_terms) c *= 2.0;
    for (auto& s : out.sin_terms) s *= 2.0;
    return out;
}

RelaxedVector descent_direction(const RelaxedVector& v, int band) {
    const GradientCoefficients g = gradient_coefficients(v, band);
    const RootTable& roots = roots_for(v.n());
    std::vector<double> p;
    synthesize(g.cos_terms, g.sin_terms, roots, band, p);
    return RelaxedVector(std::move(p));
}

CubicSlope directional_slope(const RelaxedVector& v, const RelaxedVector& dir) {
    if (v.n() != dir.n()) throw std::invalid_argument("slice requires equal lengths");
    CubicSlope c;
    for (int i = 0; i < v.n(); ++i) {
        const double x = v[i];
        const double p = dir[i];
        const double p2 = p * p;
        c.a0 += x * (x - 1.0) * (2.0 * x - 1.0) * p;
        c.a1 += (2.0 * x * (x - 1.0) + (2.0 * x - 1.0) * (2.0 * x - 1.0)) * p2;
        c.a2 += 3.0 * (2.0 * x - 1.0) * p2 * p;
        c.a3 += 2.0 * p2 * p2;
    }
    return c;
}

double choose_step(const CubicSlope& c) {
    if (c.a3 <= 0.0)
        throw std::invalid_argument("degenerate direction: quartic slice has no curvature");

    // depressed form t^3 + pt + q, alpha = t - b2/3
    const double b2 = c.a2 / c.a3;
    const double b1 = c.a1 / c.a3;
    const double b0 = c.a0 / c.a3;
    const double shift = b2 / 3.0;
    const double p = b1 - b2 * b2 / 3.0;
    const double q = b0 - b1 * b2 / 3.0 + 2.0 * b2 * b2 * b2 / 27.0;

    const double half_q = 0.5 * q;
    const double third_p = p / 3.0;
    const double disc = half_q * half_q + third_p * third_p * third_p;
    const double scale = std::max(half_q * half_q, std::abs(third_p * third_p * third_p));

    const auto polish = [&](double alpha) {
        for (int it = 0; it < 3; ++it) {
            const double f = c(alpha);
            const double df = c.a1 + alpha * (2.0 * c.a2 + alpha * 3.0 * c.a3);
            if (df == 0.0) break;
            const double next = alpha - f / df;
            if (!std::isfinite(next)) break;
            alpha = next;
        }
        return alpha;
    };

    double alpha = 0.0;
    if (disc > 1e-12 * scale) {
        // one real root
        const double s = std::sqrt(disc);
        const double t = std::cbrt(-half_q + s) + std::cbrt(-half_q - s);
        alpha = polish(t - shift);
    } else {
        // three real roots (or a boundary case treated as such)
        double roots3[3];
        if (third_p >= 0.0) {
            // p ~ 0: triple root
            roots3[0] = roots3[1] = roots3[2] = std::cbrt(-q);
        } else {
            const double radius = 2.0 * std::sqrt(-third_p);
            const double arg = std::clamp(3.0 * q / (p * radius), -1.0, 1.0);
            const double theta = std::acos(arg) / 3.0;
            const double two_thirds_pi = 2.0943951023931954923;
            for (int k = 0; k < 3; ++k) roots3[k] = radius * std::cos(theta - two_thirds_pi * k);
        }
        std::sort(roots3, roots3 + 3);
        const double a1 = polish(roots3[0] - shift);
        const double a2 = roots3[1] - shift;
        const double a3 = polish(roots3[2] - shift);
        alpha = a2 > 0.0 ? a1 : a3;
    }
    return alpha;
}

double line_search(const RelaxedVector& v, const RelaxedVector& dir) {
    const CubicSlope slope = directional_slope(v, dir);
    double alpha = choose_step(slope);
    const double f0 = binarity_cost(v);
    std::vector<double> trial(v.values().size());
    for (int k = 0; k <= kMaxHalvings; ++k) {
        for (std::size_t i = 0; i < trial.size(); ++i) trial[i] = v[i] + alpha * dir[i];
        if (cost_of(trial) < f0) return alpha;
        alpha *= 0.5;
    }
    return 0.0; // no resolvable decrease along this direction
}

bool is_local_minimum(const RelaxedVector& v, int band, double tol) {
    const int m_max = (v.n() - 1) / 2;
    require_free_band(band, m_max);
    const RootTable& roots = roots_for(v.n());
    std::vector<double> u, gc, gs;
    binarity_slope(v.values(), u);
    half_gradient(u, roots, band, gc, gs);
    for (std::size_t j = 0; j < gc.size(); ++j)
        if (std::abs(gc[j]) >= tol || std::abs(gs[j]) >= tol) return false;
    return true;
}

RelaxedVector random_jump(const RelaxedVector& origin, double length, int band,
                          std::mt19937_64& rng) {
    const int m_max = (origin.n() - 1) / 2;
    require_free_band(band, m_max);
    const std::size_t dim = static_cast<std::size_t>(m_max - band);
    std::vector<double> fc(dim), fs(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        fc[j] = standard_normal(rng);
        fs[j] = standard_normal(rng);
    }
    const RootTable& roots = roots_for(origin.n());
    std::vector<double> q;
    synthesize(fc, fs, roots, band, q);
    // q itself is normalized to unit length; its direction is uniform in the
    // free amplitude space. A unit jump then perturbs entries at the 1/sqrt(N)
    // scale, which keeps short jumps inside nearby basins.
    double norm_sq = 0.0;
    for (const double x : q) norm_sq += x * x;
    const double inv = 1.0 / std::sqrt(norm_sq);
    std::vector<double> out(origin.values());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += length * inv * q[i];
    return RelaxedVector(std::move(out));
}

namespace {

// One steepest-descent chain to a local minimum; v is updated in place.
// Returns the final cost.
double descend(std::vector<double>& v, const RootTable& roots, int band, double delta) {
    const int n = roots.n();
    std::vector<double> u, gc, gs, p, trial(static_cast<std::size_t>(n));
    double f0 = cost_of(v);
    for (long step = 0; step < kMaxInnerSteps; ++step) {
        if (f0 <= kCostFloor) break;
        binarity_slope(v, u);
        half_gradient(u, roots, band, gc, gs);
        for (auto& x : gc) x *= 2.0;
        for (auto& x : gs) x *= 2.0;
        synthesize(gc, gs, roots, band, p);

        CubicSlope slope;
        for (int i = 0; i < n; ++i) {
            const double x = v[i];
            const double pi = p[i];
            const double p2 = pi * pi;
            slope.a0 += u[i] * pi;
            slope.a1 += (2.0 * x * (x - 1.0) + (2.0 * x - 1.0) * (2.0 * x - 1.0)) * p2;
            slope.a2 += 3.0 * (2.0 * x - 1.0) * p2 * pi;
            slope.a3 += 2.0 * p2 * p2;
        }
        if (slope.a3 <= 0.0) break; // zero direction: stationary
        double alpha = choose_step(slope);

        double f1 = 0.0;
        bool decreased = false;
        for (int k = 0; k <= kMaxHalvings; ++k) {
            for (int i = 0; i < n; ++i) trial[i] = v[i] + alpha * p[i];
            f1 = cost_of(trial);
            if (f1 < f0) {
                decreased = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!decreased) break; // at the round-off floor
        v.swap(trial);
        const double t = f0 / f1 - 1.0;
        f0 = f1;
        if (t <= delta) break;
    }
    return f0;
}

// Attempts to reduce the cost along deterministic directions (single-harmonic
// axes, then the all-harmonic diagonal) with shrinking steps. Returns true
// when v was improved.
bool probe_directions(std::vector<double>& v, const RootTable& roots, int band) {
    const int n = roots.n();
    const int m_max = (n - 1) / 2;
    const std::size_t dim = static_cast<std::size_t>(m_max - band);
    const double f0 = cost_of(v);
    std::vector<double> fc(dim, 0.0), fs(dim, 0.0), q, trial(static_cast<std::size_t>(n));

    const auto try_direction = [&]() {
        synthesize(fc, fs, roots, band, q);
        double h = kProbeStep;
        for (int k = 0; k <= kProbeHalvings; ++k, h *= 0.5) {
            for (const double sign : {1.0, -1.0}) {
                for (int i = 0; i < n; ++i) trial[i] = v[i] + sign * h * q[i];
                if (cost_of(trial) < f0) {
                    v.swap(trial);
                    return true;
                }
            }
        }
        return false;
    };

    for (std::size_t j = 0; j < dim; ++j) {
        fc[j] = 1.0;
        if (try_direction()) return true;
        fc[j] = 0.0;
        fs[j] = 1.0;
        if (try_direction()) return true;
        fs[j] = 0.0;
    }
    const double diag = 1.0 / std::sqrt(static_cast<double>(2 * dim));
    std::fill(fc.begin(), fc.end(), diag);
    std::fill(fs.begin(), fs.end(), diag);
    return try_direction();
}

} // namespace

InversionResult invert_optimization(const SpectralData& data, const OptConfig& cfg) {
    const auto t_start = std::chrono::steady_clock::now();
    const int n = data.n_len;
    const int r = data.popcount;
    const int band = data.band;
    const int m_max = (n - 1) / 2;
    require_free_band(band, m_max);
    if (band < 1) throw BandLimitError("inversion requires band >= 1");
    if (r <= 0 || r > n) throw std::invalid_argument("data popcount outside (0, n]");
    if (cfg.epsilon < 0 || cfg.delta <= 0 || cfg.iterations_per_increment <= 0 ||
        cfg.max_outer_iterations <= 0)
        throw std::invalid_argument("invalid optimizer configuration");

    const RootTable& roots = roots_for(n);
    const RelaxedVector guess = idft_band_limited(data);
    std::vector<double> v = guess.values();
    auto rng = make_engine(cfg.rng_seed);

    std::vector<double> best_v = v;
    double best_key = std::numeric_limits<double>::infinity();
    double best_chi = std::numeric_limits<double>::infinity();
    long best_iter = 0;
    double jump_length = cfg.jump_length_initial;

    const auto finish = [&](InversionResult res) {
        res.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        return res;
    };

    for (long iter = 1; iter <= cfg.max_outer_iterations; ++iter) {
        double cost = descend(v, roots, band, cfg.delta);

        // Certify the minimum; failed checks trigger deterministic probing.
        // The gradient a delta-terminated descent can reach at a minimum with
        // cost F scales like sqrt(curvature * delta * F), so the configured
        // tolerance acts as a floor rather than an absolute requirement.
        const auto effective_tol = [&](double f) {
            return std::max(cfg.local_min_tol, std::sqrt(3.0 * n * cfg.delta * std::max(f, 0.0)));
        };
        RelaxedVector vr(v);
        int rounds = 0;
        while (!is_local_minimum(vr, band, effective_tol(cost))) {
            if (rounds++ >= kMaxProbeRounds)
                throw PrecisionError("local minimum could not be certified after probing; "
                                     "increase delta or the local-minimum tolerance");
            if (!probe_directions(v, roots, band)) break; // flat to round-off: accept
            cost = descend(v, roots, band, cfg.delta);
            vr = RelaxedVector(v);
        }

        const BinaryVector x = roughen(vr, r);
        const double chi = chi_distance(x, data, band, cfg.norm);
        const double metric = cfg.stop_metric == StopMetric::chi ? chi : cost;

        if (cfg.progress && cfg.progress_every > 0 && iter % cfg.progress_every == 0)
            cfg.progress(iter, cost, chi, jump_length);

        if (metric < cfg.epsilon) {
            return finish({x, chi, 1, static_cast<int>(iter), BigInt(iter), 0.0, true});
        }
        if (metric < best_key) {
            best_key = metric;
            best_chi = chi;
            best_v = v;
            best_iter = iter;
        }

        if (iter % cfg.iterations_per_increment == 0) jump_length += cfg.jump_increment;

        const std::vector<double>& origin = cfg.jump_origin == JumpOrigin::deepest ? best_v
                                            : cfg.jump_origin == JumpOrigin::initial_guess
                                                ? guess.values()
                                                : v;
        const RelaxedVector jumped =
            random_jump(RelaxedVector(origin), jump_length, band, rng);
        v = jumped.values();
    }

    const BinaryVector x = roughen(RelaxedVector(best_v), r);
    return finish({x, best_chi, 2, static_cast<int>(best_iter),
                   BigInt(cfg.max_outer_iterations), 0.0, true});
}

JumpOrigin jump_origin_from_string(std::string_view s) {
    if (s == "deepest") return JumpOrigin::deepest;
    if (s == "initial_guess") return JumpOrigin::initial_guess;
    if (s == "most_recent") return JumpOrigin::most_recent;
    throw std::invalid_argument("jump origin must be deepest, initial_guess or most_recent");
}

StopMetric stop_metric_from_string(std::string_view s) {
    if (s == "chi") return StopMetric::chi;
    if (s == "F" || s == "cost") return StopMetric::cost;
    throw std::invalid_argument("stop metric must be chi or cost");
}

} // namespace bindft
