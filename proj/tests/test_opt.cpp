#include "doctest.h"

#include <cmath>

#include "bindft/comb.hpp"
#include "bindft/errors.hpp"
#include "bindft/models.hpp"
#include "bindft/opt.hpp"
#include "bindft/rng.hpp"

using namespace bindft;

namespace {

// random relaxed vector with entries around the unit interval
RelaxedVector random_state(int n, std::uint64_t seed) {
    auto eng = make_engine(seed);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& e : v) e = 1.5 * uniform_open01(eng) - 0.25;
    return RelaxedVector(std::move(v));
}

// harmonic basis vector with a single cosine (or sine) amplitude
RelaxedVector harmonic(int n, int m, bool sine) {
    const RootTable& roots = roots_for(n);
    std::vector<double> q(static_cast<std::size_t>(n));
    for (int pos = 1; pos <= n; ++pos)
        q[pos - 1] = sine ? roots.sin_at(static_cast<long long>(m) * pos)
                          : roots.cos_at(static_cast<long long>(m) * pos);
    return RelaxedVector(std::move(q));
}

double add_eval(const RelaxedVector& v, const RelaxedVector& q, double h) {
    std::vector<double> w(v.values());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += h * q[i];
    return binarity_cost(RelaxedVector(std::move(w)));
}

} // namespace

TEST_CASE("binarity cost") {
    CHECK(binarity_cost(RelaxedVector(models::n33())) == 0.0);
    const RelaxedVector half(std::vector<double>(31, 0.5));
    CHECK(binarity_cost(half) == doctest::Approx(31.0 / 16.0).epsilon(1e-15));
    // frozen fixture: band-1 guess of the n31 model
    const auto g = idft_band_limited(dft_forward(models::n31(), 1));
    CHECK(binarity_cost(g) == doctest::Approx(1.837972538537191879).epsilon(1e-13));
}

TEST_CASE("gradient amplitudes vanish on binary and half-filled states") {
    for (const auto& v :
         {RelaxedVector(models::n31()), RelaxedVector(std::vector<double>(31, 0.5))}) {
        const auto g = gradient_coefficients(v, 3);
        for (const double c : g.cos_terms) CHECK(std::abs(c) < 1e-12);
        for (const double s : g.sin_terms) CHECK(std::abs(s) < 1e-12);
    }
}

TEST_CASE("gradient amplitudes match central finite differences") {
    const double h = 1e-6;
    for (const int n : {11, 31}) {
        const int band = n == 11 ? 2 : 5;
        const int m_max = (n - 1) / 2;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto v = random_state(n, seed);
            const auto g = gradient_coefficients(v, band);
            for (int m = band + 1; m <= m_max; ++m) {
                const auto qc = harmonic(n, m, false);
                const auto qs = harmonic(n, m, true);
                const double fd_c = (add_eval(v, qc, h) - add_eval(v, qc, -h)) / (2 * h);
                const double fd_s = (add_eval(v, qs, h) - add_eval(v, qs, -h)) / (2 * h);
                CHECK(g.cos_terms[m - band - 1] ==
                      doctest::Approx(fd_c).epsilon(1e-6).scale(std::max(1.0, std::abs(fd_c))));
                CHECK(g.sin_terms[m - band - 1] ==
                      doctest::Approx(fd_s).epsilon(1e-6).scale(std::max(1.0, std::abs(fd_s))));
            }
        }
    }
}

TEST_CASE("descent direction lies in the data-null space") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto v = random_state(31, seed);
        const int band = 3;
        const auto p = descent_direction(v, band);
        const auto before = dft_forward(v, band);
        std::vector<double> moved(v.values());
        for (std::size_t i = 0; i < moved.size(); ++i) moved[i] += p[i];
        const auto after = dft_forward(RelaxedVector(std::move(moved)), band);
        for (int m = 0; m < band; ++m)
            CHECK(std::abs(after.coeffs[m] - before.coeffs[m]) < 1e-10);
    }
    CHECK_THROWS_AS(descent_direction(random_state(31, 0), 15), BandLimitError);
}

TEST_CASE("descent direction vanishes on binary vectors") {
    const auto p = descent_direction(RelaxedVector(models::n31()), 3);
    for (int i = 0; i < 31; ++i) CHECK(std::abs(p[i]) < 1e-12);
}

TEST_CASE("step selection solves the slope cubic") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto v = random_state(11, seed);
        const auto p = random_state(11, seed + 1000);
        const auto slope = directional_slope(v, p);
        const double alpha = choose_step(slope);
        CHECK(std::abs(slope(alpha)) < 1e-9 * std::max(1.0, slope.a3));
        // the chosen stationary point strictly decreases the cost
        CHECK(add_eval(v, p, alpha) < binarity_cost(v));
    }
    CHECK_THROWS_AS(choose_step(CubicSlope{1.0, 0.0, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("line search reaches an exact binary minimum when one lies on the ray") {
    // v = x + t*q for binary x and harmonic q: stepping t back recovers cost 0
    const auto& x = models::n31();
    const auto q = harmonic(31, 7, false);
    std::vector<double> v(static_cast<std::size_t>(31));
    for (int i = 0; i < 31; ++i) v[i] = x[i] + 0.08 * q[i];
    const RelaxedVector vr(std::move(v));
    std::vector<double> dir(q.values());
    const RelaxedVector d(std::move(dir));
    const double alpha = line_search(vr, d);
    CHECK(add_eval(vr, d, alpha) < 1e-12);
}

TEST_CASE("local minimum certificates") {
    CHECK(is_local_minimum(RelaxedVector(models::n31()), 3, 1e-8));
    const auto mid = idft_band_limited(dft_forward(models::n31(), 1));
    CHECK(!is_local_minimum(mid, 1, 1e-8));
}

TEST_CASE("random jumps preserve the data and reproduce per seed") {
    const auto v = idft_band_limited(dft_forward(models::n35(), 3));
    auto rng1 = make_engine(5);
    auto rng2 = make_engine(5);
    const auto j1 = random_jump(v, 2.0, 3, rng1);
    const auto j2 = random_jump(v, 2.0, 3, rng2);
    for (int i = 0; i < 35; ++i) CHECK(j1[i] == j2[i]);

    auto rng3 = make_engine(6);
    const auto j0 = random_jump(v, 0.0, 3, rng3);
    for (int i = 0; i < 35; ++i) CHECK(j0[i] == v[i]);

    const auto sv = dft_forward(v, 3);
    const auto sj = dft_forward(j1, 3);
    for (int m = 0; m < 3; ++m) CHECK(std::abs(sv.coeffs[m] - sj.coeffs[m]) < 1e-10);

    // unit jumps move by exactly the requested length
    auto rng4 = make_engine(7);
    const auto j = random_jump(v, 2.5, 3, rng4);
    double norm_sq = 0.0;
    for (int i = 0; i < 35; ++i) norm_sq += (j[i] - v[i]) * (j[i] - v[i]);
    CHECK(std::sqrt(norm_sq) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("optimization recovers the n31 model and agrees with the search") {
    const auto data = dft_forward(models::n31(), 3);
    OptConfig cfg;
    cfg.rng_seed = 1;
    cfg.max_outer_iterations = 5000;
    const auto opt = invert_optimization(data, cfg);
    CHECK(opt.stop_condition == 1);
    CHECK(opt.solution == models::n31());
    CHECK(opt.achieved_chi < cfg.epsilon);

    CombConfig ccfg;
    ccfg.max_depth = 15;
    const auto comb = invert_combinatorial(data, ccfg);
    CHECK(comb.solution == opt.solution);
}

TEST_CASE("optimization under the cost stop metric") {
    const auto data = dft_forward(models::n31(), 5);
    OptConfig cfg;
    cfg.rng_seed = 2;
    cfg.stop_metric = StopMetric::cost;
    cfg.epsilon = 1e-12;
    cfg.max_outer_iterations = 5000;
    const auto res = invert_optimization(data, cfg);
    CHECK(res.stop_condition == 1);
    CHECK(res.solution == models::n31());
}

TEST_CASE("alternative jump origins still converge on easy data") {
    for (const auto origin : {JumpOrigin::initial_guess, JumpOrigin::most_recent}) {
        const auto data = dft_forward(models::n31(), 5);
        OptConfig cfg;
        cfg.rng_seed = 3;
        cfg.jump_origin = origin;
        cfg.max_outer_iterations = 5000;
        const auto res = invert_optimization(data, cfg);
        CHECK(res.stop_condition == 1);
        CHECK(res.solution == models::n31());
    }
}

TEST_CASE("iteration budget exhaustion reports the deepest minimum") {
    // unreachable target: random coefficients of no binary vector
    SpectralData data(11, 1, 4, {{3.3, 1.1}});
    OptConfig cfg;
    cfg.rng_seed = 4;
    cfg.epsilon = 1e-12;
    cfg.max_outer_iterations = 50;
    const auto res = invert_optimization(data, cfg);
    CHECK(res.stop_condition == 2);
    CHECK(res.solution.popcount() == 4);
    CHECK(res.achieved_chi > 0.0);
    CHECK(res.candidates_tested == 50);
}

TEST_CASE("full band leaves no free harmonics") {
    const auto data = dft_forward(models::n31(), 15);
    CHECK_THROWS_AS(invert_optimization(data, {}), BandLimitError);
}
