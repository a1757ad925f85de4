#include "doctest.h"

#include <cmath>

#include "bindft/comb.hpp"
#include "bindft/models.hpp"
#include "bindft/polygon.hpp"
#include "oracles.hpp"

using namespace bindft;

TEST_CASE("roughening") {
    CHECK(roughen(RelaxedVector({0.9, 0.2, 0.6}), 2).to_string() == "101");
    // ties resolve to the smaller index
    CHECK(roughen(RelaxedVector({0.5, 0.5, 0.5, 0.5, 0.5}), 2).to_string() == "11000");
    CHECK(roughen(RelaxedVector({-1.0, -2.0, -3.0}), 1).to_string() == "100");
    CHECK_THROWS_AS(roughen(RelaxedVector({0.1, 0.2, 0.3}), 0), std::invalid_argument);
}

TEST_CASE("roughened guess distances for the n35 model") {
    const auto& x = models::n35();
    const auto b1 = roughen(idft_band_limited(dft_forward(x, 1)), 17);
    CHECK(real_distance(b1, x) == 8);
    const auto b5 = roughen(idft_band_limited(dft_forward(x, 5)), 17);
    CHECK(real_distance(b5, x) == 4);
}

TEST_CASE("complexity estimate") {
    CHECK(complexity_estimate(61, 31, 1) == 930); // r (N - r)
    CHECK(complexity_estimate(31, 15, 15) == omega_size(31, 15) - 1);
    CHECK(complexity_estimate(61, 31, 10) == BigInt("1672982363638321"));
    CHECK_THROWS_AS(complexity_estimate(31, 15, 16), std::invalid_argument);
}

TEST_CASE("combinatorial inversion recovers the n31 model from band-1 data") {
    const auto data = dft_forward(models::n31(), 1);
    CombConfig cfg;
    cfg.max_depth = 15;
    cfg.threads = 2;
    const auto res = invert_combinatorial(data, cfg);
    CHECK(res.stop_condition == 1);
    CHECK(res.solution == models::n31());
    CHECK(res.achieved_chi <= cfg.epsilon);
    CHECK(res.depth_found ==
          real_distance(roughen(idft_band_limited(data), 15), models::n31()));
}

TEST_CASE("inversion lands on an indistinguishable candidate for the n33 model") {
    const auto& b = models::n33();
    const auto data = dft_forward(b, 1);
    CombConfig cfg;
    cfg.max_depth = 16;
    cfg.threads = 2;
    const auto res = invert_combinatorial(data, cfg);
    CHECK(res.stop_condition == 1);
    // the solution is the model or one of its two polygon swaps
    auto fs = enumerate_false_solutions(b, 1);
    const bool admissible =
        res.solution == b || res.solution == fs[0] || res.solution == fs[1];
    CHECK(admissible);
    CHECK(res.achieved_chi <= cfg.epsilon);
}

TEST_CASE("immediate hit when the roughened guess already matches") {
    const auto& x = models::n31();
    const auto data = dft_forward(x, 15);
    const auto res = invert_combinatorial(data, {});
    CHECK(res.stop_condition == 1);
    CHECK(res.depth_found == 0);
    CHECK(res.candidates_tested == 0);
    CHECK(res.solution == x);
}

TEST_CASE("full-depth search tests every vector exactly once") {
    // unreachable target forces stop 2; the candidate count is then the
    // whole set minus the starting guess
    SpectralData data(13, 1, 6, {{20.0, 20.0}});
    CombConfig cfg;
    cfg.epsilon = 0.0;
    cfg.max_depth = 6;
    const auto res = invert_combinatorial(data, cfg);
    CHECK(res.stop_condition == 2);
    CHECK(res.candidates_tested == omega_size(13, 6) - 1);
    CHECK(res.candidates_tested == complexity_estimate(13, 6, 6));
}

TEST_CASE("stop-2 candidate counts equal the complexity formula at every depth") {
    SpectralData data(11, 2, 4, {{9.0, 9.0}, {9.0, -9.0}});
    for (int d = 1; d <= 4; ++d) {
        CombConfig cfg;
        cfg.epsilon = 0.0;
        cfg.max_depth = d;
        const auto res = invert_combinatorial(data, cfg);
        CHECK(res.stop_condition == 2);
        CHECK(res.candidates_tested == complexity_estimate(11, 4, d));
    }
}

TEST_CASE("stop-2 result is the global minimizer and is thread-count independent") {
    SpectralData data(11, 2, 4, {{1.5, -0.5}, {-0.25, 2.0}});
    CombConfig cfg;
    cfg.epsilon = 0.0;
    cfg.max_depth = 4;
    const auto seq = invert_combinatorial(data, cfg);
    cfg.threads = 2;
    const auto par = invert_combinatorial(data, cfg);
    CHECK(seq.solution == par.solution);
    CHECK(seq.achieved_chi == par.achieved_chi);
    CHECK(seq.candidates_tested == par.candidates_tested);
    CHECK(seq.depth_found == par.depth_found);

    // brute-force minimum over the whole set
    double best = 1e300;
    for (const auto& y : oracle::all_vectors(11, 4)) {
        double acc = 0.0;
        for (int m = 1; m <= 2; ++m) acc += std::norm(oracle::dft_term(y, m) - data.coeff(m));
        best = std::min(best, std::sqrt(acc / 2));
    }
    CHECK(seq.achieved_chi == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("every member of a small set is found from its own exact data") {
    for (const auto& y : oracle::all_vectors(7, 3)) {
        const auto data = dft_forward(y, 1);
        CombConfig cfg;
        cfg.epsilon = 1e-9;
        cfg.max_depth = 3;
        const auto res = invert_combinatorial(data, cfg);
        CHECK(res.stop_condition == 1);
        // N=7 is prime: band 1 certifies uniqueness, so the hit is exact
        CHECK(res.solution == y);
        const auto b = roughen(idft_band_limited(data), 3);
        CHECK(res.depth_found == real_distance(b, y));
    }
}

TEST_CASE("guess distance statistics") {
    // exact data at full band invert exactly, so the distance is zero
    const auto full = guess_distance_stats(31, 15, 15, 50, 3);
    CHECK(full.mean == 0.0);
    CHECK(full.stddev == 0.0);

    // frozen regression values for the band-1 ensemble
    const auto stats = guess_distance_stats(61, 31, 1, 10'000, 17);
    CHECK(stats.mean == doctest::Approx(13.0198).epsilon(1e-6));
    CHECK(stats.stddev == doctest::Approx(1.467041).epsilon(1e-4));
}
