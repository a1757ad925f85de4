#include "doctest.h"

#include <algorithm>
#include <set>

#include "bindft/dft.hpp"
#include "bindft/errors.hpp"
#include "bindft/models.hpp"
#include "bindft/polygon.hpp"
#include "oracles.hpp"

using namespace bindft;

TEST_CASE("factorization") {
    CHECK(factorize(31) == std::vector<int>{31});
    CHECK(factorize(33) == std::vector<int>{3, 11});
    CHECK(factorize(143) == std::vector<int>{11, 13});
    CHECK(factorize(9) == std::vector<int>{3, 3});
    CHECK(factorize(105) == std::vector<int>{3, 5, 7});
}

TEST_CASE("polygon scan") {
    SUBCASE("all-ones vector carries N/k full polygons") {
        const auto x = BinaryVector::from_string("111111111");
        const auto polys = find_polygons(x, 3);
        CHECK(polys.size() == 3);
        for (const auto& p : polys) {
            CHECK(p.full);
            CHECK(p.index_set.size() == 3);
            CHECK(p.index_set[1] - p.index_set[0] == 3);
        }
    }
    SUBCASE("n33 model: two full and one empty 3-gon") {
        int full = 0, empty = 0;
        for (const auto& p : find_polygons(models::n33(), 3)) {
            (p.full ? full : empty)++;
            // vertices must agree with the stored bits
            for (const int pos : p.index_set) CHECK(models::n33()[pos - 1] == (p.full ? 1 : 0));
        }
        CHECK(full == 2);
        CHECK(empty == 1);
        CHECK(has_polygon_pair(models::n33(), 3));
        CHECK(!has_polygon_pair(models::n33(), 11));
    }
    SUBCASE("n35 model has no pairs at either order") {
        CHECK(!has_polygon_pair(models::n35(), 5));
        CHECK(!has_polygon_pair(models::n35(), 7));
    }
    SUBCASE("three blocks of three on N=9") {
        const auto x = BinaryVector::from_string("111000111");
        CHECK(find_polygons(x, 3).empty());
        CHECK(!has_polygon_pair(x, 3));
    }
    SUBCASE("order must divide the length") {
        CHECK_THROWS_AS(find_polygons(models::n33(), 4), std::invalid_argument);
        CHECK_THROWS_AS(find_polygons(models::n33(), 1), std::invalid_argument);
    }
}

TEST_CASE("distinguishability order") {
    CHECK(distinguishability_order(models::n31()) == 1);
    CHECK(distinguishability_order(models::n33()) == 3);
    CHECK(distinguishability_order(models::n35()) == 1);
    CHECK_THROWS_AS(distinguishability_order(BinaryVector::from_string(std::string(105, '1'))),
                    UnsupportedLengthError);
}

TEST_CASE("uniqueness bound instances") {
    CHECK(uniqueness_bound(143, 10) == 1);
    CHECK(uniqueness_bound(143, 12) == 11);
    CHECK(uniqueness_bound(143, 20) == 13);
    CHECK(uniqueness_bound(9, 4) == 3);
    CHECK_THROWS_AS(uniqueness_bound(31, 5), UnsupportedLengthError);
    CHECK_THROWS_AS(uniqueness_bound(105, 5), UnsupportedLengthError);
}

TEST_CASE("false solutions of the n33 model") {
    const auto& b = models::n33();
    auto fs1 = enumerate_false_solutions(b, 1);
    CHECK(fs1.size() == 2);
    for (const auto& y : fs1) {
        CHECK(real_distance(y, b) == 3);
        CHECK(chi_distance(y, b, 1) < 1e-9);
        CHECK(chi_distance(y, b, 2) < 1e-9);
        CHECK(chi_distance(y, b, 3) > 1e-3);
    }
    CHECK(enumerate_false_solutions(b, 2).size() == 2);
    CHECK(enumerate_false_solutions(b, 3).empty());
}

TEST_CASE("false solutions match a brute-force scan on small two-factor lengths") {
    for (const int n : {9, 15}) {
        for (int r = 1; r <= (n - 1) / 2; ++r) {
            const auto all = oracle::all_vectors(n, r);
            for (const auto& x : all) {
                std::set<std::string> predicted;
                for (const auto& y : enumerate_false_solutions(x, 1))
                    predicted.insert(y.to_string());
                std::set<std::string> scanned;
                for (const auto& y : all) {
                    if (y == x) continue;
                    if (oracle::chi2(x, y, 1) < 1e-9) scanned.insert(y.to_string());
                }
                CHECK(predicted == scanned);
            }
        }
    }
}

TEST_CASE("distinguishability order equals the smallest band with no false solutions") {
    for (const int n : {9, 15}) {
        for (int r = 1; r <= (n - 1) / 2; ++r) {
            for (const auto& x : oracle::all_vectors(n, r)) {
                const int order = distinguishability_order(x);
                CHECK(enumerate_false_solutions(x, order).empty());
                if (order > 1) CHECK(!enumerate_false_solutions(x, order - 1).empty());
            }
        }
    }
}

TEST_CASE("spectral collapse of a swapped polygon pair") {
    // difference of a pair swap vanishes below the polygon order and not at it
    const auto check_swap = [](const BinaryVector& x, int k) {
        auto polys = find_polygons(x, k);
        const PolygonReport* full = nullptr;
        const PolygonReport* empty = nullptr;
        for (const auto& p : polys) {
            if (p.full && !full) full = &p;
            if (!p.full && !empty) empty = &p;
        }
        REQUIRE(full != nullptr);
        REQUIRE(empty != nullptr);
        auto bits = x.bits();
        for (const int pos : full->index_set) bits[pos - 1] = 0;
        for (const int pos : empty->index_set) bits[pos - 1] = 1;
        const BinaryVector y{bits};
        for (int m = 1; m < k; ++m)
            CHECK(std::abs(oracle::dft_term(x, m) - oracle::dft_term(y, m)) < 1e-9);
        CHECK(std::abs(oracle::dft_term(x, k) - oracle::dft_term(y, k)) > 1e-9);
    };

    check_swap(models::n33(), 3);
    check_swap(BinaryVector::from_string("100100110"), 3);       // N=9 with a 3-gon pair
    check_swap(BinaryVector::from_string("100001000011001"), 3); // N=15
    check_swap(BinaryVector::from_string("100100100100100"), 5); // N=15 with a 5-gon pair
}

TEST_CASE("certification verdicts") {
    SUBCASE("prime length") {
        const auto v = certify(31, 15, 1);
        CHECK(v.status == UniquenessStatus::unique);
        CHECK(v.reason == UniquenessReason::prime_length);
        CHECK(v.certified_band == 1);
    }
    SUBCASE("two-factor length with a concrete vector") {
        const auto v = certify(33, 16, 1, &models::n33());
        CHECK(v.status == UniquenessStatus::non_unique);
        CHECK(v.certified_band == 3);
        const auto v3 = certify(33, 16, 3, &models::n33());
        CHECK(v3.status == UniquenessStatus::unique);
    }
    SUBCASE("vector-specific uniqueness despite a global non-unique problem") {
        const auto global = certify(35, 17, 1);
        CHECK(global.status == UniquenessStatus::non_unique);
        CHECK(global.certified_band == 7);
        const auto specific = certify(35, 17, 1, &models::n35());
        CHECK(specific.status == UniquenessStatus::unique);
        CHECK(specific.certified_band == 1);
    }
    SUBCASE("three or more prime divisors are unknown") {
        const auto v = certify(105, 10, 3);
        CHECK(v.status == UniquenessStatus::unknown);
        CHECK(!v.certified_band.has_value());
        CHECK(v.reason == UniquenessReason::many_prime_factors);
    }
}

TEST_CASE("prime lengths have no 1-indistinguishable pairs") {
    for (const int n : {5, 7, 11}) {
        for (int r = 1; r <= (n - 1) / 2; ++r) {
            const auto all = oracle::all_vectors(n, r);
            for (std::size_t i = 0; i < all.size(); ++i)
                for (std::size_t j = i + 1; j < all.size(); ++j)
                    CHECK(oracle::chi2(all[i], all[j], 1) > 1e-9);
        }
    }
}
