#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bindft/binary_vector.hpp"

namespace bindft {

/// Prime factors of n with multiplicity, ascending. Trial division.
std::vector<int> factorize(int n);

/// k positions in arithmetic progression with step N/k: the residue class
/// n == residue (mod N/k) over 1-based positions. "Full" polygons carry all
/// 1s, "empty" polygons all 0s.
struct PolygonReport {
    int order_k = 0;
    int residue_m = 0; // in [0, N/k)
    bool full = false; // full polygon (all 1s) vs empty polygon (all 0s)
    std::vector<int> index_set;
};

/// All full and empty k-vertex polygons of x; k must divide N, k >= 2.
std::vector<PolygonReport> find_polygons(const BinaryVector& x, int k);

/// True iff x contains at least one full and at least one empty k-gon.
bool has_polygon_pair(const BinaryVector& x, int k);

/// Smallest L such that x is L-distinguishable from every other vector with
/// the same length and popcount: 1 when no order admits a full/empty pair,
/// otherwise the largest order carrying a pair. Requires N with at most two
/// prime factors counted with multiplicity.
int distinguishability_order(const BinaryVector& x);

/// Band sufficient for global uniqueness at popcount r when N = p*q
/// (p, q prime, possibly equal): the largest divisor-product p^l q^m <= r
/// with l, m in {0,1}.
int uniqueness_bound(int n, int r);

/// Every vector (same length, same popcount) that matches x on all DFT
/// coefficients 1..band, built by swapping equal counts of full and empty
/// polygons of a single order > band. Requires N with exactly two prime
/// factors. The number of swap subsets examined is capped.
std::vector<BinaryVector> enumerate_false_solutions(const BinaryVector& x, int band,
                                                    std::size_t cap = 1'000'000);

enum class UniquenessStatus { unique, non_unique, unknown };
enum class UniquenessReason { prime_length, two_factor_bound, polygon_pair, many_prime_factors };

struct UniquenessVerdict {
    UniquenessStatus status = UniquenessStatus::unknown;
    std::optional<int> certified_band; // smallest band at which uniqueness is certified
    UniquenessReason reason = UniquenessReason::many_prime_factors;
};

std::string to_string(UniquenessStatus s);
std::string to_string(UniquenessReason r);

/// Uniqueness verdict for the inversion problem at (n, r, band). Prime N is
/// always unique; two-factor N compares band against uniqueness_bound; with
/// a concrete vector the verdict is specific to that vector via its
/// distinguishability order. Three or more prime divisors return unknown.
UniquenessVerdict certify(int n, int r, int band, const BinaryVector* x = nullptr);

} // namespace bindft
