#include "bindft/polygon.hpp"

#include <algorithm>
#include <stdexcept>

#include "bindft/errors.hpp"

namespace bindft {

std::vector<int> factorize(int n) {
    if (n < 2) throw std::invalid_argument("factorization requires n >= 2");
    std::vector<int> factors;
    int rest = n;
    for (int p = 2; static_cast<long long>(p) * p <= rest; ++p) {
        while (rest % p == 0) {
            factors.push_back(p);
            rest /= p;
        }
    }
    if (rest > 1) factors.push_back(rest);
    return factors;
}

namespace {

// Distinct polygon orders admissible in a length-n vector: prime divisors
// of n (an order must divide n and the theory covers prime orders only;
// the order n itself would require an all-ones vector).
std::vector<int> admissible_orders(int n) {
    std::vector<int> orders = factorize(n);
    orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
    return orders;
}

void require_two_factor(int n) {
    if (factorize(n).size() > 2)
        throw UnsupportedLengthError(
            "length " + std::to_string(n) +
            " has three or more prime divisors; uniqueness structure unknown");
}

// Visits every ascending index subset of size `depth` drawn from [0, avail).
template <class Body>
void for_each_subset(std::size_t avail, std::size_t depth, Body&& body) {
    std::vector<std::size_t> idx(depth);
    for (std::size_t i = 0; i < depth; ++i) idx[i] = i;
    for (;;) {
        body(idx);
        std::size_t i = depth;
        while (i > 0 && idx[i - 1] == avail - (depth - i) - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t t = i; t < depth; ++t) idx[t] = idx[t - 1] + 1;
    }
}

} // namespace

std::vector<PolygonReport> find_polygons(const BinaryVector& x, int k) {
    const int n = x.n();
    if (k < 2 || n % k != 0)
        throw std::invalid_argument("polygon order " + std::to_string(k) + " must divide " +
                                    std::to_string(n) + " and be >= 2");
    const int step = n / k;
    std::vector<PolygonReport> found;
    for (int residue = 0; residue < step; ++residue) {
        bool all_ones = true;
        bool all_zeros = true;
        std::vector<int> members;
        members.reserve(static_cast<std::size_t>(k));
        for (int pos = residue == 0 ? step : residue; pos <= n; pos += step) {
            members.push_back(pos);
            if (x[pos - 1])
                all_zeros = false;
            else
                all_ones = false;
        }
        if (all_ones || all_zeros) {
            found.push_back({k, residue, all_ones, std::move(members)});
        }
    }
    return found;
}

bool has_polygon_pair(const BinaryVector& x, int k) {
    bool any_full = false;
    bool any_empty = false;
    for (const auto& poly : find_polygons(x, k)) {
        (poly.full ? any_full : any_empty) = true;
    }
    return any_full && any_empty;
}

int distinguishability_order(const BinaryVector& x) {
    require_two_factor(x.n());
    int order = 1;
    for (const int k : admissible_orders(x.n())) {
        if (k < x.n() && has_polygon_pair(x, k)) order = std::max(order, k);
    }
    return order;
}

int uniqueness_bound(int n, int r) {
    const std::vector<int> factors = factorize(n);
    if (factors.size() != 2)
        throw UnsupportedLengthError("uniqueness bound requires a length with exactly two prime "
                                     "factors, got " +
                                     std::to_string(n));
    if (r < 1 || r > (n - 1) / 2)
        throw std::invalid_argument("popcount outside [1, (n-1)/2]");
    const int p = factors[0];
    const int q = factors[1];
    int best = 1;
    for (const int k : {p, q, p * q})
        if (k <= r) best = std::max(best, k);
    return best;
}

std::vector<BinaryVector> enumerate_false_solutions(const BinaryVector& x, int band,
                                                    std::size_t cap) {
    const int n = x.n();
    if (factorize(n).size() != 2)
        throw UnsupportedLengthError("false-solution enumeration requires a length with exactly "
                                     "two prime factors, got " +
                                     std::to_string(n));
    if (band < 0) throw std::invalid_argument("band must be nonnegative");

    std::vector<BinaryVector> out;
    for (const int k : admissible_orders(n)) {
        // a swapped pair of k-gons first differs from x at coefficient k
        if (k <= band || k >= n) continue;
        std::vector<const PolygonReport*> full;
        std::vector<const PolygonReport*> empty;
        const auto polys = find_polygons(x, k);
        for (const auto& poly : polys) (poly.full ? full : empty).push_back(&poly);
        const std::size_t pairs_max = std::min(full.size(), empty.size());
        if (pairs_max == 0) continue;

        // swap j full with j empty polygons, every subset pair, j = 1..pairs_max
        std::size_t count = 0;
        for (std::size_t j = 1; j <= pairs_max; ++j) {
            for_each_subset(full.size(), j, [&](const std::vector<std::size_t>& fsel) {
                for_each_subset(empty.size(), j, [&](const std::vector<std::size_t>& esel) {
                    if (++count > cap)
                        throw EnumerationCapError("polygon swap enumeration exceeds cap of " +
                                                  std::to_string(cap));
                    std::vector<std::uint8_t> bits(x.bits());
                    for (const std::size_t fi : fsel)
                        for (const int pos : full[fi]->index_set) bits[pos - 1] = 0;
                    for (const std::size_t ei : esel)
                        for (const int pos : empty[ei]->index_set) bits[pos - 1] = 1;
                    out.emplace_back(std::move(bits));
                });
            });
        }
    }
    return out;
}

std::string to_string(UniquenessStatus s) {
    switch (s) {
        case UniquenessStatus::unique: return "unique";
        case UniquenessStatus::non_unique: return "non_unique";
        case UniquenessStatus::unknown: return "unknown";
    }
    return "?";
}

std::string to_string(UniquenessReason r) {
    switch (r) {
        case UniquenessReason::prime_length: return "prime-N";
        case UniquenessReason::two_factor_bound: return "two-factor-bound";
        case UniquenessReason::polygon_pair: return "polygon-pair";
        case UniquenessReason::many_prime_factors: return "three-or-more-prime-divisors";
    }
    return "?";
}

UniquenessVerdict certify(int n, int r, int band, const BinaryVector* x) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("length must be odd and >= 3");
    if (band < 1 || band > (n - 1) / 2)
        throw BandLimitError("band outside [1, (n-1)/2]");
    if (x && (x->n() != n || x->popcount() != r))
        throw std::invalid_argument("supplied vector does not match (n, r)");

    const auto factors = factorize(n);
    if (factors.size() == 1) {
        return {UniquenessStatus::unique, 1, UniquenessReason::prime_length};
    }
    if (factors.size() > 2) {
        return {UniquenessStatus::unknown, std::nullopt, UniquenessReason::many_prime_factors};
    }
    if (x) {
        const int order = distinguishability_order(*x);
        return {order <= band ? UniquenessStatus::unique : UniquenessStatus::non_unique, order,
                UniquenessReason::polygon_pair};
    }
    const int bound = uniqueness_bound(n, r);
    return {band >= bound ? UniquenessStatus::unique : UniquenessStatus::non_unique, bound,
            UniquenessReason::two_factor_bound};
}

} // namespace bindft
