#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string_view>

#include "bindft/comb.hpp"
#include "bindft/dft.hpp"

namespace bindft {

enum class JumpOrigin { deepest, initial_guess, most_recent };
enum class StopMetric { chi, cost };

JumpOrigin jump_origin_from_string(std::string_view s);
StopMetric stop_metric_from_string(std::string_view s);

struct OptConfig {
    double epsilon = 1e-5;                  // stop threshold on chi (or on the cost)
    double delta = 1e-12;                   // relative-improvement cutoff per descent step
    double jump_length_initial = 1.0;       // S
    double jump_increment = 0.25;           // added to S every iterations_per_increment
    long iterations_per_increment = 1000;
    long max_outer_iterations = 1'000'000;
    JumpOrigin jump_origin = JumpOrigin::deepest;
    StopMetric stop_metric = StopMetric::chi;
    Norm norm = Norm::l2;
    double local_min_tol = 1e-8;
    std::uint64_t rng_seed = 0;
    long progress_every = 0; // 0: silent
    std::function<void(long iter, double cost, double chi, double jump_length)> progress;
};

/// Binarity cost sum v_n^2 (v_n - 1)^2; zero exactly on binary vectors.
double binarity_cost(const RelaxedVector& v);

/// Cost gradient with respect to the free harmonic amplitudes (cos and sin
/// coefficients for m = band+1 .. M). Requires band < M.
struct GradientCoefficients {
    int band = 0;                  // amplitudes cover m = band+1 .. (N-1)/2
    std::vector<double> cos_terms; // 2 sum u_n cos(xi m n)
    std::vector<double> sin_terms; // 2 sum u_n sin(xi m n)
};
GradientCoefficients gradient_coefficients(const RelaxedVector& v, int band);

/// Real-space synthesis of the gradient amplitudes: a direction that leaves
/// all DFT coefficients with |m| <= band unchanged.
RelaxedVector descent_direction(const RelaxedVector& v, int band);

/// Derivative of the cost along v + alpha*dir, halved: a cubic in alpha.
struct CubicSlope {
    double a0 = 0, a1 = 0, a2 = 0, a3 = 0;
    double operator()(double alpha) const {
        return a0 + alpha * (a1 + alpha * (a2 + alpha * a3));
    }
};
CubicSlope directional_slope(const RelaxedVector& v, const RelaxedVector& dir);

/// Root of the cubic slope at the nearest downhill minimum: the smallest real
/// root when the middle root is positive, otherwise the largest.
double choose_step(const CubicSlope& c);

/// choose_step plus a round-off safeguard: the step is halved (up to 40
/// times) while it fails to decrease the cost. Throws on a zero direction.
double line_search(const RelaxedVector& v, const RelaxedVector& dir);

/// True iff both gradient half-sums |sum u_n cos|, |sum u_n sin| are below
/// tol for every m in (band, M].
bool is_local_minimum(const RelaxedVector& v, int band, double tol);

/// origin + length * q where q is a unit-length vector with uniformly random
/// direction in the free amplitude space; data within the band are preserved.
RelaxedVector random_jump(const RelaxedVector& origin, double length, int band,
                          std::mt19937_64& rng);

/// Steepest-descent minimization of the binarity cost inside the
/// data-consistent affine space, with increasing random jumps out of local
/// minima. Stop 1: the roughened minimum matches the data within epsilon.
/// Stop 2: iteration budget exhausted; deepest minimum returned.
InversionResult invert_optimization(const SpectralData& data, const OptConfig& cfg = {});

} // namespace bindft
