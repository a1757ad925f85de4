#pragma once

#include <complex>
#include <vector>

#include "bindft/binary_vector.hpp"

namespace bindft {

/// Unit-circle table exp(i 2 pi k / N), k = 0..N-1. Computed once per N in
/// long double and shared; exponents are always reduced mod N before lookup.
class RootTable {
  public:
    explicit RootTable(int n);

    int n() const { return n_; }
    std::complex<double> root(long long k) const { return roots_[mod(k)]; }
    double cos_at(long long k) const { return roots_[mod(k)].real(); }
    double sin_at(long long k) const { return roots_[mod(k)].imag(); }

  private:
    std::size_t mod(long long k) const {
        long long m = k % n_;
        return static_cast<std::size_t>(m < 0 ? m + n_ : m);
    }
    int n_;
    std::vector<std::complex<double>> roots_;
};

/// Shared per-N table registry (thread safe, tables are immutable).
const RootTable& roots_for(int n);

/// Band-limited DFT data: the zeroth coefficient (an integer popcount) plus
/// complex coefficients for m = 1..band. Negative indices are never stored;
/// coeff(-m) is derived as the conjugate.
struct SpectralData {
    int n_len = 0;
    int band = 0;
    int popcount = 0;
    std::vector<std::complex<double>> coeffs; // m = 1..band

    SpectralData() = default;
    SpectralData(int n, int band, int popcount, std::vector<std::complex<double>> coeffs);

    int half_band() const { return (n_len - 1) / 2; }
    std::complex<double> coeff(int m) const;

    /// True when every coefficient obeys |c_m| <= r + tol, as exact data from
    /// a binary vector must. Noisy inputs may violate this; callers flag it.
    bool physical(double tol = 1e-9) const;
};

/// Direct-summation DFT over n = 1..N (1-based exponents), m = 1..band.
SpectralData dft_forward(const BinaryVector& x, int band);
/// Same for a relaxed vector; the popcount field is the rounded entry sum.
SpectralData dft_forward(const RelaxedVector& v, int band);

/// Low-pass inverse DFT using the stored coefficients plus their conjugates.
/// Raises CorruptDataError if the imaginary residue exceeds 1e-9 anywhere.
RelaxedVector idft_band_limited(const SpectralData& data);

/// Converts DFT data of a two-species vector v = a + (b-a) x to the data of
/// the underlying binary x. The recovered popcount must be integral to 1e-6.
SpectralData two_species_to_binary(const SpectralData& species, const TwoSpeciesMap& map);

enum class Norm { l1, l2, linf };

Norm norm_from_string(std::string_view s);
std::string to_string(Norm p);

/// Band-limited Fourier-space distance over m = 1..band (m = 0 excluded):
/// [ (1/L) sum |x_m - y_m|^p ]^(1/p), or the max over m for the sup norm.
double chi_distance(const SpectralData& x, const SpectralData& y, int band, Norm p = Norm::l2);
double chi_distance(const BinaryVector& x, const BinaryVector& y, int band, Norm p = Norm::l2);
double chi_distance(const BinaryVector& x, const SpectralData& y, int band, Norm p = Norm::l2);

/// Half the entrywise L1 difference: the number of pairwise 0/1 switches
/// separating two vectors of equal length and popcount.
int real_distance(const BinaryVector& x, const BinaryVector& y);

} // namespace bindft
