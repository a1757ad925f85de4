#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "bindft/dft.hpp"

namespace bindft {

/// Vector file: one line of N characters from {0,1}. Whitespace and lines
/// starting with '#' are ignored on input.
BinaryVector read_vector(std::istream& in);
BinaryVector read_vector_file(const std::string& path);
void write_vector(std::ostream& out, const BinaryVector& x);
void write_vector_file(const std::string& path, const BinaryVector& x);

/// Spectral file: header lines "N <int>", "r <int>", "L <int>", then exactly
/// L lines "m re im" with m ascending from 1. '#' comments anywhere.
SpectralData read_spectral(std::istream& in);
SpectralData read_spectral_file(const std::string& path);
/// significant_digits 0 writes full precision (exact round trip); otherwise
/// every real is rounded to that many significant figures.
void write_spectral(std::ostream& out, const SpectralData& data, int significant_digits = 0);
void write_spectral_file(const std::string& path, const SpectralData& data,
                         int significant_digits = 0);

/// Decimal rounding to a number of significant figures.
double round_significant(double value, int digits);

/// Line-oriented "key = value" file; '#' starts a comment.
std::map<std::string, std::string> read_config(std::istream& in);
std::map<std::string, std::string> read_config_file(const std::string& path);

} // namespace bindft
