#pragma once

#include <stdexcept>
#include <string>

namespace bindft {

/// Requested band index is outside [1, (N-1)/2] (or outside what the data carry).
struct BandLimitError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Input data violate a structural consistency requirement (e.g. a nominally
/// real reconstruction with a large imaginary residue).
struct CorruptDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two-species data that do not map onto an integral popcount.
struct SpeciesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An exhaustive enumeration was requested whose size exceeds the configured cap.
struct EnumerationCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Vector length whose factor structure is outside the supported theory
/// (three or more prime divisors counted with multiplicity).
struct UnsupportedLengthError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Descent could not certify a local minimum at the configured precision.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace bindft
