#pragma once

#include "bindft/binary_vector.hpp"

namespace bindft::models {

/// Bundled demonstration vectors used by the examples and the test suite.
/// n31 has prime length; n33 contains a full/empty 3-gon pair (two false
/// solutions at band 1); n35 has composite length but no polygon pairs;
/// n199 is a frozen seeded draw for the large-scale optimizer demo.
const BinaryVector& n31();
const BinaryVector& n33();
const BinaryVector& n35();
const BinaryVector& n199();

} // namespace bindft::models
