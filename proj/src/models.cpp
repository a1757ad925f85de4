#include "bindft/models.hpp"

namespace bindft::models {

const BinaryVector& n31() {
    static const BinaryVector x =
        BinaryVector::from_string("1001011000011101101100011010100");
    return x;
}

const BinaryVector& n33() {
    static const BinaryVector x =
        BinaryVector::from_string("100100110001100111001010100110110");
    return x;
}

const BinaryVector& n35() {
    static const BinaryVector x =
        BinaryVector::from_string("10010110000111101100011010100100011");
    return x;
}

const BinaryVector& n199() {
    // frozen seeded pulse draw, popcount 90; the roughened band-29 guess sits
    // at swap distance 8 from this vector
    static const BinaryVector x = BinaryVector::from_string(
        "0011111000000000011101111111000000000111111000011100001111100000111111111100111111"
        "1001110000000110000000010000010000011111100011000010000111011111100111000001110000"
        "11000000000000000000111011101011110");
    return x;
}

} // namespace bindft::models
