#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace bjle {

// Packed sign vector in {-1,+1}^m. Bit j of word w covers sign index
// w*64 + j (little-endian bit order); a set bit encodes -1. Padding bits in
// the last word are always zero, so word-level kernels need no masking.
class BinaryCode {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    BinaryCode() = default;

    // Takes ownership of pre-packed words; validates word count and that
    // padding bits are clear.
    BinaryCode(std::size_t length, std::vector<Word> words);

    // signs must contain only -1 and +1.
    static BinaryCode pack(std::span<const int> signs);

    std::vector<int> unpack() const;

    std::size_t length() const { return length_; }
    std::span<const Word> words() const { return words_; }

    // true means the sign at index i is -1. i must be < length().
    bool bit(std::size_t i) const;
    int sign(std::size_t i) const { return bit(i) ? -1 : 1; }

    // Code with every sign flipped.
    BinaryCode complemented() const;

    friend bool operator==(const BinaryCode&, const BinaryCode&) = default;

    static std::size_t words_needed(std::size_t length) {
        return (length + word_bits - 1) / word_bits;
    }

private:
    std::size_t length_ = 0;
    std::vector<Word> words_;
};

// Number of disagreeing signs. Lengths must match.
std::size_t hamming(const BinaryCode& a, const BinaryCode& b);

// <a, b> over {-1,+1}^m, computed as m - 2*hamming(a, b). Lengths must match.
std::int64_t signed_dot(const BinaryCode& a, const BinaryCode& b);

// Sign-quantize a real vector: negative -> -1, positive -> +1, zero ->
// sign_zero (which must be -1 or +1).
BinaryCode quantize_signs(std::span<const double> values, int sign_zero = 1);

// Pair of equal-length codes produced by the two dither branches of a
// dual embedding.
struct DualCode {
    BinaryCode first;
    BinaryCode second;

    DualCode() = default;
    DualCode(BinaryCode f, BinaryCode s);

    std::size_t length() const { return first.length(); }

    friend bool operator==(const DualCode&, const DualCode&) = default;
};

}  // namespace bjle
