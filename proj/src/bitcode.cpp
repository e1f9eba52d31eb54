#include "bjle/bitcode.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace bjle {

namespace {

// Mask of valid bits in the last word, 0 if the last word is full.
std::uint64_t padding_mask(std::size_t length) {
    const std::size_t rem = length % BinaryCode::word_bits;
    return rem == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
}

}  // namespace

BinaryCode::BinaryCode(std::size_t length, std::vector<Word> words)
    : length_(length), words_(std::move(words)) {
    if (words_.size() != words_needed(length_)) {
        throw std::invalid_argument("BinaryCode: expected " +
                                    std::to_string(words_needed(length_)) +
                                    " words for length " + std::to_string(length_) +
                                    ", got " + std::to_string(words_.size()));
    }
    if (!words_.empty() && (words_.back() & ~padding_mask(length_)) != 0) {
        throw std::invalid_argument("BinaryCode: nonzero padding bits");
    }
}

BinaryCode BinaryCode::pack(std::span<const int> signs) {
    BinaryCode code;
    code.length_ = signs.size();
    code.words_.assign(words_needed(signs.size()), 0);
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] == -1) {
            code.words_[i / word_bits] |= std::uint64_t{1} << (i % word_bits);
        } else if (signs[i] != 1) {
            throw std::invalid_argument("BinaryCode::pack: sign at index " +
                                        std::to_string(i) + " is " +
                                        std::to_string(signs[i]) +
                                        ", expected -1 or +1");
        }
    }
    return code;
}

std::vector<int> BinaryCode::unpack() const {
    std::vector<int> signs(length_);
    for (std::size_t i = 0; i < length_; ++i) signs[i] = sign(i);
    return signs;
}

bool BinaryCode::bit(std::size_t i) const {
    if (i >= length_) {
        throw std::invalid_argument("BinaryCode::bit: index " + std::to_string(i) +
                                    " out of range for length " +
                                    std::to_string(length_));
    }
    return (words_[i / word_bits] >> (i % word_bits)) & 1u;
}

BinaryCode BinaryCode::complemented() const {
    BinaryCode out;
    out.length_ = length_;
    out.words_.resize(words_.size());
    for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = ~words_[w];
    if (!out.words_.empty()) out.words_.back() &= padding_mask(length_);
    return out;
}

std::size_t hamming(const BinaryCode& a, const BinaryCode& b) {
    if (a.length() != b.length()) {
        throw std::invalid_argument("hamming: length mismatch (" +
                                    std::to_string(a.length()) + " vs " +
                                    std::to_string(b.length()) + ")");
    }
    const auto wa = a.words();
    const auto wb = b.words();
    std::size_t count = 0;
    for (std::size_t w = 0; w < wa.size(); ++w) {
        count += static_cast<std::size_t>(std::popcount(wa[w] ^ wb[w]));
    }
    return count;
}

std::int64_t signed_dot(const BinaryCode& a, const BinaryCode& b) {
    const std::size_t dist = hamming(a, b);
    return static_cast<std::int64_t>(a.length()) - 2 * static_cast<std::int64_t>(dist);
}

BinaryCode quantize_signs(std::span<const double> values, int sign_zero) {
    if (sign_zero != 1 && sign_zero != -1) {
        throw std::invalid_argument("quantize_signs: sign_zero must be -1 or +1");
    }
    BinaryCode code;
    std::vector<BinaryCode::Word> words(BinaryCode::words_needed(values.size()), 0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        const bool negative = v < 0.0 || (v == 0.0 && sign_zero == -1);
        if (negative) {
            words[i / BinaryCode::word_bits] |= std::uint64_t{1}
                                                << (i % BinaryCode::word_bits);
        }
    }
    return BinaryCode(values.size(), std::move(words));
}

DualCode::DualCode(BinaryCode f, BinaryCode s)
    : first(std::move(f)), second(std::move(s)) {
    if (first.length() != second.length()) {
        throw std::invalid_argument("DualCode: branch lengths differ (" +
                                    std::to_string(first.length()) + " vs " +
                                    std::to_string(second.length()) + ")");
    }
}

}  // namespace bjle
