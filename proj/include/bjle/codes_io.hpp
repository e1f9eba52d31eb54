#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bjle/bitcode.hpp"
#include "bjle/circulant_sketch.hpp"
#include "bjle/gaussian_sketch.hpp"

#include <json.hpp>

namespace bjle {

inline constexpr std::uint32_t codes_format_version = 1;

// Everything needed to rebuild the sketcher that produced a code file
// bit-for-bit: kind, seed, shape, dither level, quantizer convention and the
// generator identifier. `dual` marks files whose codes come in (first,
// second) branch pairs, stored adjacently.
struct SketchManifest {
    std::string kind;  // "gaussian" | "circulant"
    std::uint64_t seed = 0;
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t n_pad = 0;            // circulant only, 0 otherwise
    double lambda = 0.0;
    std::string xi_distribution;      // circulant only, "" otherwise
    std::string row_policy;           // circulant only, "" otherwise
    int sign_zero = 1;
    std::size_t word_width = BinaryCode::word_bits;
    std::uint32_t format_version = codes_format_version;
    std::string rng;                  // generator identifier
    bool dual = false;

    static SketchManifest for_gaussian(const GaussianSketcher& sketcher, bool dual);
    static SketchManifest for_circulant(const CirculantSketcher& sketcher);

    nlohmann::json to_json() const;
    static SketchManifest from_json(const nlohmann::json& j);

    friend bool operator==(const SketchManifest&, const SketchManifest&) = default;
};

// Code file layout: magic "BJLE", format_version u32, manifest length u32,
// manifest JSON bytes (UTF-8), FNV-1a 64-bit hash of those bytes, code count
// u64, then each code as ceil(m / word_width) little-endian 64-bit words.
void save_codes(std::span<const BinaryCode> codes, const SketchManifest& manifest,
                const std::filesystem::path& path);
std::pair<std::vector<BinaryCode>, SketchManifest> load_codes(
    const std::filesystem::path& path);

// Dual codes are stored flattened as (first, second) adjacent entries.
std::vector<BinaryCode> flatten_dual(std::span<const DualCode> codes);
std::vector<DualCode> unflatten_dual(std::span<const BinaryCode> codes);

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes);

}  // namespace bjle
