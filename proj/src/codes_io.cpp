#include "bjle/codes_io.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

#include "bjle/errors.hpp"
#include "bjle/rng.hpp"

namespace bjle {

namespace {

constexpr char codes_magic[4] = {'B', 'J', 'L', 'E'};

void write_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 4);
}

void write_u64(std::ostream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

void read_exact(std::istream& in, void* data, std::size_t size, const char* what) {
    in.read(static_cast<char*>(data), static_cast<std::streamsize>(size));
    if (static_cast<std::size_t>(in.gcount()) != size) {
        throw format_error(std::string("truncated code file while reading ") + what);
    }
}

std::uint32_t read_u32(std::istream& in, const char* what) {
    unsigned char b[4];
    read_exact(in, b, 4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

std::uint64_t read_u64(std::istream& in, const char* what) {
    unsigned char b[8];
    read_exact(in, b, 8, what);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

}  // namespace

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (std::uint8_t b : bytes) {
        hash ^= b;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

SketchManifest SketchManifest::for_gaussian(const GaussianSketcher& sketcher,
                                            bool dual) {
    SketchManifest m;
    m.kind = "gaussian";
    m.seed = sketcher.seed();
    m.m = sketcher.m();
    m.n = sketcher.n();
    m.lambda = sketcher.lambda();
    m.sign_zero = sketcher.sign_zero();
    m.rng = rng_identifier;
    m.dual = dual;
    return m;
}

SketchManifest SketchManifest::for_circulant(const CirculantSketcher& sketcher) {
    SketchManifest m;
    m.kind = "circulant";
    m.seed = sketcher.seed();
    m.m = sketcher.m();
    m.n = sketcher.n();
    m.n_pad = sketcher.n_pad();
    m.lambda = sketcher.lambda();
    m.xi_distribution = to_string(sketcher.xi_distribution());
    m.row_policy = to_string(sketcher.row_policy());
    m.sign_zero = sketcher.sign_zero();
    m.rng = rng_identifier;
    m.dual = true;
    return m;
}

nlohmann::json SketchManifest::to_json() const {
    nlohmann::json j{
        {"kind", kind},
        {"seed", seed},
        {"m", m},
        {"n", n},
        {"lambda", lambda},
        {"sign_zero", sign_zero},
        {"word_width", word_width},
        {"format_version", format_version},
        {"rng", rng},
        {"dual", dual},
    };
    if (kind == "circulant") {
        j["n_pad"] = n_pad;
        j["xi_distribution"] = xi_distribution;
        j["row_policy"] = row_policy;
    }
    return j;
}

SketchManifest SketchManifest::from_json(const nlohmann::json& j) {
    SketchManifest m;
    try {
        m.kind = j.at("kind").get<std::string>();
        m.seed = j.at("seed").get<std::uint64_t>();
        m.m = j.at("m").get<std::size_t>();
        m.n = j.at("n").get<std::size_t>();
        m.lambda = j.at("lambda").get<double>();
        m.sign_zero = j.at("sign_zero").get<int>();
        m.word_width = j.at("word_width").get<std::size_t>();
        m.format_version = j.at("format_version").get<std::uint32_t>();
        m.rng = j.at("rng").get<std::string>();
        m.dual = j.at("dual").get<bool>();
        if (m.kind == "circulant") {
            m.n_pad = j.at("n_pad").get<std::size_t>();
            m.xi_distribution = j.at("xi_distribution").get<std::string>();
            m.row_policy = j.at("row_policy").get<std::string>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("invalid manifest: ") + e.what());
    }
    if (m.kind != "gaussian" && m.kind != "circulant") {
        throw format_error("invalid manifest: unknown kind '" + m.kind + "'");
    }
    if (m.word_width != BinaryCode::word_bits) {
        throw format_error("invalid manifest: unsupported word width " +
                           std::to_string(m.word_width));
    }
    return m;
}

void save_codes(std::span<const BinaryCode> codes, const SketchManifest& manifest,
                const std::filesystem::path& path) {
    for (const BinaryCode& code : codes) {
        if (code.length() != manifest.m) {
            throw std::invalid_argument("save_codes: code length " +
                                        std::to_string(code.length()) +
                                        " does not match manifest m = " +
                                        std::to_string(manifest.m));
        }
    }
    if (manifest.dual && codes.size() % 2 != 0) {
        throw std::invalid_argument("save_codes: dual manifest with odd code count");
    }

    std::ofstream out(path, std::ios::binary);
    if (!out) throw format_error("cannot open " + path.string() + " for writing");

    const std::string manifest_text = manifest.to_json().dump();
    const auto* manifest_bytes =
        reinterpret_cast<const std::uint8_t*>(manifest_text.data());

    out.write(codes_magic, 4);
    write_u32(out, manifest.format_version);
    write_u32(out, static_cast<std::uint32_t>(manifest_text.size()));
    out.write(manifest_text.data(),
              static_cast<std::streamsize>(manifest_text.size()));
    write_u64(out, fnv1a64({manifest_bytes, manifest_text.size()}));
    write_u64(out, codes.size());
    for (const BinaryCode& code : codes) {
        for (BinaryCode::Word w : code.words()) write_u64(out, w);
    }
    if (!out) throw format_error("write failed for " + path.string());
}

std::pair<std::vector<BinaryCode>, SketchManifest> load_codes(
    const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw format_error("cannot open " + path.string());

    char magic[4];
    read_exact(in, magic, 4, "magic");
    if (std::memcmp(magic, codes_magic, 4) != 0) {
        throw format_error(path.string() + ": bad magic, not a code file");
    }
    const std::uint32_t version = read_u32(in, "format version");
    if (version != codes_format_version) {
        throw format_error(path.string() + ": unsupported format version " +
                           std::to_string(version));
    }
    const std::uint32_t manifest_len = read_u32(in, "manifest length");
    std::string manifest_text(manifest_len, '\0');
    read_exact(in, manifest_text.data(), manifest_len, "manifest");
    const std::uint64_t stored_hash = read_u64(in, "manifest hash");
    const auto* manifest_bytes =
        reinterpret_cast<const std::uint8_t*>(manifest_text.data());
    if (fnv1a64({manifest_bytes, manifest_text.size()}) != stored_hash) {
        throw format_error(path.string() + ": manifest hash mismatch");
    }
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(manifest_text);
    } catch (const nlohmann::json::exception& e) {
        throw format_error(path.string() + ": unparseable manifest: " + e.what());
    }
    SketchManifest manifest = SketchManifest::from_json(parsed);
    if (manifest.format_version != version) {
        throw format_error(path.string() + ": manifest/header version mismatch");
    }

    const std::uint64_t count = read_u64(in, "code count");
    const std::size_t words_per_code = BinaryCode::words_needed(manifest.m);
    std::vector<BinaryCode> codes;
    codes.reserve(count);
    for (std::uint64_t c = 0; c < count; ++c) {
        std::vector<BinaryCode::Word> words(words_per_code);
        for (std::size_t w = 0; w < words_per_code; ++w) {
            words[w] = read_u64(in, "code words");
        }
        try {
            codes.emplace_back(manifest.m, std::move(words));
        } catch (const std::invalid_argument& e) {
            throw format_error(path.string() + ": corrupt code " + std::to_string(c) +
                               ": " + e.what());
        }
    }
    char extra;
    if (in.read(&extra, 1), in.gcount() != 0) {
        throw format_error(path.string() + ": trailing bytes after code data");
    }
    return {std::move(codes), std::move(manifest)};
}

std::vector<BinaryCode> flatten_dual(std::span<const DualCode> codes) {
    std::vector<BinaryCode> flat;
    flat.reserve(codes.size() * 2);
    for (const DualCode& c : codes) {
        flat.push_back(c.first);
        flat.push_back(c.second);
    }
    return flat;
}

std::vector<DualCode> unflatten_dual(std::span<const BinaryCode> codes) {
    if (codes.size() % 2 != 0) {
        throw std::invalid_argument("unflatten_dual: odd number of codes");
    }
    std::vector<DualCode> dual;
    dual.reserve(codes.size() / 2);
    for (std::size_t i = 0; i < codes.size(); i += 2) {
        dual.emplace_back(codes[i], codes[i + 1]);
    }
    return dual;
}

}  // namespace bjle
