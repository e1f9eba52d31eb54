#include "bjle/dataset.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bjle/errors.hpp"

namespace bjle {

namespace {

constexpr char dataset_magic[4] = {'B', 'J', 'L', 'D'};
constexpr std::uint32_t dataset_version = 1;

void write_bytes(std::ostream& out, const void* data, std::size_t size) {
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
}

void write_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    write_bytes(out, b, 4);
}

void write_u64(std::ostream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    write_bytes(out, b, 8);
}

void write_f32(std::ostream& out, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    write_u32(out, bits);
}

void read_bytes(std::istream& in, void* data, std::size_t size, const char* what) {
    in.read(static_cast<char*>(data), static_cast<std::streamsize>(size));
    if (static_cast<std::size_t>(in.gcount()) != size) {
        throw format_error(std::string("truncated file while reading ") + what);
    }
}

std::uint32_t read_u32(std::istream& in, const char* what) {
    unsigned char b[4];
    read_bytes(in, b, 4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

std::uint64_t read_u64(std::istream& in, const char* what) {
    unsigned char b[8];
    read_bytes(in, b, 8, what);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

float read_f32(std::istream& in, const char* what) {
    const std::uint32_t bits = read_u32(in, what);
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
}

DatasetMatrix load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw format_error("cannot open " + path.string());

    std::vector<double> points;
    std::size_t n = 0;
    std::size_t count = 0;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t fields = 0;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t comma = line.find(',', pos);
            if (comma == std::string::npos) comma = line.size();
            std::string token = line.substr(pos, comma - pos);
            // strtod handles surrounding whitespace on the left only
            const char* begin = token.c_str();
            char* end = nullptr;
            const double value = std::strtod(begin, &end);
            while (end && *end == ' ') ++end;
            if (end == begin || (end && *end != '\0')) {
                throw format_error(path.string() + ":" + std::to_string(line_number) +
                                   ": non-numeric field '" + token + "'");
            }
            if (!std::isfinite(value)) {
                throw format_error(path.string() + ":" + std::to_string(line_number) +
                                   ": non-finite value '" + token + "'");
            }
            points.push_back(value);
            ++fields;
            pos = comma + 1;
        }
        if (n == 0) {
            n = fields;
        } else if (fields != n) {
            throw format_error(path.string() + ":" + std::to_string(line_number) +
                               ": ragged row (" + std::to_string(fields) +
                               " fields, expected " + std::to_string(n) + ")");
        }
        ++count;
    }
    if (count == 0) throw format_error(path.string() + ": empty dataset");
    return DatasetMatrix::from_points(n, std::move(points));
}

void save_csv(const DatasetMatrix& dataset, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw format_error("cannot open " + path.string() + " for writing");
    char buf[64];
    for (std::size_t i = 0; i < dataset.count; ++i) {
        const auto row = dataset.row(i);
        for (std::size_t j = 0; j < dataset.n; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", row[j]);
            out << (j ? "," : "") << buf;
        }
        out << '\n';
    }
    if (!out) throw format_error("write failed for " + path.string());
}

DatasetMatrix load_packed(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw format_error("cannot open " + path.string());
    char magic[4];
    read_bytes(in, magic, 4, "magic");
    if (std::memcmp(magic, dataset_magic, 4) != 0) {
        throw format_error(path.string() + ": bad magic, not a packed_f32 dataset");
    }
    const std::uint32_t version = read_u32(in, "version");
    if (version != dataset_version) {
        throw format_error(path.string() + ": unsupported format version " +
                           std::to_string(version));
    }
    const std::uint32_t n = read_u32(in, "dimension");
    const std::uint64_t count = read_u64(in, "count");
    if (n == 0) throw format_error(path.string() + ": zero dimension");
    if (count == 0) throw format_error(path.string() + ": empty dataset");
    std::vector<double> points;
    points.reserve(static_cast<std::size_t>(count) * n);
    for (std::uint64_t i = 0; i < count * static_cast<std::uint64_t>(n); ++i) {
        const float v = read_f32(in, "points");
        if (!std::isfinite(v)) {
            throw format_error(path.string() + ": non-finite value at element " +
                               std::to_string(i));
        }
        points.push_back(static_cast<double>(v));
    }
    return DatasetMatrix::from_points(n, std::move(points));
}

void save_packed(const DatasetMatrix& dataset, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw format_error("cannot open " + path.string() + " for writing");
    write_bytes(out, dataset_magic, 4);
    write_u32(out, dataset_version);
    write_u32(out, static_cast<std::uint32_t>(dataset.n));
    write_u64(out, dataset.count);
    for (double v : dataset.points) write_f32(out, static_cast<float>(v));
    if (!out) throw format_error("write failed for " + path.string());
}

}  // namespace

DatasetMatrix DatasetMatrix::from_points(std::size_t n, std::vector<double> points) {
    if (n == 0) throw std::invalid_argument("DatasetMatrix: dimension must be positive");
    if (points.empty() || points.size() % n != 0) {
        throw std::invalid_argument("DatasetMatrix: point data size " +
                                    std::to_string(points.size()) +
                                    " is not a positive multiple of n = " +
                                    std::to_string(n));
    }
    DatasetMatrix d;
    d.n = n;
    d.count = points.size() / n;
    d.points = std::move(points);
    for (double v : d.points) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("DatasetMatrix: non-finite entry");
        }
    }
    d.norms.resize(d.count);
    d.radius = 0.0;
    for (std::size_t i = 0; i < d.count; ++i) {
        double sq = 0.0;
        for (double v : d.row(i)) sq += v * v;
        d.norms[i] = std::sqrt(sq);
        d.radius = std::max(d.radius, d.norms[i]);
    }
    return d;
}

DatasetMatrix load_dataset(const std::filesystem::path& path, DataFormat format) {
    return format == DataFormat::csv ? load_csv(path) : load_packed(path);
}

void save_dataset(const DatasetMatrix& dataset, const std::filesystem::path& path,
                  DataFormat format) {
    if (format == DataFormat::csv) {
        save_csv(dataset, path);
    } else {
        save_packed(dataset, path);
    }
}

DataFormat data_format_from_string(const std::string& s) {
    if (s == "csv") return DataFormat::csv;
    if (s == "packed_f32") return DataFormat::packed_f32;
    throw std::invalid_argument("unknown data format: " + s);
}

const char* to_string(DataFormat f) {
    return f == DataFormat::csv ? "csv" : "packed_f32";
}

}  // namespace bjle
