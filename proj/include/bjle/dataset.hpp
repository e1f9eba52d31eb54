#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "bjle/points.hpp"

namespace bjle {

enum class DataFormat { csv, packed_f32 };

struct DatasetMatrix {
    std::size_t n = 0;
    std::size_t count = 0;
    std::vector<double> points;  // row-major count x n
    std::vector<double> norms;
    double radius = 0.0;

    std::span<const double> row(std::size_t i) const {
        return {points.data() + i * n, n};
    }
    PointsView view() const { return {points, count, n}; }

    // Takes row-major data, computes norms and radius, validates finiteness.
    static DatasetMatrix from_points(std::size_t n, std::vector<double> points);
};

// CSV: comma-separated decimal floats, one point per line, no header.
// packed_f32: magic "BJLD", version u32, n u32, count u64, then count*n
// little-endian 32-bit floats. Parse failures raise format_error with the
// offending line (CSV) or a description of the truncation.
DatasetMatrix load_dataset(const std::filesystem::path& path, DataFormat format);
void save_dataset(const DatasetMatrix& dataset, const std::filesystem::path& path,
                  DataFormat format);

DataFormat data_format_from_string(const std::string& s);
const char* to_string(DataFormat f);

}  // namespace bjle
