#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

namespace bjle {

// Non-owning row-major view of `count` points in R^dim.
struct PointsView {
    std::span<const double> data;
    std::size_t count = 0;
    std::size_t dim = 0;

    std::span<const double> row(std::size_t i) const {
        return data.subspan(i * dim, dim);
    }
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        acc += d * d;
    }
    return acc;
}

inline double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_distance(a, b));
}

}  // namespace bjle
