#include "bjle/estimators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bjle/gaussian_sketch.hpp"

namespace bjle {

namespace {

const double sqrt_2pi = std::sqrt(2.0 * std::numbers::pi);

void check_params(const EstimatorParams& params, std::size_t code_length) {
    if (!(params.lambda > 0.0) || !std::isfinite(params.lambda)) {
        throw std::invalid_argument("estimator: lambda must be finite and positive");
    }
    if (params.m == 0) {
        throw std::invalid_argument("estimator: m must be positive");
    }
    if (params.m != code_length) {
        throw std::invalid_argument("estimator: code length " +
                                    std::to_string(code_length) +
                                    " does not match m = " + std::to_string(params.m));
    }
}

double clamp_to(double t, double lambda) {
    if (t > lambda) return lambda;
    if (t < -lambda) return -lambda;
    return t;
}

}  // namespace

double estimate_distance(const BinaryCode& a, const BinaryCode& b,
                         const EstimatorParams& params) {
    if (a.length() != b.length()) {
        throw std::invalid_argument("estimate_distance: code length mismatch");
    }
    check_params(params, a.length());
    const std::size_t dist = hamming(a, b);
    return sqrt_2pi * params.lambda / static_cast<double>(params.m) *
           static_cast<double>(dist);
}

std::int64_t sm_bilinear(const DualCode& u, const DualCode& v) {
    if (u.length() != v.length()) {
        throw std::invalid_argument("sm_bilinear: code length mismatch");
    }
    return signed_dot(u.first, v.second) + signed_dot(u.second, v.first);
}

double estimate_inner_product(const DualCode& u, const DualCode& v,
                              const EstimatorParams& params) {
    if (u.length() != v.length()) {
        throw std::invalid_argument("estimate_inner_product: code length mismatch");
    }
    check_params(params, u.length());
    const std::int64_t s = sm_bilinear(u, v);
    return params.lambda * params.lambda / (2.0 * static_cast<double>(params.m)) *
           static_cast<double>(s);
}

double estimate_sq_distance(const DualCode& u, const DualCode& v,
                            const EstimatorParams& params) {
    if (u.length() != v.length()) {
        throw std::invalid_argument("estimate_sq_distance: code length mismatch");
    }
    check_params(params, u.length());
    const std::int64_t s = sm_bilinear(u, u) + sm_bilinear(v, v) - 2 * sm_bilinear(u, v);
    return params.lambda * params.lambda / (2.0 * static_cast<double>(params.m)) *
           static_cast<double>(s);
}

double expected_product(double a, double b, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("expected_product: lambda must be finite and positive");
    }
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw std::invalid_argument("expected_product: non-finite input");
    }
    return clamp_to(a, lambda) * clamp_to(b, lambda);
}

double expected_distance_given_rows(std::span<const double> dots_x,
                                    std::span<const double> dots_y, double lambda) {
    if (dots_x.size() != dots_y.size()) {
        throw std::invalid_argument("expected_distance_given_rows: length mismatch");
    }
    if (dots_x.empty()) {
        throw std::invalid_argument("expected_distance_given_rows: empty projections");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < dots_x.size(); ++i) {
        total += collision_probability(dots_x[i], dots_y[i], lambda);
    }
    return sqrt_2pi * lambda / static_cast<double>(dots_x.size()) * total;
}

}  // namespace bjle
