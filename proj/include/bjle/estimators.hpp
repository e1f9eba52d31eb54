#pragma once

#include <cstdint>
#include <span>

#include "bjle/bitcode.hpp"

namespace bjle {

struct EstimatorParams {
    double lambda = 0.0;
    std::size_t m = 0;
};

// Euclidean distance from single-branch codes:
// sqrt(2 pi) * lambda / m * hamming(a, b).
double estimate_distance(const BinaryCode& a, const BinaryCode& b,
                         const EstimatorParams& params);

// Bilinear form pairing opposite branches of two dual codes:
// <u1, v2> + <u2, v1> over signs. Exact integer in [-2m, 2m].
std::int64_t sm_bilinear(const DualCode& u, const DualCode& v);

// Inner product from dual codes: lambda^2 / (2m) * sm_bilinear(u, v).
double estimate_inner_product(const DualCode& u, const DualCode& v,
                              const EstimatorParams& params);

// Squared distance by polarization:
// lambda^2 / (2m) * (sm_bilinear(u,u) + sm_bilinear(v,v) - 2 sm_bilinear(u,v)),
// which equals lambda^2 / m * <u1 - v1, u2 - v2> over signs.
double estimate_sq_distance(const DualCode& u, const DualCode& v,
                            const EstimatorParams& params);

// Returns clamp(a) * clamp(b) with clamp(t) = t for |t| <= lambda and
// lambda * sign(t) otherwise. For independent dithers s, s' uniform on
// [-lambda, lambda], E[sign(a + s) sign(b + s')] equals this value divided
// by lambda^2; the conditional mean of estimate_inner_product given the
// projections is therefore the average of expected_product over rows.
double expected_product(double a, double b, double lambda);

// Exact conditional expectation of estimate_distance given the projection
// values: sqrt(2 pi) * lambda / m * sum_i collision_probability(dots_x[i],
// dots_y[i], lambda).
double expected_distance_given_rows(std::span<const double> dots_x,
                                    std::span<const double> dots_y, double lambda);

}  // namespace bjle
