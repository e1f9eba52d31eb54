#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bjle/bitcode.hpp"

namespace bjle {

struct QuantizerConfig {
    int sign_zero = 1;  // sign assigned to exact zeros, -1 or +1
};

// Probability that a single dithered sign comparison separates projection
// values a and b when the dither is uniform on [-lambda, lambda]:
// P(sign(a + t) != sign(b + t)) = |[min(a,b), max(a,b)] ∩ [-lambda, lambda]| / (2 lambda).
// Equals |a - b| / (2 lambda) whenever |a|, |b| <= lambda.
double collision_probability(double a, double b, double lambda);

// Upper bound on the bias of the dithered distance estimator at true
// projected scale r: 2 r exp(-lambda^2 / (2 r^2)). Decreasing in lambda,
// increasing in r.
double bias_bound(double lambda, double r);

// Dither scale that keeps quantization bias below the delta target for data
// of radius R: R * sqrt(2 * log(e * R / delta)).
double default_lambda(double radius, double delta);

// Dense Gaussian one-bit sketcher: row-major m x n standard Gaussian matrix
// A and dithers tau, tau' uniform on [-lambda, lambda]^m, all drawn from
// independent substreams of one seed. embed(x) packs sign(Ax + tau);
// embed_dual(x) additionally packs the tau' branch. Immutable after
// construction; all query methods are const and allocation-free apart from
// their return values.
class GaussianSketcher {
public:
    static GaussianSketcher sample(std::uint64_t seed, std::size_t m, std::size_t n,
                                   double lambda, QuantizerConfig quantizer = {});

    // Ax without dithering. x.size() must equal n; entries must be finite.
    std::vector<double> project(std::span<const double> x) const;

    BinaryCode embed(std::span<const double> x) const;
    DualCode embed_dual(std::span<const double> x) const;

    std::size_t m() const { return m_; }
    std::size_t n() const { return n_; }
    double lambda() const { return lambda_; }
    std::uint64_t seed() const { return seed_; }
    int sign_zero() const { return quantizer_.sign_zero; }

    // Row i of A, length n.
    std::span<const double> row(std::size_t i) const;
    std::span<const double> dither() const { return dither_; }
    std::span<const double> dither2() const { return dither2_; }

private:
    GaussianSketcher() = default;

    std::size_t m_ = 0;
    std::size_t n_ = 0;
    double lambda_ = 0.0;
    std::uint64_t seed_ = 0;
    QuantizerConfig quantizer_;
    std::vector<double> rows_;  // m * n, row-major
    std::vector<double> dither_;
    std::vector<double> dither2_;
};

}  // namespace bjle
