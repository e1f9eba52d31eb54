#include "bjle/gaussian_sketch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bjle/rng.hpp"

namespace bjle {

namespace {

void check_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("lambda must be finite and positive");
    }
}

void check_finite(std::span<const double> x, const char* what) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i])) {
            throw std::invalid_argument(std::string(what) + ": non-finite entry at index " +
                                        std::to_string(i));
        }
    }
}

}  // namespace

double collision_probability(double a, double b, double lambda) {
    check_lambda(lambda);
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw std::invalid_argument("collision_probability: non-finite input");
    }
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    const double overlap = std::min(hi, lambda) - std::max(lo, -lambda);
    return std::max(0.0, overlap) / (2.0 * lambda);
}

double bias_bound(double lambda, double r) {
    check_lambda(lambda);
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw std::invalid_argument("bias_bound: r must be finite and nonnegative");
    }
    if (r == 0.0) return 0.0;
    return 2.0 * r * std::exp(-lambda * lambda / (2.0 * r * r));
}

double default_lambda(double radius, double delta) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw std::invalid_argument("default_lambda: radius must be finite and positive");
    }
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw std::invalid_argument("default_lambda: delta must be finite and positive");
    }
    return radius * std::sqrt(2.0 * std::log(std::numbers::e * radius / delta));
}

GaussianSketcher GaussianSketcher::sample(std::uint64_t seed, std::size_t m,
                                          std::size_t n, double lambda,
                                          QuantizerConfig quantizer) {
    if (m == 0) throw std::invalid_argument("GaussianSketcher: m must be positive");
    if (n == 0) throw std::invalid_argument("GaussianSketcher: n must be positive");
    check_lambda(lambda);
    if (quantizer.sign_zero != 1 && quantizer.sign_zero != -1) {
        throw std::invalid_argument("GaussianSketcher: sign_zero must be -1 or +1");
    }

    GaussianSketcher s;
    s.m_ = m;
    s.n_ = n;
    s.lambda_ = lambda;
    s.seed_ = seed;
    s.quantizer_ = quantizer;

    // One substream per row and per dither entry: growing m appends draws
    // without changing anything already sampled.
    s.rows_.resize(m * n);
    for (std::size_t i = 0; i < m; ++i) {
        Xoshiro256pp gen = substream(seed, Stream::rows, i);
        for (std::size_t j = 0; j < n; ++j) s.rows_[i * n + j] = gen.gaussian();
    }
    s.dither_.resize(m);
    s.dither2_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        s.dither_[i] = substream(seed, Stream::dither, i).uniform_symmetric(lambda);
        s.dither2_[i] = substream(seed, Stream::dither2, i).uniform_symmetric(lambda);
    }
    return s;
}

std::vector<double> GaussianSketcher::project(std::span<const double> x) const {
    if (x.size() != n_) {
        throw std::invalid_argument("GaussianSketcher: input has dimension " +
                                    std::to_string(x.size()) + ", expected " +
                                    std::to_string(n_));
    }
    check_finite(x, "GaussianSketcher");
    std::vector<double> dots(m_);
    for (std::size_t i = 0; i < m_; ++i) {
        const double* row = rows_.data() + i * n_;
        double acc = 0.0;
        for (std::size_t j = 0; j < n_; ++j) acc += row[j] * x[j];
        dots[i] = acc;
    }
    return dots;
}

BinaryCode GaussianSketcher::embed(std::span<const double> x) const {
    std::vector<double> dots = project(x);
    for (std::size_t i = 0; i < m_; ++i) dots[i] += dither_[i];
    return quantize_signs(dots, quantizer_.sign_zero);
}

DualCode GaussianSketcher::embed_dual(std::span<const double> x) const {
    const std::vector<double> dots = project(x);
    std::vector<double> shifted(m_);
    for (std::size_t i = 0; i < m_; ++i) shifted[i] = dots[i] + dither_[i];
    BinaryCode first = quantize_signs(shifted, quantizer_.sign_zero);
    for (std::size_t i = 0; i < m_; ++i) shifted[i] = dots[i] + dither2_[i];
    BinaryCode second = quantize_signs(shifted, quantizer_.sign_zero);
    return DualCode(std::move(first), std::move(second));
}

std::span<const double> GaussianSketcher::row(std::size_t i) const {
    if (i >= m_) {
        throw std::invalid_argument("GaussianSketcher: row index out of range");
    }
    return {rows_.data() + i * n_, n_};
}

}  // namespace bjle
