#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "bjle/bitcode.hpp"
#include "bjle/gaussian_sketch.hpp"

namespace bjle {

enum class XiDistribution { rademacher, gaussian };
enum class RowPolicy { first_m, seeded_random_subset };

// Correlation of x with the circulant symbol xi via FFT:
// y_i = sum_j xi_{(j-i) mod n} x_j. Both vectors must have the same
// power-of-two length.
std::vector<double> circulant_matvec(std::span<const double> xi,
                                     std::span<const double> x);

// Structured one-bit sketcher A = R_I Gamma_xi D_theta: inputs are padded
// with zeros to n_pad (the next power of two >= n), sign-flipped by theta,
// correlated with xi, and m rows are kept. Dual dithers tau, tau' on
// [-lambda, lambda]^m quantize the two code branches. Applying A costs
// O(n_pad log n_pad) regardless of m. Immutable after construction.
class CirculantSketcher {
public:
    static CirculantSketcher sample(std::uint64_t seed, std::size_t m, std::size_t n,
                                    double lambda,
                                    XiDistribution xi_dist = XiDistribution::rademacher,
                                    RowPolicy row_policy = RowPolicy::first_m,
                                    QuantizerConfig quantizer = {});

    // Explicit-component constructor for tests and experiments. xi and theta
    // must share a power-of-two length n_pad >= n, theta entries must be
    // +-1, row_set entries must be distinct and < n_pad, and both dithers
    // must have row_set.size() entries.
    static CirculantSketcher from_components(std::size_t n, std::vector<double> xi,
                                             std::vector<double> theta,
                                             std::vector<std::uint32_t> row_set,
                                             std::vector<double> dither,
                                             std::vector<double> dither2, double lambda,
                                             QuantizerConfig quantizer = {});

    // R_I Gamma_xi D_theta x, no dithering. x.size() must equal n; entries
    // must be finite.
    std::vector<double> apply_structured(std::span<const double> x) const;

    DualCode embed_dual(std::span<const double> x) const;

    std::size_t m() const { return m_; }
    std::size_t n() const { return n_; }
    std::size_t n_pad() const { return n_pad_; }
    double lambda() const { return lambda_; }
    std::uint64_t seed() const { return seed_; }
    int sign_zero() const { return quantizer_.sign_zero; }
    XiDistribution xi_distribution() const { return xi_dist_; }
    RowPolicy row_policy() const { return row_policy_; }

    std::span<const double> xi() const { return xi_; }
    std::span<const double> theta() const { return theta_; }
    std::span<const std::uint32_t> row_set() const { return row_set_; }
    std::span<const double> dither() const { return dither_; }
    std::span<const double> dither2() const { return dither2_; }

private:
    CirculantSketcher() = default;
    void finalize();  // validates components, caches the xi spectrum

    std::size_t m_ = 0;
    std::size_t n_ = 0;
    std::size_t n_pad_ = 0;
    double lambda_ = 0.0;
    std::uint64_t seed_ = 0;
    QuantizerConfig quantizer_;
    XiDistribution xi_dist_ = XiDistribution::rademacher;
    RowPolicy row_policy_ = RowPolicy::first_m;
    std::vector<double> xi_;
    std::vector<double> theta_;
    std::vector<std::uint32_t> row_set_;
    std::vector<double> dither_;
    std::vector<double> dither2_;
    std::vector<std::complex<double>> xi_spectrum_conj_;
};

const char* to_string(XiDistribution d);
const char* to_string(RowPolicy p);
XiDistribution xi_distribution_from_string(const std::string& s);
RowPolicy row_policy_from_string(const std::string& s);

}  // namespace bjle
