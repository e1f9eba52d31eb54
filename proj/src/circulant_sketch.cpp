#include "bjle/circulant_sketch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "bjle/fft.hpp"
#include "bjle/rng.hpp"

namespace bjle {

namespace {

void check_finite_input(std::span<const double> x, std::size_t n) {
    if (x.size() != n) {
        throw std::invalid_argument("CirculantSketcher: input has dimension " +
                                    std::to_string(x.size()) + ", expected " +
                                    std::to_string(n));
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i])) {
            throw std::invalid_argument(
                "CirculantSketcher: non-finite entry at index " + std::to_string(i));
        }
    }
}

double rademacher(Xoshiro256pp& gen) { return (gen.next() >> 63) ? -1.0 : 1.0; }

}  // namespace

std::vector<double> circulant_matvec(std::span<const double> xi,
                                     std::span<const double> x) {
    if (xi.size() != x.size()) {
        throw std::invalid_argument("circulant_matvec: length mismatch (" +
                                    std::to_string(xi.size()) + " vs " +
                                    std::to_string(x.size()) + ")");
    }
    if (xi.empty() || !fft::is_power_of_two(xi.size())) {
        throw std::invalid_argument("circulant_matvec: length must be a power of two");
    }
    const auto spec_xi = fft::forward_real(xi);
    auto spec_x = fft::forward_real(x);
    const double inv_n = 1.0 / static_cast<double>(x.size());
    for (std::size_t f = 0; f < spec_x.size(); ++f) {
        spec_x[f] *= std::conj(spec_xi[f]) * inv_n;
    }
    std::vector<double> y(x.size());
    fft::inverse_real_unnormalized(spec_x, y);
    return y;
}

CirculantSketcher CirculantSketcher::sample(std::uint64_t seed, std::size_t m,
                                            std::size_t n, double lambda,
                                            XiDistribution xi_dist,
                                            RowPolicy row_policy,
                                            QuantizerConfig quantizer) {
    if (m == 0) throw std::invalid_argument("CirculantSketcher: m must be positive");
    if (n == 0) throw std::invalid_argument("CirculantSketcher: n must be positive");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("CirculantSketcher: lambda must be finite and positive");
    }
    if (quantizer.sign_zero != 1 && quantizer.sign_zero != -1) {
        throw std::invalid_argument("CirculantSketcher: sign_zero must be -1 or +1");
    }
    const std::size_t n_pad = fft::next_power_of_two(n);
    if (m > n_pad) {
        throw std::invalid_argument("CirculantSketcher: m = " + std::to_string(m) +
                                    " exceeds padded dimension " + std::to_string(n_pad));
    }

    CirculantSketcher s;
    s.m_ = m;
    s.n_ = n;
    s.n_pad_ = n_pad;
    s.lambda_ = lambda;
    s.seed_ = seed;
    s.quantizer_ = quantizer;
    s.xi_dist_ = xi_dist;
    s.row_policy_ = row_policy;

    Xoshiro256pp xi_gen = substream(seed, Stream::xi);
    s.xi_.resize(n_pad);
    for (auto& v : s.xi_) {
        v = xi_dist == XiDistribution::rademacher ? rademacher(xi_gen) : xi_gen.gaussian();
    }

    Xoshiro256pp theta_gen = substream(seed, Stream::theta);
    s.theta_.resize(n_pad);
    for (auto& v : s.theta_) v = rademacher(theta_gen);

    s.row_set_.resize(m);
    if (row_policy == RowPolicy::first_m) {
        std::iota(s.row_set_.begin(), s.row_set_.end(), 0u);
    } else {
        // Partial Fisher-Yates over [0, n_pad), then sorted for a canonical order.
        Xoshiro256pp row_gen = substream(seed, Stream::row_set);
        std::vector<std::uint32_t> perm(n_pad);
        std::iota(perm.begin(), perm.end(), 0u);
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(
                                          row_gen.next() % (n_pad - i));
            std::swap(perm[i], perm[j]);
        }
        std::copy(perm.begin(), perm.begin() + m, s.row_set_.begin());
        std::sort(s.row_set_.begin(), s.row_set_.end());
    }

    s.dither_.resize(m);
    s.dither2_.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        s.dither_[i] = substream(seed, Stream::dither, i).uniform_symmetric(lambda);
        s.dither2_[i] = substream(seed, Stream::dither2, i).uniform_symmetric(lambda);
    }

    s.finalize();
    return s;
}

CirculantSketcher CirculantSketcher::from_components(
    std::size_t n, std::vector<double> xi, std::vector<double> theta,
    std::vector<std::uint32_t> row_set, std::vector<double> dither,
    std::vector<double> dither2, double lambda, QuantizerConfig quantizer) {
    if (quantizer.sign_zero != 1 && quantizer.sign_zero != -1) {
        throw std::invalid_argument("CirculantSketcher: sign_zero must be -1 or +1");
    }
    CirculantSketcher s;
    s.m_ = row_set.size();
    s.n_ = n;
    s.n_pad_ = xi.size();
    s.lambda_ = lambda;
    s.quantizer_ = quantizer;
    s.xi_ = std::move(xi);
    s.theta_ = std::move(theta);
    s.row_set_ = std::move(row_set);
    s.dither_ = std::move(dither);
    s.dither2_ = std::move(dither2);
    s.finalize();
    return s;
}

void CirculantSketcher::finalize() {
    if (n_ == 0) throw std::invalid_argument("CirculantSketcher: n must be positive");
    if (m_ == 0) throw std::invalid_argument("CirculantSketcher: m must be positive");
    if (!(lambda_ > 0.0) || !std::isfinite(lambda_)) {
        throw std::invalid_argument("CirculantSketcher: lambda must be finite and positive");
    }
    if (!fft::is_power_of_two(n_pad_) || n_pad_ < n_) {
        throw std::invalid_argument(
            "CirculantSketcher: padded dimension must be a power of two >= n");
    }
    if (theta_.size() != n_pad_) {
        throw std::invalid_argument("CirculantSketcher: theta length mismatch");
    }
    for (double t : theta_) {
        if (t != 1.0 && t != -1.0) {
            throw std::invalid_argument("CirculantSketcher: theta entries must be +-1");
        }
    }
    if (m_ > n_pad_) {
        throw std::invalid_argument("CirculantSketcher: m exceeds padded dimension");
    }
    std::vector<bool> seen(n_pad_, false);
    for (std::uint32_t r : row_set_) {
        if (r >= n_pad_) {
            throw std::invalid_argument("CirculantSketcher: row index out of range");
        }
        if (seen[r]) {
            throw std::invalid_argument("CirculantSketcher: duplicate row index");
        }
        seen[r] = true;
    }
    if (dither_.size() != m_ || dither2_.size() != m_) {
        throw std::invalid_argument("CirculantSketcher: dither length mismatch");
    }
    for (const auto* v : {&dither_, &dither2_}) {
        for (double d : *v) {
            if (!std::isfinite(d) || std::abs(d) > lambda_) {
                throw std::invalid_argument(
                    "CirculantSketcher: dither entries must lie in [-lambda, lambda]");
            }
        }
    }

    // Folding the inverse-transform normalization into the cached spectrum
    // saves a scaling pass over n_pad on every apply.
    const auto spec = fft::forward_real(xi_);
    xi_spectrum_conj_.resize(spec.size());
    const double inv_n = 1.0 / static_cast<double>(n_pad_);
    for (std::size_t f = 0; f < spec.size(); ++f) {
        xi_spectrum_conj_[f] = std::conj(spec[f]) * inv_n;
    }
}

std::vector<double> CirculantSketcher::apply_structured(std::span<const double> x) const {
    check_finite_input(x, n_);
    // Large transforms would pay mmap page faults on every call if these
    // buffers were reallocated; per-thread reuse keeps the hot path
    // allocation-free (beyond the m-sized result) and the method const and
    // thread safe.
    thread_local std::vector<double> padded;
    thread_local std::vector<std::complex<double>> spec_x;
    thread_local std::vector<double> full;
    padded.resize(n_pad_);
    for (std::size_t j = 0; j < n_; ++j) padded[j] = theta_[j] * x[j];
    std::fill(padded.begin() + static_cast<std::ptrdiff_t>(n_), padded.end(), 0.0);
    fft::forward_real(padded, spec_x);
    for (std::size_t f = 0; f < spec_x.size(); ++f) spec_x[f] *= xi_spectrum_conj_[f];
    full.resize(n_pad_);
    fft::inverse_real_unnormalized(spec_x, full);
    std::vector<double> out(m_);
    for (std::size_t i = 0; i < m_; ++i) out[i] = full[row_set_[i]];
    return out;
}

DualCode CirculantSketcher::embed_dual(std::span<const double> x) const {
    const std::vector<double> dots = apply_structured(x);
    std::vector<double> shifted(m_);
    for (std::size_t i = 0; i < m_; ++i) shifted[i] = dots[i] + dither_[i];
    BinaryCode first = quantize_signs(shifted, quantizer_.sign_zero);
    for (std::size_t i = 0; i < m_; ++i) shifted[i] = dots[i] + dither2_[i];
    BinaryCode second = quantize_signs(shifted, quantizer_.sign_zero);
    return DualCode(std::move(first), std::move(second));
}

const char* to_string(XiDistribution d) {
    return d == XiDistribution::rademacher ? "rademacher" : "gaussian";
}

const char* to_string(RowPolicy p) {
    return p == RowPolicy::first_m ? "first" : "random";
}

XiDistribution xi_distribution_from_string(const std::string& s) {
    if (s == "rademacher") return XiDistribution::rademacher;
    if (s == "gaussian") return XiDistribution::gaussian;
    throw std::invalid_argument("unknown xi distribution: " + s);
}

RowPolicy row_policy_from_string(const std::string& s) {
    if (s == "first") return RowPolicy::first_m;
    if (s == "random") return RowPolicy::seeded_random_subset;
    throw std::invalid_argument("unknown row policy: " + s);
}

}  // namespace bjle
