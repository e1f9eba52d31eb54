#include "bjle/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace bjle::fft {

namespace {

// One r2c and one c2r out-of-place plan per size. FFTW planning is not
// thread safe, so plans are created under a lock; execution uses the
// thread-safe new-array interface. FFTW_UNALIGNED lets the plans run on any
// caller buffer.
struct PlanPair {
    fftw_plan forward;
    fftw_plan backward;
};

class PlanCache {
public:
    PlanPair get(std::size_t n) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = plans_.find(n);
        if (it != plans_.end()) return it->second;
        std::vector<double> real(n);
        std::vector<std::complex<double>> half(n / 2 + 1);
        auto* fhalf = reinterpret_cast<fftw_complex*>(half.data());
        PlanPair pair{
            fftw_plan_dft_r2c_1d(static_cast<int>(n), real.data(), fhalf,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED),
            fftw_plan_dft_c2r_1d(static_cast<int>(n), fhalf, real.data(),
                                 FFTW_ESTIMATE | FFTW_UNALIGNED),
        };
        if (!pair.forward || !pair.backward) {
            throw std::runtime_error("fft: plan creation failed for size " +
                                     std::to_string(n));
        }
        plans_.emplace(n, pair);
        return pair;
    }

private:
    std::mutex mutex_;
    std::map<std::size_t, PlanPair> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

void check_length(std::size_t n) {
    if (n == 0 || !is_power_of_two(n)) {
        throw std::invalid_argument("fft: length " + std::to_string(n) +
                                    " is not a power of two");
    }
}

}  // namespace

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void forward_real(std::span<const double> x, std::vector<std::complex<double>>& out) {
    check_length(x.size());
    const std::size_t n = x.size();
    out.resize(n / 2 + 1);
    const PlanPair plans = cache().get(n);
    // Out-of-place r2c preserves its input (plans are created without
    // FFTW_DESTROY_INPUT), so the cast never writes through the span.
    fftw_execute_dft_r2c(plans.forward, const_cast<double*>(x.data()),
                         reinterpret_cast<fftw_complex*>(out.data()));
}

std::vector<std::complex<double>> forward_real(std::span<const double> x) {
    std::vector<std::complex<double>> out;
    forward_real(x, out);
    return out;
}

void inverse_real_unnormalized(std::span<std::complex<double>> half_spectrum,
                               std::span<double> out) {
    const std::size_t n = out.size();
    check_length(n);
    if (half_spectrum.size() != n / 2 + 1) {
        throw std::invalid_argument("fft: half spectrum size " +
                                    std::to_string(half_spectrum.size()) +
                                    " does not match length " + std::to_string(n));
    }
    const PlanPair plans = cache().get(n);
    fftw_execute_dft_c2r(plans.backward,
                         reinterpret_cast<fftw_complex*>(half_spectrum.data()),
                         out.data());
}

}  // namespace bjle::fft
