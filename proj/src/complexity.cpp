#include "bjle/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bjle/errors.hpp"
#include "bjle/rng.hpp"

namespace bjle {

namespace {

void check_scale(double eps, const char* what) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw std::invalid_argument(std::string(what) + ": epsilon must be finite and positive");
    }
}

double point_radius(const PointsView& points) {
    double max_sq = 0.0;
    for (std::size_t i = 0; i < points.count; ++i) {
        const auto row = points.row(i);
        double sq = 0.0;
        for (double v : row) sq += v * v;
        max_sq = std::max(max_sq, sq);
    }
    return std::sqrt(max_sq);
}

}  // namespace

std::vector<std::size_t> greedy_net(const PointsView& points, double eps) {
    check_scale(eps, "greedy_net");
    if (points.count == 0) return {};

    std::vector<std::size_t> net{0};
    // Distance from each point to the current net.
    std::vector<double> dist(points.count);
    for (std::size_t i = 0; i < points.count; ++i) {
        dist[i] = euclidean_distance(points.row(i), points.row(0));
    }
    for (;;) {
        std::size_t best = 0;
        double best_dist = -1.0;
        for (std::size_t i = 0; i < points.count; ++i) {
            if (dist[i] > best_dist) {
                best_dist = dist[i];
                best = i;
            }
        }
        if (best_dist <= eps) break;
        net.push_back(best);
        for (std::size_t i = 0; i < points.count; ++i) {
            dist[i] = std::min(dist[i],
                               euclidean_distance(points.row(i), points.row(best)));
        }
    }
    return net;
}

WidthEstimate localized_gaussian_complexity(const PointsView& points, double eps,
                                            std::size_t trials, std::uint64_t seed) {
    if (trials < 2) {
        throw std::invalid_argument("localized_gaussian_complexity: trials must be >= 2");
    }
    if (!std::isfinite(eps)) {
        throw std::invalid_argument("localized_gaussian_complexity: non-finite epsilon");
    }

    // Unordered distinct pairs at distance <= eps; |<g, x-y>| covers both
    // orientations of each pair, and self-pairs contribute 0.
    std::vector<std::pair<std::size_t, std::size_t>> close;
    const double eps_sq = eps * eps;
    for (std::size_t i = 0; i < points.count; ++i) {
        for (std::size_t j = i + 1; j < points.count; ++j) {
            if (squared_distance(points.row(i), points.row(j)) <= eps_sq) {
                close.emplace_back(i, j);
            }
        }
    }
    if (close.empty()) return {0.0, 0.0};

    std::vector<double> g(points.dim);
    std::vector<double> dots(points.count);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Xoshiro256pp gen = substream(seed, Stream::gauss_mc, t);
        for (auto& v : g) v = gen.gaussian();
        for (std::size_t i = 0; i < points.count; ++i) {
            const auto row = points.row(i);
            double acc = 0.0;
            for (std::size_t j = 0; j < points.dim; ++j) acc += g[j] * row[j];
            dots[i] = acc;
        }
        double best = 0.0;
        for (const auto& [i, j] : close) {
            best = std::max(best, std::abs(dots[i] - dots[j]));
        }
        sum += best;
        sum_sq += best * best;
    }
    const double n_trials = static_cast<double>(trials);
    const double mean = sum / n_trials;
    const double var = std::max(0.0, (sum_sq - n_trials * mean * mean) / (n_trials - 1.0));
    return {mean, std::sqrt(var / n_trials)};
}

ComplexityReport compute_complexity_report(const PointsView& points, double eps,
                                           std::size_t trials, std::uint64_t seed) {
    check_scale(eps, "compute_complexity_report");
    ComplexityReport report;
    report.epsilon = eps;
    report.covering_upper = greedy_net(points, eps).size();
    const WidthEstimate width = localized_gaussian_complexity(points, eps, trials, seed);
    report.gauss_localized = width.mean;
    report.gauss_stderr = width.std_error;
    report.trials = trials;
    report.radius = point_radius(points);
    return report;
}

ParameterAdvice advise_gaussian(double radius, double delta,
                                const ComplexityReport& report,
                                AdvisorConstants constants) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw std::invalid_argument("advise_gaussian: radius must be finite and positive");
    }
    if (!(delta > 0.0) || !(delta <= radius / 2.0)) {
        throw std::invalid_argument(
            "advise_gaussian: required 0 < delta <= R/2, got delta = " +
            std::to_string(delta) + " with R = " + std::to_string(radius));
    }

    ParameterAdvice advice;
    advice.constants = constants;
    advice.epsilon_used = report.epsilon;
    advice.lambda = constants.c_lambda * radius *
                    std::sqrt(std::max(1.0, std::log(radius / delta)));

    const double eps_limit =
        constants.c_eps * delta /
        std::sqrt(std::log(std::numbers::e * advice.lambda / delta));
    if (report.epsilon > eps_limit) {
        throw std::invalid_argument(
            "advise_gaussian: net scale violates epsilon <= c_eps * delta / "
            "sqrt(log(e*lambda/delta)): " +
            std::to_string(report.epsilon) + " > " + std::to_string(eps_limit));
    }

    advice.covering_term = constants.c1 * advice.lambda * advice.lambda /
                           (delta * delta) *
                           std::log(std::max(2.0, static_cast<double>(report.covering_upper)));
    advice.width_term = constants.c2 * advice.lambda / (delta * delta * delta) *
                        report.gauss_localized * report.gauss_localized;
    advice.m = static_cast<std::size_t>(
        std::max(1.0, std::ceil(advice.covering_term + advice.width_term)));
    return advice;
}

ParameterAdvice advise_circulant(double radius, double delta, double eta,
                                 std::size_t n, const ComplexityReport& report,
                                 AdvisorConstants constants) {
    if (!(radius >= 1.0) || !std::isfinite(radius)) {
        throw std::invalid_argument("advise_circulant: required R >= 1, got R = " +
                                    std::to_string(radius));
    }
    if (!(delta > 0.0) || !(delta < 1.0)) {
        throw std::invalid_argument(
            "advise_circulant: required 0 < delta < 1, got delta = " +
            std::to_string(delta));
    }
    if (!(eta > 0.0) || !(eta <= 0.5)) {
        throw std::invalid_argument(
            "advise_circulant: required 0 < eta <= 1/2, got eta = " +
            std::to_string(eta));
    }
    if (n == 0) {
        throw std::invalid_argument("advise_circulant: n must be positive");
    }

    ParameterAdvice advice;
    advice.constants = constants;
    advice.epsilon_used = report.epsilon;

    const double log_n = std::log(static_cast<double>(n));
    advice.alpha = log_n * log_n * log_n * log_n + std::log(1.0 / eta);

    // lambda = c_lambda * alpha * R * sqrt(max(1, log(e lambda^2 / (delta R^2))))
    // by fixed point, floored at R (the theorem's standing assumption).
    auto step = [&](double lambda) {
        const double arg = std::log(std::numbers::e * lambda * lambda /
                                    (delta * radius * radius));
        return constants.c_lambda * advice.alpha * radius *
               std::sqrt(std::max(1.0, arg));
    };
    double lambda = advice.alpha * radius;
    for (int it = 0; it < 20; ++it) {
        const double next = step(lambda);
        const double rel = std::abs(next - lambda) / std::max(next, lambda);
        lambda = next;
        if (rel < 1e-6) break;
    }
    lambda = std::max(lambda, radius);
    advice.lambda = lambda;

    if (radius * radius < delta * lambda * lambda) {
        throw regime_error(
            "advise_circulant: regime constraint R^2 >= delta*lambda^2 violated (" +
            std::to_string(radius * radius) + " < " +
            std::to_string(delta * lambda * lambda) +
            "); delta is too large for this dither level");
    }
    const double eps_limit = constants.c_r * delta * radius;
    if (report.epsilon > eps_limit) {
        throw std::invalid_argument(
            "advise_circulant: net scale violates epsilon <= c_r * delta * R: " +
            std::to_string(report.epsilon) + " > " + std::to_string(eps_limit));
    }

    advice.covering_term = constants.c1 * advice.alpha * advice.alpha /
                           (delta * delta) *
                           std::log(std::max(2.0, static_cast<double>(report.covering_upper)));
    advice.width_term = constants.c2 * advice.alpha * advice.alpha /
                        (lambda * lambda * delta * delta * delta) *
                        report.gauss_localized * report.gauss_localized;
    advice.m = static_cast<std::size_t>(
        std::max(1.0, std::ceil(advice.covering_term + advice.width_term)));
    return advice;
}

}  // namespace bjle
