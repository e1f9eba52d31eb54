#pragma once

#include <cstdint>
#include <vector>

#include "bjle/points.hpp"

namespace bjle {

struct ComplexityReport {
    double epsilon = 0.0;
    std::size_t covering_upper = 0;  // greedy-net size, upper bound on N(D, eps)
    double gauss_localized = 0.0;    // Monte-Carlo localized Gaussian width
    double gauss_stderr = 0.0;
    std::size_t trials = 0;
    double radius = 0.0;  // max point norm
};

struct AdvisorConstants {
    double c_lambda = 1.0;  // scale of the dither level
    double c_eps = 1.0;     // slack in the net-scale condition
    double c1 = 1.0;        // covering term
    double c2 = 1.0;        // width term
    double c_r = 1.0;       // circulant net-scale condition
};

struct ParameterAdvice {
    double lambda = 0.0;
    std::size_t m = 0;
    double epsilon_used = 0.0;
    double alpha = 0.0;  // polylog factor; 0 for the dense Gaussian advisor
    double covering_term = 0.0;
    double width_term = 0.0;
    AdvisorConstants constants;
};

// Farthest-point greedy net: returns indices into D such that every point is
// within eps of a net point and distinct net points are > eps apart. Starts
// from index 0; ties broken by lowest index. Size upper-bounds the covering
// number at scale eps.
std::vector<std::size_t> greedy_net(const PointsView& points, double eps);

struct WidthEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

// Monte-Carlo localized Gaussian width of (D - D) intersected with the
// eps-ball: mean over `trials` standard Gaussians g of
// max_{x,y in D, |x-y| <= eps} |<g, x - y>|. Zero when no pair qualifies.
WidthEstimate localized_gaussian_complexity(const PointsView& points, double eps,
                                            std::size_t trials, std::uint64_t seed);

// Greedy net + localized width + radius in one report.
ComplexityReport compute_complexity_report(const PointsView& points, double eps,
                                           std::size_t trials, std::uint64_t seed);

// Parameter advice for the dense Gaussian sketcher:
// lambda = c_lambda * R * sqrt(max(1, log(R/delta))),
// m = ceil(c1 * lambda^2 / delta^2 * log(max(2, covering_upper))
//        + c2 * lambda / delta^3 * gauss_localized^2),
// after checking report.epsilon <= c_eps * delta / sqrt(log(e*lambda/delta)).
ParameterAdvice advise_gaussian(double radius, double delta,
                                const ComplexityReport& report,
                                AdvisorConstants constants = {});

// Parameter advice for the circulant sketcher. alpha = log^4(n) + log(1/eta);
// lambda solves lambda = c_lambda * alpha * R * sqrt(max(1, log(e*lambda^2 /
// (delta*R^2)))) by fixed point from lambda0 = alpha*R (<= 20 iterations,
// relative tolerance 1e-6), floored at R. Requires the regime R^2 >=
// delta*lambda^2 (regime_error otherwise) and report.epsilon <= c_r*delta*R.
// m = ceil(c1 * alpha^2 / delta^2 * log(max(2, covering_upper))
//        + c2 * alpha^2 / (lambda^2 * delta^3) * gauss_localized^2).
ParameterAdvice advise_circulant(double radius, double delta, double eta,
                                 std::size_t n, const ComplexityReport& report,
                                 AdvisorConstants constants = {});

}  // namespace bjle
