#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "bjle/complexity.hpp"
#include "bjle/errors.hpp"
#include "test_support.hpp"

using namespace bjle;
using testsup::TestGen;

namespace {

struct Cloud {
    std::vector<double> flat;
    std::size_t count = 0, dim = 0;
    PointsView view() const { return {flat, count, dim}; }
    std::span<const double> row(std::size_t i) const {
        return {flat.data() + i * dim, dim};
    }
};

Cloud random_cloud(TestGen& gen, std::size_t count, std::size_t dim, double scale) {
    Cloud c;
    c.count = count;
    c.dim = dim;
    c.flat = gen.vec_uniform(count * dim, -scale, scale);
    return c;
}

double diameter(const Cloud& c) {
    double d = 0.0;
    for (std::size_t i = 0; i < c.count; ++i)
        for (std::size_t j = i + 1; j < c.count; ++j)
            d = std::max(d, euclidean_distance(c.row(i), c.row(j)));
    return d;
}

// Exhaustive minimal cover with centers drawn from the point set itself.
std::size_t exact_min_cover(const Cloud& c, double eps) {
    const std::size_t n = c.count;
    std::size_t best = n;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        const auto size = static_cast<std::size_t>(std::popcount(mask));
        if (size >= best) continue;
        bool covers = true;
        for (std::size_t i = 0; i < n && covers; ++i) {
            bool hit = false;
            for (std::size_t j = 0; j < n && !hit; ++j) {
                if ((mask >> j) & 1u)
                    hit = euclidean_distance(c.row(i), c.row(j)) <= eps;
            }
            covers = hit;
        }
        if (covers) best = size;
    }
    return best;
}

}  // namespace

TEST_CASE("greedy net on degenerate inputs") {
    Cloud empty;
    CHECK(greedy_net(empty.view(), 1.0).empty());

    Cloud one{{1.0, 2.0}, 1, 2};
    CHECK(greedy_net(one.view(), 0.5) == std::vector<std::size_t>{0});

    Cloud two{{0.0, 30.0}, 2, 1};
    CHECK(greedy_net(two.view(), 1.0) == (std::vector<std::size_t>{0, 1}));
    CHECK(greedy_net(two.view(), 31.0) == std::vector<std::size_t>{0});

    CHECK_THROWS_AS(greedy_net(one.view(), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(greedy_net(one.view(), -1.0), std::invalid_argument);
}

TEST_CASE("greedy net starts at index zero and breaks ties by lowest index") {
    Cloud line{{0.0, 1.0, 2.0}, 3, 1};
    CHECK(greedy_net(line.view(), 0.5) == (std::vector<std::size_t>{0, 2, 1}));

    Cloud tie{{0.0, -1.0, 1.0}, 3, 1};
    CHECK(greedy_net(tie.view(), 0.5) == (std::vector<std::size_t>{0, 1, 2}));
}

TEST_CASE("greedy net is a cover and a packing") {
    TestGen gen(601);
    for (int rep = 0; rep < 50; ++rep) {
        Cloud c = random_cloud(gen, 2 + gen.integer(39), 2 + gen.integer(15), 1.0);
        double diam = diameter(c);
        double eps = gen.uniform(0.05, std::max(0.1, 1.2 * diam));
        auto net = greedy_net(c.view(), eps);
        REQUIRE(!net.empty());
        // Cover: every point within eps of a net point.
        for (std::size_t i = 0; i < c.count; ++i) {
            double d = 1e300;
            for (auto idx : net)
                d = std::min(d, euclidean_distance(c.row(i), c.row(idx)));
            CHECK(d <= eps);
        }
        // Packing: net points pairwise further than eps apart.
        for (std::size_t a = 0; a < net.size(); ++a)
            for (std::size_t b = a + 1; b < net.size(); ++b)
                CHECK(euclidean_distance(c.row(net[a]), c.row(net[b])) > eps);
    }
}

TEST_CASE("greedy net is squeezed by exhaustive covering numbers") {
    TestGen gen(602);
    for (int rep = 0; rep < 30; ++rep) {
        Cloud c = random_cloud(gen, 4 + gen.integer(9), 1 + gen.integer(3), 1.0);
        double eps = gen.uniform(0.2, 1.5);
        std::size_t greedy = greedy_net(c.view(), eps).size();
        CHECK(exact_min_cover(c, eps) <= greedy);
        CHECK(greedy <= exact_min_cover(c, eps / 2.0));
    }
}

TEST_CASE("greedy net size decreases as the scale grows") {
    TestGen gen(603);
    Cloud c = random_cloud(gen, 60, 6, 1.0);
    std::size_t prev = c.count + 1;
    for (double eps : {0.1, 0.3, 0.6, 1.0, 2.0, 5.0}) {
        std::size_t size = greedy_net(c.view(), eps).size();
        CHECK(size <= prev);
        prev = size;
    }
}

TEST_CASE("localized width of an isolated set is zero") {
    Cloud c{{0.0, 0.0, 10.0, 0.0, 0.0, 10.0}, 3, 2};
    WidthEstimate w = localized_gaussian_complexity(c.view(), 1.0, 16, 5);
    CHECK(w.mean == 0.0);
    CHECK(w.std_error == 0.0);
}

TEST_CASE("localized width rejects too few trials") {
    Cloud c{{0.0, 1.0}, 2, 1};
    CHECK_THROWS_AS(localized_gaussian_complexity(c.view(), 1.0, 1, 5),
                    std::invalid_argument);
}

TEST_CASE("two-point localized width matches the half-normal mean") {
    const double eps = 0.8;
    Cloud c{{0.0, 0.0, eps, 0.0}, 2, 2};
    WidthEstimate w = localized_gaussian_complexity(c.view(), eps * 1.001, 4000, 77);
    double expect = eps * std::sqrt(2.0 / std::numbers::pi);
    CHECK(std::abs(w.mean - expect) < 4.0 * w.std_error);
    CHECK(w.std_error > 0.0);
}

TEST_CASE("localized width is consistent across seeds") {
    TestGen gen(604);
    Cloud c = random_cloud(gen, 50, 16, 0.5);
    double eps = 0.6 * diameter(c);
    WidthEstimate a = localized_gaussian_complexity(c.view(), eps, 2000, 1);
    WidthEstimate b = localized_gaussian_complexity(c.view(), eps, 2000, 2);
    CHECK(std::abs(a.mean - b.mean) <
          4.0 * std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error));
    // Same seed reproduces exactly.
    WidthEstimate a2 = localized_gaussian_complexity(c.view(), eps, 2000, 1);
    CHECK(a.mean == a2.mean);
    CHECK(a.std_error == a2.std_error);
}

TEST_CASE("beyond the diameter the localization is inactive") {
    TestGen gen(605);
    Cloud c = random_cloud(gen, 20, 4, 1.0);
    double diam = diameter(c);
    WidthEstimate a = localized_gaussian_complexity(c.view(), diam * 1.0001, 500, 9);
    WidthEstimate b = localized_gaussian_complexity(c.view(), 1e9, 500, 9);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
}

TEST_CASE("localized width obeys the max-of-gaussians bound") {
    TestGen gen(606);
    for (int rep = 0; rep < 10; ++rep) {
        Cloud c = random_cloud(gen, 30, 8, 0.7);
        double eps = gen.uniform(0.2, 1.2) * diameter(c);
        WidthEstimate w = localized_gaussian_complexity(c.view(), eps, 800, 100 + rep);
        double pairs_bound = static_cast<double>(c.count) * c.count;
        double bound = eps * std::sqrt(2.0 * std::log(std::max(2.0, pairs_bound)));
        CHECK(w.mean <= bound + 4.0 * w.std_error);
    }
}

TEST_CASE("complexity report aggregates the pieces") {
    Cloud c{{3.0, 0.0, 0.0, 4.0, 0.3, 0.4}, 3, 2};
    ComplexityReport r = compute_complexity_report(c.view(), 0.5, 64, 11);
    CHECK(r.epsilon == 0.5);
    CHECK(r.trials == 64);
    CHECK(r.radius == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(r.covering_upper >= 1);
    CHECK(r.covering_upper <= 3);
    CHECK(r.covering_upper == greedy_net(c.view(), 0.5).size());
}

TEST_CASE("gaussian advisor pins") {
    ComplexityReport report;
    report.epsilon = 0.3;
    report.covering_upper = 3;
    report.gauss_localized = 0.0;

    // log(R/delta) below 1: the sqrt clamps and lambda = R.
    ParameterAdvice a = advise_gaussian(1.0, 0.5, report);
    CHECK(a.lambda == 1.0);
    CHECK(a.alpha == 0.0);
    CHECK(a.epsilon_used == 0.3);
    CHECK(a.covering_term == doctest::Approx(4.0 * std::log(3.0)).epsilon(1e-14));
    CHECK(a.width_term == 0.0);
    CHECK(a.m == 5);  // ceil(4 log 3)

    // Unclamped lambda (finer net: the scale condition tightens with lambda).
    ComplexityReport fine = report;
    fine.epsilon = 0.25;
    ParameterAdvice b = advise_gaussian(4.0, 0.5, fine);
    CHECK(b.lambda == doctest::Approx(4.0 * std::sqrt(std::log(8.0))).epsilon(1e-14));

    // Width contribution: lambda / delta^3 * g^2.
    report.gauss_localized = 0.5;
    ParameterAdvice w = advise_gaussian(1.0, 0.5, report);
    CHECK(w.width_term == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(w.m == 7);  // ceil(4 log 3 + 2)

    // Constants scale their terms.
    AdvisorConstants k;
    k.c1 = 2.0;
    k.c2 = 3.0;
    ParameterAdvice s = advise_gaussian(1.0, 0.5, report, k);
    CHECK(s.covering_term == doctest::Approx(8.0 * std::log(3.0)).epsilon(1e-14));
    CHECK(s.width_term == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("gaussian advisor validates the regime and the net scale") {
    ComplexityReport report;
    report.epsilon = 0.3;
    report.covering_upper = 2;

    CHECK_THROWS_AS(advise_gaussian(0.0, 0.1, report), std::invalid_argument);
    CHECK_THROWS_AS(advise_gaussian(1.0, 0.0, report), std::invalid_argument);
    CHECK_THROWS_AS(advise_gaussian(1.0, 0.6, report), std::invalid_argument);  // > R/2

    // Net scale too coarse: eps must be <= delta / sqrt(log(e lambda / delta)).
    ComplexityReport coarse = report;
    coarse.epsilon = 0.4;  // limit is ~0.384 at R = 1, delta = 0.5
    CHECK_THROWS_AS(advise_gaussian(1.0, 0.5, coarse), std::invalid_argument);
    coarse.epsilon = 0.38;
    CHECK_NOTHROW(advise_gaussian(1.0, 0.5, coarse));
}

TEST_CASE("gaussian advisor terms scale like 1/delta^2 and 1/delta^3") {
    ComplexityReport report;
    report.epsilon = 0.01;
    report.covering_upper = 20;
    report.gauss_localized = 0.3;
    // Both deltas keep log(R/delta) < 1 so lambda stays clamped at R.
    ParameterAdvice a = advise_gaussian(1.0, 0.5, report);
    ParameterAdvice b = advise_gaussian(1.0, 0.4, report);
    CHECK(b.covering_term / a.covering_term ==
          doctest::Approx((0.5 / 0.4) * (0.5 / 0.4)).epsilon(1e-12));
    CHECK(b.width_term / a.width_term ==
          doctest::Approx(std::pow(0.5 / 0.4, 3)).epsilon(1e-12));

    // Doubling the width estimate quadruples the width term.
    ComplexityReport doubled = report;
    doubled.gauss_localized = 0.6;
    CHECK(advise_gaussian(1.0, 0.5, doubled).width_term ==
          doctest::Approx(4.0 * a.width_term).epsilon(1e-12));
}

TEST_CASE("circulant advisor pins alpha and the lambda floor") {
    ComplexityReport report;
    report.epsilon = 0.005;
    report.covering_upper = 10;
    report.gauss_localized = 0.0;

    // alpha = log^4(n) + log(1/eta).
    double l2 = std::log(2.0);
    ParameterAdvice a = advise_circulant(1.0, 0.3, 0.5, 2, report);
    CHECK(a.alpha == doctest::Approx(l2 * l2 * l2 * l2 + l2).epsilon(1e-12));

    // n = 1 kills the polylog; tiny alpha pushes lambda to the floor R.
    ParameterAdvice f = advise_circulant(1.0, 0.99, 0.5, 1, report);
    CHECK(f.alpha == doctest::Approx(l2).epsilon(1e-15));
    CHECK(f.lambda == 1.0);

    // Covering term with a floored lambda: alpha^2 / delta^2 * log(cov).
    double expect_cover = l2 * l2 / (0.99 * 0.99) * std::log(10.0);
    CHECK(f.covering_term == doctest::Approx(expect_cover).epsilon(1e-12));
    CHECK(f.m == static_cast<std::size_t>(std::ceil(expect_cover)));
}

TEST_CASE("circulant advisor validates parameters and regime") {
    ComplexityReport report;
    report.epsilon = 0.005;
    report.covering_upper = 10;

    CHECK_THROWS_AS(advise_circulant(0.5, 0.1, 0.5, 8, report), std::invalid_argument);
    CHECK_THROWS_AS(advise_circulant(1.0, 0.0, 0.5, 8, report), std::invalid_argument);
    CHECK_THROWS_AS(advise_circulant(1.0, 1.0, 0.5, 8, report), std::invalid_argument);
    CHECK_THROWS_AS(advise_circulant(1.0, 0.1, 0.0, 8, report), std::invalid_argument);
    CHECK_THROWS_AS(advise_circulant(1.0, 0.1, 0.6, 8, report), std::invalid_argument);
    CHECK_THROWS_AS(advise_circulant(1.0, 0.1, 0.5, 0, report), std::invalid_argument);

    // Large n inflates alpha and lambda until R^2 >= delta lambda^2 fails.
    CHECK_THROWS_AS(advise_circulant(1.0, 0.5, 0.5, 1024, report), regime_error);

    // Net scale must satisfy eps <= c_r * delta * R.
    ComplexityReport coarse = report;
    coarse.epsilon = 0.95;
    CHECK_THROWS_AS(advise_circulant(1.0, 0.9, 0.5, 1, coarse), std::invalid_argument);
    coarse.epsilon = 0.5;
    CHECK_NOTHROW(advise_circulant(1.0, 0.9, 0.5, 1, coarse));
}

TEST_CASE("circulant advice grows as the failure budget shrinks") {
    ComplexityReport report;
    report.epsilon = 0.005;
    report.covering_upper = 50;
    report.gauss_localized = 0.0;
    std::size_t m_small = advise_circulant(1.0, 0.01, 0.5, 1, report).m;
    std::size_t m_mid = advise_circulant(1.0, 0.01, 0.25, 1, report).m;
    std::size_t m_large = advise_circulant(1.0, 0.01, 0.05, 1, report).m;
    CHECK(m_small <= m_mid);
    CHECK(m_mid <= m_large);
}
