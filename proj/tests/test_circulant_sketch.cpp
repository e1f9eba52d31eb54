#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "bjle/circulant_sketch.hpp"
#include "test_support.hpp"

using namespace bjle;
using testsup::TestGen;

TEST_CASE("circulant matvec with a delta symbol is the identity") {
    TestGen gen(301);
    std::vector<double> xi(8, 0.0);
    xi[0] = 1.0;
    std::vector<double> x = gen.vec_gaussian(8);
    CHECK(testsup::max_abs_diff(circulant_matvec(xi, x), x) < 1e-12);
}

TEST_CASE("circulant matvec with a delta input reads the reversed symbol") {
    TestGen gen(302);
    const std::size_t n = 16;
    std::vector<double> xi = gen.vec_gaussian(n);
    std::vector<double> x(n, 0.0);
    x[0] = 1.0;
    std::vector<double> y = circulant_matvec(xi, x);
    for (std::size_t i = 0; i < n; ++i)
        CHECK(y[i] == doctest::Approx(xi[(n - i) % n]).epsilon(1e-12));
}

TEST_CASE("circulant matvec agrees with the quadratic-time oracle") {
    TestGen gen(303);
    const std::size_t n = 256;
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> xi = gen.vec_gaussian(n);
        std::vector<double> x = gen.vec_gaussian(n);
        std::vector<double> fast = circulant_matvec(xi, x);
        std::vector<double> slow = testsup::naive_circulant(xi, x);
        double scale = std::max(1.0, testsup::max_abs(slow));
        CHECK(testsup::max_abs_diff(fast, slow) / scale < 1e-9);
    }
}

TEST_CASE("circulant matvec validates shapes") {
    std::vector<double> a(8, 1.0), b(4, 1.0), c(12, 1.0);
    CHECK_THROWS_AS(circulant_matvec(a, b), std::invalid_argument);
    CHECK_THROWS_AS(circulant_matvec(c, c), std::invalid_argument);  // not a power of two
    std::vector<double> one{2.0}, xone{3.0};
    CHECK(circulant_matvec(one, xone)[0] == doctest::Approx(6.0).epsilon(1e-15));
}

TEST_CASE("sampling is deterministic and respects shape rules") {
    CirculantSketcher a = CirculantSketcher::sample(11, 6, 5, 2.0);
    CirculantSketcher b = CirculantSketcher::sample(11, 6, 5, 2.0);
    CHECK(a.n_pad() == 8);  // next power of two above 5
    CHECK(to_vec(a.xi()) == to_vec(b.xi()));
    CHECK(to_vec(a.theta()) == to_vec(b.theta()));
    CHECK(to_vec(a.dither()) == to_vec(b.dither()));
    CHECK(to_vec(a.dither2()) == to_vec(b.dither2()));
    CHECK(std::vector<std::uint32_t>(a.row_set().begin(), a.row_set().end()) ==
          std::vector<std::uint32_t>(b.row_set().begin(), b.row_set().end()));

    std::vector<double> x{1.0, -0.5, 0.25, 0.0, 2.0};
    DualCode da = a.embed_dual(x), db = b.embed_dual(x);
    CHECK(unpack(da.first) == unpack(db.first));
    CHECK(unpack(da.second) == unpack(db.second));

    // m may not exceed the padded dimension.
    CHECK_THROWS_AS(CirculantSketcher::sample(1, 9, 5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(CirculantSketcher::sample(1, 0, 5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(CirculantSketcher::sample(1, 4, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(CirculantSketcher::sample(1, 4, 5, 0.0), std::invalid_argument);
}

TEST_CASE("first-rows policy keeps the leading coordinates") {
    CirculantSketcher s = CirculantSketcher::sample(3, 4, 8, 1.0);
    std::vector<std::uint32_t> rows(s.row_set().begin(), s.row_set().end());
    CHECK(rows == std::vector<std::uint32_t>{0, 1, 2, 3});
}

TEST_CASE("random row policy draws a sorted distinct subset") {
    CirculantSketcher s = CirculantSketcher::sample(13, 12, 64, 1.0,
                                                    XiDistribution::rademacher,
                                                    RowPolicy::seeded_random_subset);
    std::vector<std::uint32_t> rows(s.row_set().begin(), s.row_set().end());
    CHECK(rows.size() == 12);
    std::set<std::uint32_t> uniq(rows.begin(), rows.end());
    CHECK(uniq.size() == 12);
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) CHECK(rows[i] < rows[i + 1]);
    for (auto r : rows) CHECK(r < 64);
    CirculantSketcher t = CirculantSketcher::sample(13, 12, 64, 1.0,
                                                    XiDistribution::rademacher,
                                                    RowPolicy::seeded_random_subset);
    CHECK(std::vector<std::uint32_t>(t.row_set().begin(), t.row_set().end()) == rows);
}

TEST_CASE("rademacher symbol entries are signs with near-zero mean") {
    const std::size_t n = 1 << 17;  // padded length, > 1e5 samples
    CirculantSketcher s = CirculantSketcher::sample(21, 4, n, 1.0);
    double sum = 0.0;
    for (double v : s.xi()) {
        CHECK((v == 1.0 || v == -1.0));
        sum += v;
    }
    double mean = sum / double(n);
    CHECK(std::abs(mean) < 5.0 / std::sqrt(double(n)));
    for (double v : s.theta()) CHECK((v == 1.0 || v == -1.0));
}

TEST_CASE("gaussian symbol entries have standard normal moments") {
    const std::size_t n = 1 << 17;
    CirculantSketcher s = CirculantSketcher::sample(22, 4, n, 1.0,
                                                    XiDistribution::gaussian);
    double s1 = 0.0, s2 = 0.0;
    for (double v : s.xi()) { s1 += v; s2 += v * v; }
    double mean = s1 / double(n);
    double var = s2 / double(n) - mean * mean;
    CHECK(std::abs(mean) < 5.0 / std::sqrt(double(n)));
    CHECK(std::abs(var - 1.0) < 5.0 * std::sqrt(2.0 / double(n)));
}

TEST_CASE("dither entries stay within the dither level") {
    const double lambda = 0.75;
    CirculantSketcher s = CirculantSketcher::sample(23, 256, 256, lambda);
    for (double v : s.dither()) CHECK(std::abs(v) <= lambda);
    for (double v : s.dither2()) CHECK(std::abs(v) <= lambda);
    CHECK(to_vec(s.dither()) != to_vec(s.dither2()));
}

TEST_CASE("structured apply maps zero to zero and validates inputs") {
    CirculantSketcher s = CirculantSketcher::sample(31, 6, 5, 1.0);
    std::vector<double> zero(5, 0.0);
    for (double v : s.apply_structured(zero)) CHECK(v == 0.0);
    CHECK_THROWS_AS(s.apply_structured(std::vector<double>(4, 0.0)),
                    std::invalid_argument);
    std::vector<double> bad(5, 0.0);
    bad[2] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(s.apply_structured(bad), std::invalid_argument);
}

TEST_CASE("structured apply matches the explicit dense matrix") {
    TestGen gen(304);
    struct Case { std::size_t n, n_pad, m; };
    for (Case c : {Case{8, 8, 8}, Case{5, 8, 7}, Case{12, 16, 9}, Case{33, 64, 20}}) {
        std::vector<double> xi = gen.vec_gaussian(c.n_pad);
        std::vector<double> theta(c.n_pad);
        for (auto& t : theta) t = gen.sign();
        std::vector<std::uint32_t> rows;
        while (rows.size() < c.m) {
            auto r = static_cast<std::uint32_t>(gen.integer(c.n_pad));
            if (std::find(rows.begin(), rows.end(), r) == rows.end()) rows.push_back(r);
        }
        std::sort(rows.begin(), rows.end());
        std::vector<double> d1 = gen.vec_uniform(c.m, -1.0, 1.0);
        std::vector<double> d2 = gen.vec_uniform(c.m, -1.0, 1.0);
        CirculantSketcher s = CirculantSketcher::from_components(
            c.n, xi, theta, rows, d1, d2, 1.0);

        std::vector<double> x = gen.vec_gaussian(c.n);
        std::vector<std::size_t> row_idx(rows.begin(), rows.end());
        auto dense = testsup::structured_matrix(xi, theta, row_idx, c.n);
        std::vector<double> expect = testsup::matvec(dense, x);
        std::vector<double> got = s.apply_structured(x);
        double scale = std::max(1.0, testsup::max_abs(expect));
        CHECK(testsup::max_abs_diff(got, expect) / scale < 1e-9);
    }
}

TEST_CASE("trivial components reduce to zero-padded selection") {
    // theta = +1, xi = delta: the structured map keeps the first m padded
    // coordinates of x.
    const std::size_t n = 5, n_pad = 8, m = 7;
    std::vector<double> xi(n_pad, 0.0);
    xi[0] = 1.0;
    std::vector<double> theta(n_pad, 1.0);
    std::vector<std::uint32_t> rows(m);
    std::iota(rows.begin(), rows.end(), 0);
    CirculantSketcher s = CirculantSketcher::from_components(
        n, xi, theta, rows, std::vector<double>(m, 0.0), std::vector<double>(m, 0.0),
        1.0);
    std::vector<double> x{1.5, -2.0, 0.25, 3.0, -0.5};
    std::vector<double> y = s.apply_structured(x);
    for (std::size_t i = 0; i < m; ++i) {
        double expect = i < n ? x[i] : 0.0;
        CHECK(y[i] == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("structured apply agrees with the naive oracle across sizes") {
    TestGen gen(305);
    for (std::size_t n_pad = 8; n_pad <= 1024; n_pad *= 2) {
        CirculantSketcher s = CirculantSketcher::sample(
            400 + n_pad, n_pad / 2 + 1, n_pad, 1.0, XiDistribution::rademacher,
            RowPolicy::seeded_random_subset);
        std::vector<double> x = gen.vec_gaussian(n_pad);
        std::vector<double> flipped(n_pad);
        for (std::size_t j = 0; j < n_pad; ++j) flipped[j] = s.theta()[j] * x[j];
        std::vector<double> full = testsup::naive_circulant(to_vec(s.xi()), flipped);
        std::vector<double> expect;
        for (auto r : s.row_set()) expect.push_back(full[r]);
        std::vector<double> got = s.apply_structured(x);
        double scale = std::max(1.0, testsup::max_abs(expect));
        CHECK(testsup::max_abs_diff(got, expect) / scale < 1e-9);
    }
}

TEST_CASE("structured apply is linear") {
    TestGen gen(306);
    CirculantSketcher s = CirculantSketcher::sample(41, 20, 30, 1.0);
    std::vector<double> x = gen.vec_gaussian(30), y = gen.vec_gaussian(30);
    const double alpha = 1.75, beta = -0.4;
    std::vector<double> combo(30);
    for (std::size_t j = 0; j < 30; ++j) combo[j] = alpha * x[j] + beta * y[j];
    std::vector<double> lhs = s.apply_structured(combo);
    std::vector<double> ax = s.apply_structured(x), ay = s.apply_structured(y);
    std::vector<double> rhs(20);
    for (std::size_t i = 0; i < 20; ++i) rhs[i] = alpha * ax[i] + beta * ay[i];
    double scale = std::max(1.0, testsup::max_abs(rhs));
    CHECK(testsup::max_abs_diff(lhs, rhs) / scale < 1e-8);
}

TEST_CASE("dual embedding is the quantized structured projection") {
    TestGen gen(307);
    CirculantSketcher s = CirculantSketcher::sample(43, 24, 17, 1.25);
    std::vector<double> x = gen.vec_gaussian(17);
    std::vector<double> proj = s.apply_structured(x);
    std::vector<double> b1(24), b2(24);
    for (std::size_t i = 0; i < 24; ++i) {
        b1[i] = proj[i] + s.dither()[i];
        b2[i] = proj[i] + s.dither2()[i];
    }
    DualCode d = s.embed_dual(x);
    CHECK(unpack(d.first) == unpack(quantize_signs(b1, 1)));
    CHECK(unpack(d.second) == unpack(quantize_signs(b2, 1)));

    std::vector<double> zero(17, 0.0);
    DualCode dz = s.embed_dual(zero);
    for (std::size_t i = 0; i < 24; ++i) {
        CHECK(dz.first.sign(i) == (s.dither()[i] < 0 ? -1 : 1));
        CHECK(dz.second.sign(i) == (s.dither2()[i] < 0 ? -1 : 1));
    }
}

TEST_CASE("structured rows preserve norms on average") {
    TestGen gen(308);
    const std::size_t n = 16, m = 16;
    std::vector<double> x = gen.vec_gaussian(n);
    double x_sq = 0.0;
    for (double v : x) x_sq += v * v;
    const int seeds = 600;
    std::vector<double> ratios;
    for (int s = 0; s < seeds; ++s) {
        CirculantSketcher sk = CirculantSketcher::sample(7000 + s, m, n, 1.0);
        std::vector<double> y = sk.apply_structured(x);
        double y_sq = 0.0;
        for (double v : y) y_sq += v * v;
        ratios.push_back(y_sq / (double(m) * x_sq));
    }
    auto st = testsup::mean_std(ratios);
    CHECK(std::abs(st.mean - 1.0) < 4.0 * st.std_error);
}

TEST_CASE("from_components validates every component") {
    std::vector<double> xi(8, 1.0), theta(8, 1.0), d(2, 0.0);
    std::vector<std::uint32_t> rows{0, 1};
    CHECK_NOTHROW(CirculantSketcher::from_components(5, xi, theta, rows, d, d, 1.0));

    std::vector<double> bad_theta = theta;
    bad_theta[3] = 0.5;
    CHECK_THROWS_AS(CirculantSketcher::from_components(5, xi, bad_theta, rows, d, d, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(CirculantSketcher::from_components(
                        5, xi, theta, {0, 0}, d, d, 1.0),
                    std::invalid_argument);  // duplicate rows
    CHECK_THROWS_AS(CirculantSketcher::from_components(
                        5, xi, theta, {0, 8}, d, d, 1.0),
                    std::invalid_argument);  // row out of range
    CHECK_THROWS_AS(CirculantSketcher::from_components(
                        5, xi, theta, rows, std::vector<double>(3, 0.0), d, 1.0),
                    std::invalid_argument);  // dither size mismatch
    CHECK_THROWS_AS(CirculantSketcher::from_components(
                        5, std::vector<double>(12, 1.0), std::vector<double>(12, 1.0),
                        rows, d, d, 1.0),
                    std::invalid_argument);  // not a power of two
    CHECK_THROWS_AS(CirculantSketcher::from_components(9, xi, theta, rows, d, d, 1.0),
                    std::invalid_argument);  // ambient exceeds padded length
    CHECK_THROWS_AS(CirculantSketcher::from_components(5, xi, theta, rows, d, d, 0.0),
                    std::invalid_argument);
    std::vector<double> big_dither{2.0, 0.0};
    CHECK_THROWS_AS(CirculantSketcher::from_components(
                        5, xi, theta, rows, big_dither, d, 1.0),
                    std::invalid_argument);  // dither beyond lambda
}

TEST_CASE("enum names round-trip") {
    CHECK(std::string(to_string(XiDistribution::rademacher)) == "rademacher");
    CHECK(std::string(to_string(XiDistribution::gaussian)) == "gaussian");
    CHECK(std::string(to_string(RowPolicy::first_m)) == "first");
    CHECK(std::string(to_string(RowPolicy::seeded_random_subset)) == "random");
    CHECK(xi_distribution_from_string("rademacher") == XiDistribution::rademacher);
    CHECK(xi_distribution_from_string("gaussian") == XiDistribution::gaussian);
    CHECK(row_policy_from_string("first") == RowPolicy::first_m);
    CHECK(row_policy_from_string("random") == RowPolicy::seeded_random_subset);
    CHECK_THROWS_AS(xi_distribution_from_string("cauchy"), std::invalid_argument);
    CHECK_THROWS_AS(row_policy_from_string("last"), std::invalid_argument);
}
