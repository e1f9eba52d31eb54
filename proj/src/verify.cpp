#include "bjle/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "bjle/estimators.hpp"
#include "bjle/fft.hpp"
#include "bjle/rng.hpp"

namespace bjle {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Compensated accumulator: summation order is fixed by the loops, and the
// compensation keeps the aggregate stable at reported precision.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

void check_campaign_args(const DatasetMatrix& dataset, double lambda, std::size_t m,
                         std::size_t seeds) {
    if (dataset.count == 0) {
        throw std::invalid_argument("verify: empty dataset");
    }
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("verify: lambda must be finite and positive");
    }
    if (m == 0) throw std::invalid_argument("verify: m must be positive");
    if (seeds == 0) throw std::invalid_argument("verify: seeds must be >= 1");
}

nlohmann::json dataset_summary(std::size_t count, std::size_t n, double radius) {
    return {{"count", count}, {"n", n}, {"radius", radius}};
}

nlohmann::json wall_times_json(const WallTimes& w) {
    return {{"total_s", w.total_s}, {"embed_s", w.embed_s}, {"query_s", w.query_s}};
}

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

SketchKind sketch_kind_from_string(const std::string& s) {
    if (s == "gaussian") return SketchKind::gaussian;
    if (s == "circulant") return SketchKind::circulant;
    throw std::invalid_argument("unknown sketch kind: " + s);
}

const char* to_string(SketchKind k) {
    return k == SketchKind::gaussian ? "gaussian" : "circulant";
}

nlohmann::json VerificationReport::to_json(bool include_wall_times) const {
    nlohmann::json j{
        {"format_version", codes_format_version},
        {"target", target},
        {"delta_target", delta_target},
        {"trials", trials},
        {"master_seed", master_seed},
        {"seeds_used", seeds_used},
        {"dataset", dataset_summary(dataset_count, dataset_n, dataset_radius)},
        {"manifest", manifest.to_json()},
        {"sup_error", sup_error},
        {"mean_error", mean_error},
        {"failure_fraction", failure_fraction},
        {"per_seed_sup", per_seed_sup},
    };
    if (has_sq) {
        j["sup_error_sq"] = sup_error_sq;
        j["mean_error_sq"] = mean_error_sq;
        j["failure_fraction_sq"] = failure_fraction_sq;
        j["per_seed_sup_sq"] = per_seed_sup_sq;
    }
    if (include_wall_times) j["wall_times"] = wall_times_json(wall_times);
    return j;
}

VerificationReport verify_distance_embedding(const DatasetMatrix& dataset,
                                             double delta, double lambda,
                                             std::size_t m, std::size_t seeds,
                                             std::uint64_t master_seed,
                                             QuantizerConfig quantizer) {
    check_campaign_args(dataset, lambda, m, seeds);
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw std::invalid_argument("verify: delta must be finite and positive");
    }
    if (dataset.radius < 2.0 * delta) {
        std::cerr << "warning: dataset radius " << dataset.radius
                  << " is below 2*delta = " << 2.0 * delta
                  << "; the distance guarantee is vacuous at this scale\n";
    }

    const auto t_start = Clock::now();
    VerificationReport report;
    report.target = "distance";
    report.delta_target = delta;
    report.trials = seeds;
    report.master_seed = master_seed;
    report.dataset_count = dataset.count;
    report.dataset_n = dataset.n;
    report.dataset_radius = dataset.radius;

    const std::size_t count = dataset.count;
    std::vector<double> truth;  // packed upper triangle, i < j
    truth.reserve(count * (count - 1) / 2);
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = i + 1; j < count; ++j) {
            truth.push_back(euclidean_distance(dataset.row(i), dataset.row(j)));
        }
    }

    const EstimatorParams params{lambda, m};
    KahanSum error_sum;
    std::size_t error_count = 0;
    std::size_t failures = 0;

    for (std::size_t s = 0; s < seeds; ++s) {
        const std::uint64_t seed = derive_seed(master_seed, s);
        report.seeds_used.push_back(seed);

        const auto t_embed = Clock::now();
        const GaussianSketcher sketcher =
            GaussianSketcher::sample(seed, m, dataset.n, lambda, quantizer);
        std::vector<BinaryCode> codes;
        codes.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            codes.push_back(sketcher.embed(dataset.row(i)));
        }
        report.wall_times.embed_s += seconds_since(t_embed);

        const auto t_query = Clock::now();
        double seed_sup = 0.0;
        std::size_t pair = 0;
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t j = i + 1; j < count; ++j, ++pair) {
                const double est = estimate_distance(codes[i], codes[j], params);
                const double err = std::abs(est - truth[pair]);
                seed_sup = std::max(seed_sup, err);
                error_sum.add(err);
                ++error_count;
            }
        }
        report.wall_times.query_s += seconds_since(t_query);

        report.per_seed_sup.push_back(seed_sup);
        report.sup_error = std::max(report.sup_error, seed_sup);
        if (seed_sup > delta) ++failures;
    }

    report.mean_error = error_count == 0 ? 0.0 : error_sum.sum / static_cast<double>(error_count);
    report.failure_fraction = static_cast<double>(failures) / static_cast<double>(seeds);

    report.manifest.kind = "gaussian";
    report.manifest.seed = master_seed;
    report.manifest.m = m;
    report.manifest.n = dataset.n;
    report.manifest.lambda = lambda;
    report.manifest.sign_zero = quantizer.sign_zero;
    report.manifest.rng = rng_identifier;
    report.manifest.dual = false;

    report.wall_times.total_s = seconds_since(t_start);
    return report;
}

VerificationReport verify_inner_product_embedding(
    const DatasetMatrix& dataset, double delta, double lambda, std::size_t m,
    std::size_t seeds, std::uint64_t master_seed, SketchKind kind,
    XiDistribution xi, RowPolicy row_policy, QuantizerConfig quantizer) {
    check_campaign_args(dataset, lambda, m, seeds);
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw std::invalid_argument("verify: delta must be finite and positive");
    }

    const auto t_start = Clock::now();
    VerificationReport report;
    report.target = "inner_product";
    report.delta_target = delta;
    report.trials = seeds;
    report.master_seed = master_seed;
    report.has_sq = true;
    report.dataset_count = dataset.count;
    report.dataset_n = dataset.n;
    report.dataset_radius = dataset.radius;

    const std::size_t count = dataset.count;
    std::vector<double> truth_ip;  // packed triangle, i <= j
    std::vector<double> truth_sq;
    truth_ip.reserve(count * (count + 1) / 2);
    truth_sq.reserve(count * (count + 1) / 2);
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = i; j < count; ++j) {
            const auto a = dataset.row(i);
            const auto b = dataset.row(j);
            double ip = 0.0;
            for (std::size_t k = 0; k < dataset.n; ++k) ip += a[k] * b[k];
            truth_ip.push_back(ip);
            truth_sq.push_back(squared_distance(a, b));
        }
    }

    const EstimatorParams params{lambda, m};
    const double inv_lambda_sq = 1.0 / (lambda * lambda);
    KahanSum ip_sum, sq_sum;
    std::size_t pair_count = 0;
    std::size_t failures_ip = 0, failures_sq = 0;

    for (std::size_t s = 0; s < seeds; ++s) {
        const std::uint64_t seed = derive_seed(master_seed, s);
        report.seeds_used.push_back(seed);

        const auto t_embed = Clock::now();
        std::vector<DualCode> codes;
        codes.reserve(count);
        if (kind == SketchKind::gaussian) {
            const GaussianSketcher sketcher =
                GaussianSketcher::sample(seed, m, dataset.n, lambda, quantizer);
            for (std::size_t i = 0; i < count; ++i) {
                codes.push_back(sketcher.embed_dual(dataset.row(i)));
            }
        } else {
            const CirculantSketcher sketcher = CirculantSketcher::sample(
                seed, m, dataset.n, lambda, xi, row_policy, quantizer);
            for (std::size_t i = 0; i < count; ++i) {
                codes.push_back(sketcher.embed_dual(dataset.row(i)));
            }
        }
        report.wall_times.embed_s += seconds_since(t_embed);

        const auto t_query = Clock::now();
        double seed_sup_ip = 0.0, seed_sup_sq = 0.0;
        std::size_t pair = 0;
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t j = i; j < count; ++j, ++pair) {
                const double est_ip = estimate_inner_product(codes[i], codes[j], params);
                const double err_ip = std::abs(est_ip - truth_ip[pair]) * inv_lambda_sq;
                const double est_sq = estimate_sq_distance(codes[i], codes[j], params);
                const double err_sq = std::abs(est_sq - truth_sq[pair]) * inv_lambda_sq;
                seed_sup_ip = std::max(seed_sup_ip, err_ip);
                seed_sup_sq = std::max(seed_sup_sq, err_sq);
                ip_sum.add(err_ip);
                sq_sum.add(err_sq);
                ++pair_count;
            }
        }
        report.wall_times.query_s += seconds_since(t_query);

        report.per_seed_sup.push_back(seed_sup_ip);
        report.per_seed_sup_sq.push_back(seed_sup_sq);
        report.sup_error = std::max(report.sup_error, seed_sup_ip);
        report.sup_error_sq = std::max(report.sup_error_sq, seed_sup_sq);
        if (seed_sup_ip > delta) ++failures_ip;
        if (seed_sup_sq > 4.0 * delta) ++failures_sq;
    }

    report.mean_error = ip_sum.sum / static_cast<double>(pair_count);
    report.mean_error_sq = sq_sum.sum / static_cast<double>(pair_count);
    report.failure_fraction = static_cast<double>(failures_ip) / static_cast<double>(seeds);
    report.failure_fraction_sq =
        static_cast<double>(failures_sq) / static_cast<double>(seeds);

    report.manifest.kind = to_string(kind);
    report.manifest.seed = master_seed;
    report.manifest.m = m;
    report.manifest.n = dataset.n;
    report.manifest.lambda = lambda;
    report.manifest.sign_zero = quantizer.sign_zero;
    report.manifest.rng = rng_identifier;
    report.manifest.dual = true;
    if (kind == SketchKind::circulant) {
        report.manifest.n_pad = fft::next_power_of_two(dataset.n);
        report.manifest.xi_distribution = to_string(xi);
        report.manifest.row_policy = to_string(row_policy);
    }

    report.wall_times.total_s = seconds_since(t_start);
    return report;
}

nlohmann::json ErrorCurve::to_json(bool include_wall_times) const {
    nlohmann::json points_json = nlohmann::json::array();
    for (const CurvePoint& p : points) {
        points_json.push_back({{"m", p.m}, {"median_sup_error", p.median_sup_error}});
    }
    nlohmann::json j{
        {"format_version", codes_format_version},
        {"target", "distance_curve"},
        {"kind", "gaussian"},
        {"rng", rng_identifier},
        {"lambda", lambda},
        {"seeds", seeds},
        {"master_seed", master_seed},
        {"dataset", dataset_summary(dataset_count, dataset_n, dataset_radius)},
        {"points", points_json},
        {"degenerate", degenerate},
    };
    if (degenerate) {
        j["slope"] = nullptr;
    } else {
        j["slope"] = slope;
    }
    if (include_wall_times) j["wall_times"] = wall_times_json(wall_times);
    return j;
}

ErrorCurve error_curve(const DatasetMatrix& dataset, double lambda,
                       std::span<const std::size_t> m_list, std::size_t seeds,
                       std::uint64_t master_seed, QuantizerConfig quantizer) {
    if (m_list.size() < 2) {
        throw std::invalid_argument("error_curve: need at least 2 values of m");
    }
    for (std::size_t i = 0; i + 1 < m_list.size(); ++i) {
        if (m_list[i] >= m_list[i + 1]) {
            throw std::invalid_argument("error_curve: m_list must be strictly ascending");
        }
    }
    check_campaign_args(dataset, lambda, m_list[0], seeds);

    const auto t_start = Clock::now();
    ErrorCurve curve;
    curve.lambda = lambda;
    curve.seeds = seeds;
    curve.master_seed = master_seed;
    curve.dataset_count = dataset.count;
    curve.dataset_n = dataset.n;
    curve.dataset_radius = dataset.radius;

    const std::size_t count = dataset.count;
    std::vector<double> truth;
    truth.reserve(count * (count - 1) / 2);
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = i + 1; j < count; ++j) {
            truth.push_back(euclidean_distance(dataset.row(i), dataset.row(j)));
        }
    }

    for (std::size_t mi = 0; mi < m_list.size(); ++mi) {
        const std::size_t m = m_list[mi];
        const EstimatorParams params{lambda, m};
        std::vector<double> sups;
        sups.reserve(seeds);
        for (std::size_t s = 0; s < seeds; ++s) {
            const std::uint64_t seed = derive_seed(master_seed, mi * seeds + s);
            const auto t_embed = Clock::now();
            const GaussianSketcher sketcher =
                GaussianSketcher::sample(seed, m, dataset.n, lambda, quantizer);
            std::vector<BinaryCode> codes;
            codes.reserve(count);
            for (std::size_t i = 0; i < count; ++i) {
                codes.push_back(sketcher.embed(dataset.row(i)));
            }
            curve.wall_times.embed_s += seconds_since(t_embed);

            const auto t_query = Clock::now();
            double sup = 0.0;
            std::size_t pair = 0;
            for (std::size_t i = 0; i < count; ++i) {
                for (std::size_t j = i + 1; j < count; ++j, ++pair) {
                    const double est = estimate_distance(codes[i], codes[j], params);
                    sup = std::max(sup, std::abs(est - truth[pair]));
                }
            }
            curve.wall_times.query_s += seconds_since(t_query);
            sups.push_back(sup);
        }
        curve.points.push_back({m, median_of(std::move(sups))});
    }

    // Least-squares slope of log(median) against log(m).
    curve.degenerate = false;
    for (const CurvePoint& p : curve.points) {
        if (!(p.median_sup_error > 0.0)) curve.degenerate = true;
    }
    if (curve.degenerate) {
        curve.slope = std::numeric_limits<double>::quiet_NaN();
    } else {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        const double k = static_cast<double>(curve.points.size());
        for (const CurvePoint& p : curve.points) {
            const double x = std::log(static_cast<double>(p.m));
            const double y = std::log(p.median_sup_error);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        curve.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    }

    curve.wall_times.total_s = seconds_since(t_start);
    return curve;
}

}  // namespace bjle
