#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bjle/circulant_sketch.hpp"
#include "bjle/codes_io.hpp"
#include "bjle/dataset.hpp"

#include <json.hpp>

namespace bjle {

struct WallTimes {
    double total_s = 0.0;
    double embed_s = 0.0;
    double query_s = 0.0;
};

enum class SketchKind { gaussian, circulant };

SketchKind sketch_kind_from_string(const std::string& s);
const char* to_string(SketchKind k);

// Aggregate of a multi-seed campaign. Every field except wall_times is a
// deterministic function of (dataset, parameters, master seed).
struct VerificationReport {
    std::string target;  // "distance" | "inner_product"
    double delta_target = 0.0;
    std::size_t trials = 0;  // number of independent seeds
    std::uint64_t master_seed = 0;
    std::vector<std::uint64_t> seeds_used;

    double sup_error = 0.0;   // max over seeds and pairs
    double mean_error = 0.0;  // mean over seeds and pairs
    double failure_fraction = 0.0;
    std::vector<double> per_seed_sup;

    // Squared-distance view, present for inner-product campaigns. Errors are
    // normalized by lambda^2; the failure threshold is 4*delta.
    bool has_sq = false;
    double sup_error_sq = 0.0;
    double mean_error_sq = 0.0;
    double failure_fraction_sq = 0.0;
    std::vector<double> per_seed_sup_sq;

    SketchManifest manifest;  // campaign config; seed holds the master seed
    std::size_t dataset_count = 0;
    std::size_t dataset_n = 0;
    double dataset_radius = 0.0;

    WallTimes wall_times;

    nlohmann::json to_json(bool include_wall_times = true) const;
};

// Distance campaign (dense Gaussian sketcher only): for each of `seeds`
// derived seeds, embed every point and take the sup over unordered distinct
// pairs of |estimate_distance - true distance|. A seed fails when its sup
// exceeds delta.
VerificationReport verify_distance_embedding(const DatasetMatrix& dataset,
                                             double delta, double lambda,
                                             std::size_t m, std::size_t seeds,
                                             std::uint64_t master_seed,
                                             QuantizerConfig quantizer = {});

// Inner-product campaign for either sketcher kind: per seed, sup over
// ordered pairs (self-pairs included) of |estimate_inner_product - <x,y>|
// normalized by lambda^2, failing above delta; also reports the polarized
// squared-distance errors against the 4*delta threshold.
VerificationReport verify_inner_product_embedding(
    const DatasetMatrix& dataset, double delta, double lambda, std::size_t m,
    std::size_t seeds, std::uint64_t master_seed,
    SketchKind kind = SketchKind::gaussian,
    XiDistribution xi = XiDistribution::rademacher,
    RowPolicy row_policy = RowPolicy::first_m, QuantizerConfig quantizer = {});

struct CurvePoint {
    std::size_t m = 0;
    double median_sup_error = 0.0;
};

struct ErrorCurve {
    double lambda = 0.0;
    std::size_t seeds = 0;
    std::uint64_t master_seed = 0;
    std::vector<CurvePoint> points;
    double slope = 0.0;     // least-squares log-log slope
    bool degenerate = false;  // some median was 0; slope undefined
    std::size_t dataset_count = 0;
    std::size_t dataset_n = 0;
    double dataset_radius = 0.0;
    WallTimes wall_times;

    nlohmann::json to_json(bool include_wall_times = true) const;
};

// Distance error as a function of m (dense Gaussian sketcher): for each m in
// the strictly ascending m_list, the median over seeds of the per-seed sup
// error, plus the fitted log-log slope.
ErrorCurve error_curve(const DatasetMatrix& dataset, double lambda,
                       std::span<const std::size_t> m_list, std::size_t seeds,
                       std::uint64_t master_seed, QuantizerConfig quantizer = {});

}  // namespace bjle
