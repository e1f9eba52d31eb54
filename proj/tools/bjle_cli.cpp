#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bjle/circulant_sketch.hpp"
#include "bjle/codes_io.hpp"
#include "bjle/complexity.hpp"
#include "bjle/dataset.hpp"
#include "bjle/errors.hpp"
#include "bjle/estimators.hpp"
#include "bjle/verify.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_data = 2;
constexpr int exit_regime = 3;

void emit_json(const nlohmann::json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw bjle::format_error("cannot open " + out_path + " for writing");
        out << text;
        if (!out) throw bjle::format_error("write failed for " + out_path);
    }
}

std::pair<std::size_t, std::size_t> parse_pair(const std::string& text) {
    const std::size_t comma = text.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 >= text.size()) {
        throw std::invalid_argument("--pair expects 'i,j', got '" + text + "'");
    }
    std::size_t i = 0, j = 0;
    try {
        std::size_t used = 0;
        i = std::stoull(text.substr(0, comma), &used);
        if (used != comma) throw std::invalid_argument(text);
        const std::string rest = text.substr(comma + 1);
        j = std::stoull(rest, &used);
        if (used != rest.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        throw std::invalid_argument("--pair expects 'i,j' with integer indices, got '" +
                                    text + "'");
    }
    return {i, j};
}

struct EmbedArgs {
    std::string data, format = "csv", kind, xi = "rademacher", rows = "first", out;
    double lambda = 0.0;
    std::size_t m = 0;
    std::uint64_t seed = 0;
    int sign_zero = 1;
    bool dual = false;
};

int run_embed(const EmbedArgs& args) {
    const bjle::DatasetMatrix dataset =
        bjle::load_dataset(args.data, bjle::data_format_from_string(args.format));
    const bjle::QuantizerConfig quantizer{args.sign_zero};

    std::vector<bjle::BinaryCode> flat;
    bjle::SketchManifest manifest;
    if (args.kind == "gaussian") {
        const auto sketcher = bjle::GaussianSketcher::sample(args.seed, args.m,
                                                             dataset.n, args.lambda,
                                                             quantizer);
        manifest = bjle::SketchManifest::for_gaussian(sketcher, args.dual);
        if (args.dual) {
            std::vector<bjle::DualCode> codes;
            codes.reserve(dataset.count);
            for (std::size_t i = 0; i < dataset.count; ++i) {
                codes.push_back(sketcher.embed_dual(dataset.row(i)));
            }
            flat = bjle::flatten_dual(codes);
        } else {
            flat.reserve(dataset.count);
            for (std::size_t i = 0; i < dataset.count; ++i) {
                flat.push_back(sketcher.embed(dataset.row(i)));
            }
        }
    } else if (args.kind == "circulant") {
        const auto sketcher = bjle::CirculantSketcher::sample(
            args.seed, args.m, dataset.n, args.lambda,
            bjle::xi_distribution_from_string(args.xi),
            bjle::row_policy_from_string(args.rows), quantizer);
        manifest = bjle::SketchManifest::for_circulant(sketcher);
        std::vector<bjle::DualCode> codes;
        codes.reserve(dataset.count);
        for (std::size_t i = 0; i < dataset.count; ++i) {
            codes.push_back(sketcher.embed_dual(dataset.row(i)));
        }
        flat = bjle::flatten_dual(codes);
    } else {
        throw std::invalid_argument("--kind must be gaussian or circulant");
    }

    bjle::save_codes(flat, manifest, args.out);
    emit_json(nlohmann::json{{"points", dataset.count},
                             {"codes", flat.size()},
                             {"out", args.out},
                             {"manifest", manifest.to_json()}},
              "");
    return exit_ok;
}

struct QueryArgs {
    std::string codes, out;
    std::vector<std::string> pairs;
};

int run_query(const QueryArgs& args) {
    const auto [flat, manifest] = bjle::load_codes(args.codes);
    const bjle::EstimatorParams params{manifest.lambda, manifest.m};

    nlohmann::json results = nlohmann::json::array();
    if (manifest.dual) {
        const std::vector<bjle::DualCode> codes = bjle::unflatten_dual(flat);
        for (const std::string& text : args.pairs) {
            const auto [i, j] = parse_pair(text);
            if (i >= codes.size() || j >= codes.size()) {
                throw std::invalid_argument("pair index out of range (have " +
                                            std::to_string(codes.size()) + " codes)");
            }
            results.push_back(
                {{"i", i},
                 {"j", j},
                 {"inner_product", bjle::estimate_inner_product(codes[i], codes[j], params)},
                 {"sq_distance", bjle::estimate_sq_distance(codes[i], codes[j], params)}});
        }
    } else {
        for (const std::string& text : args.pairs) {
            const auto [i, j] = parse_pair(text);
            if (i >= flat.size() || j >= flat.size()) {
                throw std::invalid_argument("pair index out of range (have " +
                                            std::to_string(flat.size()) + " codes)");
            }
            results.push_back(
                {{"i", i},
                 {"j", j},
                 {"distance", bjle::estimate_distance(flat[i], flat[j], params)}});
        }
    }
    emit_json(nlohmann::json{{"format_version", bjle::codes_format_version},
                             {"manifest", manifest.to_json()},
                             {"pairs", results}},
              args.out);
    return exit_ok;
}

struct ComplexityArgs {
    std::string data, format = "csv", out;
    double epsilon = 0.0;
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
};

int run_complexity(const ComplexityArgs& args) {
    const bjle::DatasetMatrix dataset =
        bjle::load_dataset(args.data, bjle::data_format_from_string(args.format));
    const bjle::ComplexityReport report = bjle::compute_complexity_report(
        dataset.view(), args.epsilon, args.trials, args.seed);
    emit_json(nlohmann::json{{"format_version", bjle::codes_format_version},
                             {"epsilon", report.epsilon},
                             {"covering_upper", report.covering_upper},
                             {"gauss_localized", report.gauss_localized},
                             {"gauss_stderr", report.gauss_stderr},
                             {"trials", report.trials},
                             {"radius", report.radius},
                             {"seed", args.seed},
                             {"dataset",
                              {{"count", dataset.count},
                               {"n", dataset.n},
                               {"radius", dataset.radius}}}},
              args.out);
    return exit_ok;
}

struct AdviseArgs {
    std::string kind, report, out;
    double radius = 0.0;  // 0 = take the report's radius
    double delta = 0.0;
    double eta = 0.01;
    std::size_t n = 0;  // 0 = take the report's dataset dimension
    bjle::AdvisorConstants constants;
};

int run_advise(const AdviseArgs& args) {
    nlohmann::json parsed;
    {
        std::ifstream in(args.report);
        if (!in) throw bjle::format_error("cannot open " + args.report);
        try {
            in >> parsed;
        } catch (const nlohmann::json::exception& e) {
            throw bjle::format_error(args.report + ": unparseable JSON: " + e.what());
        }
    }
    bjle::ComplexityReport report;
    std::size_t report_n = 0;
    try {
        report.epsilon = parsed.at("epsilon").get<double>();
        report.covering_upper = parsed.at("covering_upper").get<std::size_t>();
        report.gauss_localized = parsed.at("gauss_localized").get<double>();
        report.gauss_stderr = parsed.at("gauss_stderr").get<double>();
        report.trials = parsed.at("trials").get<std::size_t>();
        report.radius = parsed.at("radius").get<double>();
        if (parsed.contains("dataset")) {
            report_n = parsed["dataset"].value("n", std::size_t{0});
        }
    } catch (const nlohmann::json::exception& e) {
        throw bjle::format_error(args.report + ": not a complexity report: " + e.what());
    }

    const double radius = args.radius > 0.0 ? args.radius : report.radius;
    bjle::ParameterAdvice advice;
    std::size_t used_n = 0;
    if (args.kind == "gaussian") {
        advice = bjle::advise_gaussian(radius, args.delta, report, args.constants);
    } else if (args.kind == "circulant") {
        used_n = args.n != 0 ? args.n : report_n;
        if (used_n == 0) {
            throw std::invalid_argument(
                "--n is required when the report has no dataset dimension");
        }
        advice = bjle::advise_circulant(radius, args.delta, args.eta, used_n, report,
                                        args.constants);
    } else {
        throw std::invalid_argument("--kind must be gaussian or circulant");
    }

    nlohmann::json j{{"format_version", bjle::codes_format_version},
                     {"kind", args.kind},
                     {"lambda", advice.lambda},
                     {"m", advice.m},
                     {"epsilon_used", advice.epsilon_used},
                     {"covering_term", advice.covering_term},
                     {"width_term", advice.width_term},
                     {"constants",
                      {{"c_lambda", advice.constants.c_lambda},
                       {"c_eps", advice.constants.c_eps},
                       {"c1", advice.constants.c1},
                       {"c2", advice.constants.c2},
                       {"c_r", advice.constants.c_r}}},
                     {"inputs",
                      {{"radius", radius}, {"delta", args.delta}}}};
    if (args.kind == "circulant") {
        j["alpha"] = advice.alpha;
        j["inputs"]["eta"] = args.eta;
        j["inputs"]["n"] = used_n;
    }
    emit_json(j, args.out);
    return exit_ok;
}

struct VerifyArgs {
    std::string data, format = "csv", kind = "gaussian", target, xi = "rademacher",
                rows = "first", out;
    double delta = 0.0, lambda = 0.0;
    std::size_t m = 0, seeds = 1;
    std::uint64_t seed = 0;
    int sign_zero = 1;
    bool no_wall_times = false;
};

int run_verify(const VerifyArgs& args) {
    const bjle::DatasetMatrix dataset =
        bjle::load_dataset(args.data, bjle::data_format_from_string(args.format));
    const bjle::QuantizerConfig quantizer{args.sign_zero};

    bjle::VerificationReport report;
    if (args.target == "distance") {
        if (args.kind != "gaussian") {
            throw std::invalid_argument(
                "distance verification requires --kind gaussian (the Hamming "
                "estimator assumes Gaussian rows)");
        }
        report = bjle::verify_distance_embedding(dataset, args.delta, args.lambda,
                                                 args.m, args.seeds, args.seed,
                                                 quantizer);
    } else if (args.target == "ip" || args.target == "inner_product") {
        report = bjle::verify_inner_product_embedding(
            dataset, args.delta, args.lambda, args.m, args.seeds, args.seed,
            bjle::sketch_kind_from_string(args.kind),
            bjle::xi_distribution_from_string(args.xi),
            bjle::row_policy_from_string(args.rows), quantizer);
    } else {
        throw std::invalid_argument("--target must be distance or ip");
    }
    emit_json(report.to_json(!args.no_wall_times), args.out);
    return exit_ok;
}

struct CurveArgs {
    std::string data, format = "csv", out;
    double lambda = 0.0;
    std::vector<std::size_t> m_list;
    std::size_t seeds = 1;
    std::uint64_t seed = 0;
    bool no_wall_times = false;
};

int run_curve(const CurveArgs& args) {
    const bjle::DatasetMatrix dataset =
        bjle::load_dataset(args.data, bjle::data_format_from_string(args.format));
    const bjle::ErrorCurve curve =
        bjle::error_curve(dataset, args.lambda, args.m_list, args.seeds, args.seed);
    emit_json(curve.to_json(!args.no_wall_times), args.out);
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bjle: binarized random-projection sketches for Euclidean queries"};
    app.require_subcommand(1);

    EmbedArgs embed;
    CLI::App* embed_cmd = app.add_subcommand("embed", "Sketch a dataset into a code file");
    embed_cmd->add_option("--data", embed.data, "Input dataset path")->required();
    embed_cmd->add_option("--format", embed.format, "csv or packed_f32");
    embed_cmd->add_option("--kind", embed.kind, "gaussian or circulant")->required();
    embed_cmd->add_option("--lambda", embed.lambda, "Dither level")->required();
    embed_cmd->add_option("--m", embed.m, "Signs per code")->required();
    embed_cmd->add_option("--seed", embed.seed, "Sketcher seed");
    embed_cmd->add_option("--sign-zero", embed.sign_zero, "Sign assigned to zero (+1/-1)");
    embed_cmd->add_flag("--dual", embed.dual,
                        "Write dual-branch codes (circulant always does)");
    embed_cmd->add_option("--xi", embed.xi, "Circulant symbol: rademacher or gaussian");
    embed_cmd->add_option("--rows", embed.rows, "Row subset: first or random");
    embed_cmd->add_option("--out", embed.out, "Output code file")->required();

    QueryArgs query;
    CLI::App* query_cmd = app.add_subcommand("query", "Estimate geometry from a code file");
    query_cmd->add_option("--codes", query.codes, "Code file from embed")->required();
    query_cmd->add_option("--pair", query.pairs, "Code index pair 'i,j' (repeatable)")
        ->required();
    query_cmd->add_option("--out", query.out, "Output JSON path (default stdout)");

    ComplexityArgs complexity;
    CLI::App* complexity_cmd =
        app.add_subcommand("complexity", "Covering/width report for a dataset");
    complexity_cmd->add_option("--data", complexity.data, "Input dataset path")->required();
    complexity_cmd->add_option("--format", complexity.format, "csv or packed_f32");
    complexity_cmd->add_option("--epsilon", complexity.epsilon, "Net scale")->required();
    complexity_cmd->add_option("--trials", complexity.trials, "Monte-Carlo trials");
    complexity_cmd->add_option("--seed", complexity.seed, "Monte-Carlo seed");
    complexity_cmd->add_option("--out", complexity.out, "Output JSON path (default stdout)");

    AdviseArgs advise;
    CLI::App* advise_cmd =
        app.add_subcommand("advise", "Advise (lambda, m) from a complexity report");
    advise_cmd->add_option("--kind", advise.kind, "gaussian or circulant")->required();
    advise_cmd->add_option("--report", advise.report, "Complexity report JSON")->required();
    advise_cmd->add_option("--radius", advise.radius,
                           "Data radius R (default: report radius)");
    advise_cmd->add_option("--delta", advise.delta, "Accuracy target")->required();
    advise_cmd->add_option("--eta", advise.eta, "Failure probability (circulant)");
    advise_cmd->add_option("--n", advise.n,
                           "Ambient dimension (circulant; default from report)");
    advise_cmd->add_option("--c-lambda", advise.constants.c_lambda, "Dither constant");
    advise_cmd->add_option("--c-eps", advise.constants.c_eps, "Net-scale constant");
    advise_cmd->add_option("--c1", advise.constants.c1, "Covering-term constant");
    advise_cmd->add_option("--c2", advise.constants.c2, "Width-term constant");
    advise_cmd->add_option("--c-r", advise.constants.c_r,
                           "Circulant net-scale constant");
    advise_cmd->add_option("--out", advise.out, "Output JSON path (default stdout)");

    VerifyArgs verify;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Multi-seed estimation-error campaign");
    verify_cmd->add_option("--data", verify.data, "Input dataset path")->required();
    verify_cmd->add_option("--format", verify.format, "csv or packed_f32");
    verify_cmd->add_option("--target", verify.target, "distance or ip")->required();
    verify_cmd->add_option("--kind", verify.kind, "gaussian or circulant");
    verify_cmd->add_option("--delta", verify.delta, "Per-seed failure threshold")
        ->required();
    verify_cmd->add_option("--lambda", verify.lambda, "Dither level")->required();
    verify_cmd->add_option("--m", verify.m, "Signs per code")->required();
    verify_cmd->add_option("--seeds", verify.seeds, "Number of independent seeds");
    verify_cmd->add_option("--seed", verify.seed, "Master seed");
    verify_cmd->add_option("--sign-zero", verify.sign_zero, "Sign assigned to zero");
    verify_cmd->add_option("--xi", verify.xi, "Circulant symbol distribution");
    verify_cmd->add_option("--rows", verify.rows, "Circulant row subset policy");
    verify_cmd->add_flag("--no-wall-times", verify.no_wall_times,
                         "Omit wall times (deterministic output)");
    verify_cmd->add_option("--out", verify.out, "Output JSON path (default stdout)");

    CurveArgs curve;
    CLI::App* curve_cmd = app.add_subcommand("curve", "Median sup error vs m sweep");
    curve_cmd->add_option("--data", curve.data, "Input dataset path")->required();
    curve_cmd->add_option("--format", curve.format, "csv or packed_f32");
    curve_cmd->add_option("--lambda", curve.lambda, "Dither level")->required();
    curve_cmd->add_option("--m", curve.m_list, "Code length (repeat for a sweep)")
        ->required();
    curve_cmd->add_option("--seeds", curve.seeds, "Seeds per m");
    curve_cmd->add_option("--seed", curve.seed, "Master seed");
    curve_cmd->add_flag("--no-wall-times", curve.no_wall_times,
                        "Omit wall times (deterministic output)");
    curve_cmd->add_option("--out", curve.out, "Output JSON path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (embed_cmd->parsed()) return run_embed(embed);
        if (query_cmd->parsed()) return run_query(query);
        if (complexity_cmd->parsed()) return run_complexity(complexity);
        if (advise_cmd->parsed()) return run_advise(advise);
        if (verify_cmd->parsed()) return run_verify(verify);
        if (curve_cmd->parsed()) return run_curve(curve);
    } catch (const bjle::regime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_regime;
    } catch (const bjle::format_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_data;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_data;
    }
    return exit_usage;
}
