#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "bjle/circulant_sketch.hpp"
#include "bjle/complexity.hpp"
#include "bjle/dataset.hpp"
#include "bjle/errors.hpp"
#include "bjle/estimators.hpp"
#include "bjle/gaussian_sketch.hpp"
#include "bjle/rng.hpp"
#include "bjle/verify.hpp"

namespace py = pybind11;

namespace {

using Matrix = py::array_t<double, py::array::c_style | py::array::forcecast>;

bjle::DatasetMatrix dataset_from_array(const Matrix& array) {
    if (array.ndim() != 2) {
        throw std::invalid_argument("points must be a 2-d array (count x n)");
    }
    const std::size_t count = static_cast<std::size_t>(array.shape(0));
    const std::size_t n = static_cast<std::size_t>(array.shape(1));
    std::vector<double> data(array.data(), array.data() + count * n);
    return bjle::DatasetMatrix::from_points(n, std::move(data));
}

py::object json_to_py(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

py::array_t<double> vector_to_array(const std::vector<double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = R"pbdoc(
        Binarized random-projection sketches: one-bit dithered embeddings of
        Euclidean data with distance and inner-product estimators, structured
        (circulant) fast sketching, complexity-based parameter advice, and
        multi-seed verification campaigns.
    )pbdoc";

    py::register_exception<bjle::format_error>(m, "FormatError");
    py::register_exception<bjle::regime_error>(m, "RegimeError");

    py::class_<bjle::BinaryCode>(m, "BinaryCode")
        .def_property_readonly("length", &bjle::BinaryCode::length)
        .def("words",
             [](const bjle::BinaryCode& c) {
                 return std::vector<std::uint64_t>(c.words().begin(), c.words().end());
             })
        .def("unpack", &bjle::BinaryCode::unpack)
        .def("bit", &bjle::BinaryCode::bit, py::arg("i"))
        .def("sign", &bjle::BinaryCode::sign, py::arg("i"))
        .def("complemented", &bjle::BinaryCode::complemented)
        .def("__eq__",
             [](const bjle::BinaryCode& a, const bjle::BinaryCode& b) { return a == b; })
        .def("__len__", &bjle::BinaryCode::length);

    py::class_<bjle::DualCode>(m, "DualCode")
        .def(py::init<bjle::BinaryCode, bjle::BinaryCode>(), py::arg("first"),
             py::arg("second"))
        .def_readonly("first", &bjle::DualCode::first)
        .def_readonly("second", &bjle::DualCode::second)
        .def("__len__", &bjle::DualCode::length);

    m.def(
        "pack",
        [](const std::vector<int>& signs) {
            return bjle::BinaryCode::pack(signs);
        },
        py::arg("signs"), "Pack a +-1 sign sequence into a BinaryCode.");
    m.def(
        "quantize_signs",
        [](const std::vector<double>& values, int sign_zero) {
            return bjle::quantize_signs(values, sign_zero);
        },
        py::arg("values"), py::arg("sign_zero") = 1,
        "Sign-quantize a real vector (zero maps to sign_zero).");
    m.def("hamming", &bjle::hamming, py::arg("a"), py::arg("b"),
          "Number of disagreeing signs.");
    m.def("signed_dot", &bjle::signed_dot, py::arg("a"), py::arg("b"),
          "Inner product of two sign vectors, m - 2*hamming.");

    m.def("collision_probability", &bjle::collision_probability, py::arg("a"),
          py::arg("b"), py::arg("lambda_"),
          "Probability a shared uniform dither separates projections a and b.");
    m.def("bias_bound", &bjle::bias_bound, py::arg("lambda_"), py::arg("r"),
          "Bias bound 2 r exp(-lambda^2 / (2 r^2)) of the distance estimator.");
    m.def("default_lambda", &bjle::default_lambda, py::arg("radius"), py::arg("delta"),
          "Dither level R sqrt(2 log(e R / delta)).");

    py::class_<bjle::GaussianSketcher>(m, "GaussianSketcher")
        .def_static(
            "sample",
            [](std::uint64_t seed, std::size_t m_, std::size_t n, double lambda,
               int sign_zero) {
                return bjle::GaussianSketcher::sample(seed, m_, n, lambda,
                                                      {sign_zero});
            },
            py::arg("seed"), py::arg("m"), py::arg("n"), py::arg("lambda_"),
            py::arg("sign_zero") = 1)
        .def("project",
             [](const bjle::GaussianSketcher& s, const std::vector<double>& x) {
                 return vector_to_array(s.project(x));
             },
             py::arg("x"), "Apply the Gaussian matrix without quantizing.")
        .def("embed",
             [](const bjle::GaussianSketcher& s, const std::vector<double>& x) {
                 return s.embed(x);
             },
             py::arg("x"))
        .def("embed_dual",
             [](const bjle::GaussianSketcher& s, const std::vector<double>& x) {
                 return s.embed_dual(x);
             },
             py::arg("x"))
        .def_property_readonly("m", &bjle::GaussianSketcher::m)
        .def_property_readonly("n", &bjle::GaussianSketcher::n)
        .def_property_readonly("lambda_", &bjle::GaussianSketcher::lambda)
        .def_property_readonly("seed", &bjle::GaussianSketcher::seed)
        .def_property_readonly("sign_zero", &bjle::GaussianSketcher::sign_zero);

    m.def(
        "circulant_matvec",
        [](const std::vector<double>& xi, const std::vector<double>& x) {
            return vector_to_array(bjle::circulant_matvec(xi, x));
        },
        py::arg("xi"), py::arg("x"),
        "FFT correlation y_i = sum_j xi[(j - i) mod n] x[j].");

    py::class_<bjle::CirculantSketcher>(m, "CirculantSketcher")
        .def_static(
            "sample",
            [](std::uint64_t seed, std::size_t m_, std::size_t n, double lambda,
               const std::string& xi, const std::string& rows, int sign_zero) {
                return bjle::CirculantSketcher::sample(
                    seed, m_, n, lambda, bjle::xi_distribution_from_string(xi),
                    bjle::row_policy_from_string(rows), {sign_zero});
            },
            py::arg("seed"), py::arg("m"), py::arg("n"), py::arg("lambda_"),
            py::arg("xi") = "rademacher", py::arg("rows") = "first",
            py::arg("sign_zero") = 1)
        .def("apply_structured",
             [](const bjle::CirculantSketcher& s, const std::vector<double>& x) {
                 return vector_to_array(s.apply_structured(x));
             },
             py::arg("x"), "Apply the structured matrix without quantizing.")
        .def("embed_dual",
             [](const bjle::CirculantSketcher& s, const std::vector<double>& x) {
                 return s.embed_dual(x);
             },
             py::arg("x"))
        .def_property_readonly("m", &bjle::CirculantSketcher::m)
        .def_property_readonly("n", &bjle::CirculantSketcher::n)
        .def_property_readonly("n_pad", &bjle::CirculantSketcher::n_pad)
        .def_property_readonly("lambda_", &bjle::CirculantSketcher::lambda)
        .def_property_readonly("seed", &bjle::CirculantSketcher::seed);

    m.def(
        "estimate_distance",
        [](const bjle::BinaryCode& a, const bjle::BinaryCode& b, double lambda,
           std::size_t m_) {
            return bjle::estimate_distance(a, b, {lambda, m_});
        },
        py::arg("a"), py::arg("b"), py::arg("lambda_"), py::arg("m"),
        "Euclidean distance estimate sqrt(2 pi) lambda / m * hamming.");
    m.def("sm_bilinear", &bjle::sm_bilinear, py::arg("u"), py::arg("v"),
          "Cross-branch bilinear form of two dual codes.");
    m.def(
        "estimate_inner_product",
        [](const bjle::DualCode& u, const bjle::DualCode& v, double lambda,
           std::size_t m_) {
            return bjle::estimate_inner_product(u, v, {lambda, m_});
        },
        py::arg("u"), py::arg("v"), py::arg("lambda_"), py::arg("m"));
    m.def(
        "estimate_sq_distance",
        [](const bjle::DualCode& u, const bjle::DualCode& v, double lambda,
           std::size_t m_) {
            return bjle::estimate_sq_distance(u, v, {lambda, m_});
        },
        py::arg("u"), py::arg("v"), py::arg("lambda_"), py::arg("m"));
    m.def("expected_product", &bjle::expected_product, py::arg("a"), py::arg("b"),
          py::arg("lambda_"),
          "Exact mean of the dithered sign product, scaled by lambda^2.");
    m.def(
        "expected_distance_given_rows",
        [](const std::vector<double>& dots_x, const std::vector<double>& dots_y,
           double lambda) {
            return bjle::expected_distance_given_rows(dots_x, dots_y, lambda);
        },
        py::arg("dots_x"), py::arg("dots_y"), py::arg("lambda_"),
        "Exact conditional mean of estimate_distance given the projections.");

    py::class_<bjle::ComplexityReport>(m, "ComplexityReport")
        .def(py::init<>())
        .def_readwrite("epsilon", &bjle::ComplexityReport::epsilon)
        .def_readwrite("covering_upper", &bjle::ComplexityReport::covering_upper)
        .def_readwrite("gauss_localized", &bjle::ComplexityReport::gauss_localized)
        .def_readwrite("gauss_stderr", &bjle::ComplexityReport::gauss_stderr)
        .def_readwrite("trials", &bjle::ComplexityReport::trials)
        .def_readwrite("radius", &bjle::ComplexityReport::radius);

    py::class_<bjle::AdvisorConstants>(m, "AdvisorConstants")
        .def(py::init<>())
        .def_readwrite("c_lambda", &bjle::AdvisorConstants::c_lambda)
        .def_readwrite("c_eps", &bjle::AdvisorConstants::c_eps)
        .def_readwrite("c1", &bjle::AdvisorConstants::c1)
        .def_readwrite("c2", &bjle::AdvisorConstants::c2)
        .def_readwrite("c_r", &bjle::AdvisorConstants::c_r);

    py::class_<bjle::ParameterAdvice>(m, "ParameterAdvice")
        .def_readonly("lambda_", &bjle::ParameterAdvice::lambda)
        .def_readonly("m", &bjle::ParameterAdvice::m)
        .def_readonly("epsilon_used", &bjle::ParameterAdvice::epsilon_used)
        .def_readonly("alpha", &bjle::ParameterAdvice::alpha)
        .def_readonly("covering_term", &bjle::ParameterAdvice::covering_term)
        .def_readonly("width_term", &bjle::ParameterAdvice::width_term);

    m.def(
        "greedy_net",
        [](const Matrix& points, double eps) {
            const bjle::DatasetMatrix d = dataset_from_array(points);
            return bjle::greedy_net(d.view(), eps);
        },
        py::arg("points"), py::arg("eps"),
        "Indices of a farthest-point greedy net (cover and packing at eps).");
    m.def(
        "localized_gaussian_complexity",
        [](const Matrix& points, double eps, std::size_t trials, std::uint64_t seed) {
            const bjle::DatasetMatrix d = dataset_from_array(points);
            const bjle::WidthEstimate w =
                bjle::localized_gaussian_complexity(d.view(), eps, trials, seed);
            return py::make_tuple(w.mean, w.std_error);
        },
        py::arg("points"), py::arg("eps"), py::arg("trials") = 1000,
        py::arg("seed") = 0,
        "Monte-Carlo localized Gaussian width of the difference set.");
    m.def(
        "complexity_report",
        [](const Matrix& points, double eps, std::size_t trials, std::uint64_t seed) {
            const bjle::DatasetMatrix d = dataset_from_array(points);
            return bjle::compute_complexity_report(d.view(), eps, trials, seed);
        },
        py::arg("points"), py::arg("eps"), py::arg("trials") = 1000,
        py::arg("seed") = 0);
    m.def("advise_gaussian", &bjle::advise_gaussian, py::arg("radius"),
          py::arg("delta"), py::arg("report"),
          py::arg("constants") = bjle::AdvisorConstants{});
    m.def("advise_circulant", &bjle::advise_circulant, py::arg("radius"),
          py::arg("delta"), py::arg("eta"), py::arg("n"), py::arg("report"),
          py::arg("constants") = bjle::AdvisorConstants{});

    m.def(
        "verify_distance_embedding",
        [](const Matrix& points, double delta, double lambda, std::size_t m_,
           std::size_t seeds, std::uint64_t master_seed, bool wall_times) {
            const bjle::DatasetMatrix d = dataset_from_array(points);
            return json_to_py(
                bjle::verify_distance_embedding(d, delta, lambda, m_, seeds, master_seed)
                    .to_json(wall_times));
        },
        py::arg("points"), py::arg("delta"), py::arg("lambda_"), py::arg("m"),
        py::arg("seeds") = 1, py::arg("master_seed") = 0,
        py::arg("wall_times") = true,
        "Multi-seed distance campaign; returns the report as a dict.");
    m.def(
        "verify_inner_product_embedding",
        [](const Matrix& points, double delta, double lambda, std::size_t m_,
           std::size_t seeds, std::uint64_t master_seed, const std::string& kind,
           const std::string& xi, const std::string& rows, bool wall_times) {
            const bjle::DatasetMatrix d = dataset_from_array(points);
            return json_to_py(bjle::verify_inner_product_embedding(
                                  d, delta, lambda, m_, seeds, master_seed,
                                  bjle::sketch_kind_from_string(kind),
                                  bjle::xi_distribution_from_string(xi),
                                  bjle::row_policy_from_string(rows))
                                  .to_json(wall_times));
        },
        py::arg("points"), py::arg("delta"), py::arg("lambda_"), py::arg("m"),
        py::arg("seeds") = 1, py::arg("master_seed") = 0,
        py::arg("kind") = "gaussian", py::arg("xi") = "rademacher",
        py::arg("rows") = "first", py::arg("wall_times") = true,
        "Multi-seed inner-product campaign; returns the report as a dict.");
    m.def(
        "error_curve",
        [](const Matrix& points, double lambda, const std::vector<std::size_t>& m_list,
           std::size_t seeds, std::uint64_t master_seed, bool wall_times) {
            const bjle::DatasetMatrix d = dataset_from_array(points);
            return json_to_py(
                bjle::error_curve(d, lambda, m_list, seeds, master_seed)
                    .to_json(wall_times));
        },
        py::arg("points"), py::arg("lambda_"), py::arg("m_list"),
        py::arg("seeds") = 1, py::arg("master_seed") = 0,
        py::arg("wall_times") = true,
        "Median sup error vs m sweep; returns the table as a dict.");

    m.attr("rng_identifier") = bjle::rng_identifier;
#ifdef BJLE_VERSION_INFO
    m.attr("__version__") = BJLE_VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
