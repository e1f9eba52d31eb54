"""Binarized random-projection sketches for Euclidean distance and
inner-product queries: dense Gaussian and fast circulant one-bit embeddings
with dithered quantization, bit-packed codes, complexity-based parameter
advice, and multi-seed verification campaigns."""

from bjle._core import (
    AdvisorConstants,
    BinaryCode,
    CirculantSketcher,
    ComplexityReport,
    DualCode,
    FormatError,
    GaussianSketcher,
    ParameterAdvice,
    RegimeError,
    __version__,
    advise_circulant,
    advise_gaussian,
    bias_bound,
    circulant_matvec,
    collision_probability,
    complexity_report,
    default_lambda,
    error_curve,
    estimate_distance,
    estimate_inner_product,
    estimate_sq_distance,
    expected_distance_given_rows,
    expected_product,
    greedy_net,
    hamming,
    localized_gaussian_complexity,
    pack,
    quantize_signs,
    rng_identifier,
    signed_dot,
    sm_bilinear,
    verify_distance_embedding,
    verify_inner_product_embedding,
)

__all__ = [
    "AdvisorConstants",
    "BinaryCode",
    "CirculantSketcher",
    "ComplexityReport",
    "DualCode",
    "FormatError",
    "GaussianSketcher",
    "ParameterAdvice",
    "RegimeError",
    "__version__",
    "advise_circulant",
    "advise_gaussian",
    "bias_bound",
    "circulant_matvec",
    "collision_probability",
    "complexity_report",
    "default_lambda",
    "error_curve",
    "estimate_distance",
    "estimate_inner_product",
    "estimate_sq_distance",
    "expected_distance_given_rows",
    "expected_product",
    "greedy_net",
    "hamming",
    "localized_gaussian_complexity",
    "pack",
    "quantize_signs",
    "rng_identifier",
    "signed_dot",
    "sm_bilinear",
    "verify_distance_embedding",
    "verify_inner_product_embedding",
]
