from ._core import (  # noqa: F401
    CoeffStat,
    DataError,
    FitResult,
    GaussianizeResult,
    IndependenceReport,
    LambertWParams,
    MardiaResult,
    NumericError,
    ParseError,
    RosnerReport,
    RosnerRow,
    ShapiroWilkResult,
    design_matrix,
    fit_series,
    gaussianize_h,
    gen_cov,
    generate_synthetic,
    greedy_interchange,
    haversine,
    impute_residuals,
    independence_test,
    lambert_w0,
    lambertw_transform,
    logdet_subset,
    mardia,
    psd_repair,
    read_mat,
    rosner,
    rosner_lambda,
    sample_covariance,
    shapiro_wilk,
    write_mat,
)

__all__ = [
    "CoeffStat", "DataError", "FitResult", "GaussianizeResult",
    "IndependenceReport", "LambertWParams", "MardiaResult", "NumericError",
    "ParseError", "RosnerReport", "RosnerRow", "ShapiroWilkResult",
    "design_matrix", "fit_series", "gaussianize_h", "gen_cov",
    "generate_synthetic", "greedy_interchange", "haversine",
    "impute_residuals", "independence_test", "lambert_w0",
    "lambertw_transform", "logdet_subset", "mardia", "psd_repair", "read_mat",
    "rosner", "rosner_lambda", "sample_covariance", "shapiro_wilk",
    "write_mat",
]
