"""Semigroup calculus over the gaussian measure.

Normalized Hermite expansions, the Ornstein-Uhlenbeck and subordinated
Poisson-type semigroups, gaussian maximal functions, approach cones, and a
small experiment harness for checking the semigroup identities and
non-tangential boundary convergence numerically.
"""

from mehler.catalog import CLASS_TAGS, TestFunction, catalog, catalog_entry
from mehler.cones import (
    CONE_KINDS,
    ApproachPath,
    ConeSpec,
    cone_contains,
    cone_path,
    tangential_path,
)
from mehler.experiments import (
    ConvergenceRecord,
    ExperimentConfig,
    contrast_csv,
    convergence_csv,
    domination_csv,
    run_convergence,
    run_domination_report,
    run_tangential_contrast,
    run_verify_suite,
    to_json,
)
from mehler.hermite import (
    DEFAULT_CONFIG,
    MAX_DEGREE,
    FunctionRep,
    HermiteSeries,
    LogGrid,
    MultiIndex,
    NonFiniteValueError,
    PointwiseFunction,
    QuadratureConfig,
    SeriesFunction,
    as_function,
    enumerate_multi_indices,
    fourier_hermite_coeff,
    gauss_hermite_grid,
    generator_apply,
    hermite_deriv,
    hermite_eval,
    hermite_expand,
    project_chaos,
)
from mehler.measure import (
    GaussianBall,
    MaximalEstimate,
    gaussian_ball_measure,
    gaussian_density,
    gaussian_norm,
    hl_maximal,
)
from mehler.ou import (
    OU_ROUTES,
    OUEvaluation,
    maximal_bound_report,
    nontangential_maximal,
    ou_apply,
    ou_apply_change_of_var,
    ou_apply_kernel,
    ou_apply_spectral,
    ou_evaluate,
    ou_maximal,
    ou_transform,
)
from mehler.poisson import (
    POISSON_ROUTES,
    SUBORDINATION_SCHEMES,
    SubordinationQuadrature,
    bochner_identity_error,
    poisson_apply,
    poisson_apply_kernel,
    poisson_apply_spectral,
    poisson_apply_subordination,
    poisson_maximal,
    poisson_nontangential_maximal,
    poisson_transform,
    subordination_rule,
)

__version__ = "0.1.0"

__all__ = [
    "CLASS_TAGS",
    "CONE_KINDS",
    "DEFAULT_CONFIG",
    "MAX_DEGREE",
    "OU_ROUTES",
    "POISSON_ROUTES",
    "SUBORDINATION_SCHEMES",
    "ApproachPath",
    "ConeSpec",
    "ConvergenceRecord",
    "ExperimentConfig",
    "FunctionRep",
    "GaussianBall",
    "HermiteSeries",
    "LogGrid",
    "MaximalEstimate",
    "MultiIndex",
    "NonFiniteValueError",
    "OUEvaluation",
    "PointwiseFunction",
    "QuadratureConfig",
    "SeriesFunction",
    "SubordinationQuadrature",
    "TestFunction",
    "as_function",
    "bochner_identity_error",
    "catalog",
    "catalog_entry",
    "cone_contains",
    "cone_path",
    "contrast_csv",
    "convergence_csv",
    "domination_csv",
    "enumerate_multi_indices",
    "fourier_hermite_coeff",
    "gauss_hermite_grid",
    "gaussian_ball_measure",
    "gaussian_density",
    "gaussian_norm",
    "generator_apply",
    "hermite_deriv",
    "hermite_eval",
    "hermite_expand",
    "hl_maximal",
    "maximal_bound_report",
    "nontangential_maximal",
    "ou_apply",
    "ou_apply_change_of_var",
    "ou_apply_kernel",
    "ou_apply_spectral",
    "ou_evaluate",
    "ou_maximal",
    "ou_transform",
    "poisson_apply",
    "poisson_apply_kernel",
    "poisson_apply_spectral",
    "poisson_apply_subordination",
    "poisson_maximal",
    "poisson_nontangential_maximal",
    "poisson_transform",
    "project_chaos",
    "run_convergence",
    "run_domination_report",
    "run_tangential_contrast",
    "run_verify_suite",
    "subordination_rule",
    "tangential_path",
    "to_json",
]
