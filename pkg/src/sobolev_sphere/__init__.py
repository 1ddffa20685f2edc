"""Sobolev tests of uniformity on the hypersphere.

Rayleigh, Bingham, quadratic score and data-driven Sobolev tests, including
the variant whose selected order is floored at 2, together with samplers for
rotationally symmetric alternatives, local asymptotic power and a Monte
Carlo harness for rejection frequencies.
"""

from .asymptotics import (
    calibrate_critical_value,
    limit_law,
    noncentrality_xi,
    power_curve,
    theoretical_power,
)
from .distributions import (
    ChiSquareMixture,
    chi2_cdf,
    chi2_quantile,
    mixture_cdf,
    noncentral_chi2_cdf,
)
from .harness import (
    ExperimentGrid,
    RejectionTable,
    emit_plot_script,
    emit_results,
    load_grid,
    read_results,
    run_experiment,
)
from .kernels import (
    KernelSpec,
    gegenbauer_coefficient,
    harmonic_dimension,
    kernel_h,
    kernel_h_all,
    moment_a,
    weight_w,
)
from .models import (
    AngularModel,
    ContiguousSpec,
    ModelError,
    directional_cauchy,
    exp_power,
    resolve_contiguous,
    sample_model,
    von_mises_fisher,
    watson,
)
from .sphere import (
    SeedSpec,
    UnitSample,
    gram_cosines,
    load_sample,
    random_rotation,
    sample_uniform_sphere,
)
from .uniformity import (
    SelectionConfig,
    TestOutcome,
    WeightSequence,
    adapted_test,
    bingham_statistic,
    bingham_test,
    data_driven_test,
    degree_terms,
    penalized_score,
    rayleigh_statistic,
    rayleigh_test,
    run_test,
    score_statistic,
    score_test,
    select_k,
    sobolev_statistic,
    sobolev_test,
)

__version__ = "0.1.0"

__all__ = [
    "AngularModel",
    "ChiSquareMixture",
    "ContiguousSpec",
    "ExperimentGrid",
    "KernelSpec",
    "ModelError",
    "RejectionTable",
    "SeedSpec",
    "SelectionConfig",
    "TestOutcome",
    "UnitSample",
    "WeightSequence",
    "adapted_test",
    "bingham_statistic",
    "bingham_test",
    "calibrate_critical_value",
    "chi2_cdf",
    "chi2_quantile",
    "data_driven_test",
    "degree_terms",
    "directional_cauchy",
    "emit_plot_script",
    "emit_results",
    "exp_power",
    "gegenbauer_coefficient",
    "gram_cosines",
    "harmonic_dimension",
    "kernel_h",
    "kernel_h_all",
    "limit_law",
    "load_grid",
    "load_sample",
    "mixture_cdf",
    "moment_a",
    "noncentral_chi2_cdf",
    "noncentrality_xi",
    "penalized_score",
    "power_curve",
    "random_rotation",
    "rayleigh_statistic",
    "rayleigh_test",
    "read_results",
    "resolve_contiguous",
    "run_experiment",
    "run_test",
    "sample_model",
    "sample_uniform_sphere",
    "score_statistic",
    "score_test",
    "select_k",
    "sobolev_statistic",
    "sobolev_test",
    "theoretical_power",
    "von_mises_fisher",
    "watson",
    "weight_w",
]
