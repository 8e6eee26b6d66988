"""Generalized Mehler semigroups on truncated Hilbert spaces and their entrance laws."""

from .entrance import (
    EntranceLaw,
    Extremal,
    FromInitial,
    KappaPath,
    Mixture,
    Shifted,
    Zero,
    entrance_cf,
    entrance_cf_values,
    expected_mean,
    flow_residual,
    flow_residuals,
    kappa_eval,
    mean_projection,
    periodic_residual,
)
from .errors import ConfigError, DimensionError, DomainError, MehlerError, QuadratureError, UndefinedForKindError
from .evolution import (
    ConstantDiag,
    DiagonalSemigroup,
    PeriodicScalar,
    PeriodicScalarMod,
    ScalarContraction,
    contraction_certificate,
    evolve,
    sigma_eval,
)
from .mehler import (
    NEG_INF,
    CFValue,
    MehlerModel,
    QuadConfig,
    ck_residual,
    ck_residuals,
    exponent,
    exponent_batch,
    gaussian_covariance,
    mu_cf,
    mu_cf_values,
    positive_definite_check,
    transition_cf,
)
from .sampler import RngStream, SampleBatch, cf_stderr, empirical_cf, empirical_cf_values, sample_base, sample_entrance
from .space import ProbeSet, TruncatedSpace, apply_diag, inner, norm
from .symbols import (
    CompoundPoisson,
    GaussianForm,
    StableMixing,
    StableNorm,
    Sum,
    levy_tail_moment,
    negative_definite_check,
    stable_constant,
    symbol_eval,
    to_triple,
)
from .verify import Experiment, Report, experiment_from_config, hypothesis_certificates, run_experiment
from .config import CORE_PRESETS, PRESETS, Config, load_config, parse_config, preset

__version__ = "0.1.0"
