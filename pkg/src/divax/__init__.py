"""Relative entropies of order alpha, the deformed logarithm, and numerical
checks of the functional equations that characterize them."""
from ._backend import BACKEND
from .axioms import (
    AxiomReport,
    Axiom,
    Measure,
    Tolerance,
    Verdict,
    check_3_semisymmetry,
    check_alpha_recursivity,
    check_decisivity,
    check_expansibility,
    check_generalized_additivity,
    check_self_distance,
    run_axiom_suite,
)
from .divergence import relative_entropy, relative_entropy_closed
from .qlog import Alpha, ln_alpha, ln_alpha_inverse_arg
from .reconstruction import (
    InitialElement,
    SumFormParams,
    constraint_b_equals_c,
    iterate_recursion,
    reconstruct,
    recursion_step,
    shannon_information_function,
    sum_form_measure,
    symmetry_equation_residual,
)
from .simplex import (
    DistPair,
    Distribution,
    Domain,
    SamplerConfig,
    pow_convention,
    ratio_convention,
    sample_simplex,
    validate,
)

__version__ = "0.1.0"
