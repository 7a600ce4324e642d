"""Exact calculus for last multipliers of polynomial holomorphic systems.

The package verifies (never numerically approximates) multiplier identities
for polynomial vector fields, gradient fields and Poisson bivectors on C^n,
converts every object to its real counterpart on R^{2n}, and cross-checks
symbolic zeros by deterministic trajectory integration.
"""

from .scalars import GaussianRational, sqrt_gaussian
from .poly import CPoly, RPoly
from .linsolve import LinearSolution, solve_linear
from .calculus import (
    Form,
    Multivector,
    VectorField,
    VolumeForm,
    apply_field,
    curl,
    divergence,
    flat,
    interior_product,
    lie_bracket,
    pairing,
    partial_d,
    scaled_partial_d,
    sharp,
    twisted_partial_d,
    wedge,
)
from .multipliers import (
    Check,
    DarbouxPair,
    ExponentSolution,
    adjoint_apply,
    darboux_cofactor,
    darboux_multiplier_search,
    divergence_type_check,
    inverse_from_frame,
    inverse_from_symmetries,
    is_first_integral,
    is_inverse_multiplier,
    is_last_multiplier,
    product_combine,
    symmetry_coefficient,
    symmetry_defect,
)
from .metric import HoloMetric, conformal_equivalence, gradient, gradient_lm_residual, laplacian
from .poisson import (
    Bivector,
    Trivector,
    bivector_lm_check,
    dim4_exactness,
    exact_hamiltonian_check,
    exactness_check,
    hamiltonian_field,
    hamiltonian_lm_residual,
    is_poisson,
    is_unimodular_with,
    jacobiator,
    modular_field,
    pfaffian4,
    poisson_bracket,
    self_multiplier_residual,
)
from .realify import (
    RealBivector,
    RealMetric,
    RealVectorField,
    modsq,
    real_divergence,
    real_gradient,
    real_hamiltonian,
    real_lm_residual,
    realify_field,
    realify_metric,
    realify_poisson,
)
from .numcheck import SplitMix64, Trajectory, first_integral_drift, integrate, residual_sample
from .parser import ParseError, parse_expr
from .manifest import Manifest, ManifestError, Report, emit_report, load_manifest, parse_manifest, run_tasks

__version__ = "0.1.0"
