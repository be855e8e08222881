"""Numerical dynamics toolkit for the complex delay logistic map.

    z[n+1] = alpha * z[n] / (1 + beta * z[n-1])

Equilibria and their linear stability, closed-form prime period-2 cycles,
tolerance-based detection of higher-order cycles, largest Lyapunov
exponents, trap-ball boundedness, and deterministic parameter sweeps.
"""

from .mapcore import (
    GUARD_EPSILON,
    OVERFLOW_CEILING,
    DegenerateError,
    MapParameters,
    Orbit,
    OrbitSpec,
    OrbitOverflowError,
    UndefinedError,
    equilibria,
    generate_orbit,
    iterate_step,
    trap_ball_radius,
)
from .stability import (
    CharacteristicPoly,
    StabilityReport,
    char_poly_nonzero_eq,
    char_poly_zero_eq,
    classify,
    paper_criterion_z2,
    stability_reports,
)
from .period2 import (
    JacobianT2,
    PeriodTwoCycle,
    jacobian_t2,
    period_two_cycles,
    period_two_stability,
)
from .cycles import (
    ClassifyBudgets,
    CycleReport,
    InsufficientDataError,
    ParameterClassification,
    classify_parameter_point,
    detect_cycle,
)
from .lyapunov import (
    LyapunovReport,
    OrbitTerminatedError,
    largest_lyapunov,
    tangent_jacobian,
)

__version__ = "0.1.0"
