"""Core definition of the complex delay logistic map.

The map is the second-order rational recurrence

    z[n+1] = alpha * z[n] / (1 + beta * z[n-1])

with complex parameters alpha, beta and complex initial pair (z[-1], z[0]).
The denominator can vanish, so every iteration is guarded: orbits that come
within ``guard_epsilon`` of the singular set stop with an "undefined" status
instead of emitting garbage, and orbits whose modulus exceeds the overflow
ceiling stop with an "overflow" status instead of producing inf/nan.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

GUARD_EPSILON = 1e-12
OVERFLOW_CEILING = 1e150

STATUS_COMPLETED = "completed"
STATUS_UNDEFINED = "undefined"
STATUS_OVERFLOW = "overflow"


class UndefinedError(ArithmeticError):
    """The denominator 1 + beta*z[n-1] is within guard_epsilon of zero."""


class OrbitOverflowError(ArithmeticError):
    """The next iterate's modulus exceeds the overflow ceiling."""


class DegenerateError(ValueError):
    """A formula's precondition (beta != 0, alpha != 0, ...) is violated."""


def _require_finite(z: complex, name: str) -> None:
    if not (cmath.isfinite(z)):
        raise ValueError(f"{name} must be finite, got {z!r}")


@dataclass(frozen=True)
class MapParameters:
    """The complex pair (alpha, beta) selecting one instance of the map."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        _require_finite(self.alpha, "alpha")
        _require_finite(self.beta, "beta")


@dataclass(frozen=True)
class OrbitSpec:
    """Initial pair, iteration budget and guard threshold for one orbit.

    ``transient`` marks how many leading iterates downstream analyses skip;
    the raw orbit always contains them.
    """

    z_minus1: complex
    z0: complex
    n_iterations: int
    transient: int = 0
    guard_epsilon: float = GUARD_EPSILON

    def __post_init__(self):
        _require_finite(self.z_minus1, "z_minus1")
        _require_finite(self.z0, "z0")
        if self.n_iterations < 1:
            raise ValueError("n_iterations must be positive")
        if self.transient < 0 or self.transient >= self.n_iterations:
            raise ValueError("transient must satisfy 0 <= transient < n_iterations")
        if self.guard_epsilon <= 0:
            raise ValueError("guard_epsilon must be positive")


@dataclass
class Orbit:
    """A produced trajectory.  points[k] holds z[k-1], i.e. index n runs
    from -1.  status is one of the STATUS_* strings; fail_step records the
    step n at which generation stopped (None when completed)."""

    points: list[complex]
    status: str = STATUS_COMPLETED
    fail_step: int | None = None

    @property
    def completed(self) -> bool:
        return self.status == STATUS_COMPLETED

    def status_text(self) -> str:
        """Render status in the report form used by the CSV/JSON exports."""
        if self.status == STATUS_COMPLETED:
            return "Completed"
        if self.status == STATUS_UNDEFINED:
            return f"UndefinedAtStep({self.fail_step})"
        return f"OverflowAtStep({self.fail_step})"


def iterate_step(
    params: MapParameters,
    z_curr: complex,
    z_prev: complex,
    guard_epsilon: float = GUARD_EPSILON,
) -> complex:
    """One application of the map: alpha*z_curr / (1 + beta*z_prev).

    Raises UndefinedError when the denominator is within guard_epsilon of
    zero, OrbitOverflowError when the result exceeds the overflow ceiling.
    """
    if guard_epsilon <= 0:
        raise ValueError("guard_epsilon must be positive")
    den = 1 + params.beta * z_prev
    if abs(den) <= guard_epsilon:
        raise UndefinedError(f"1 + beta*z_prev = {den!r} is within {guard_epsilon} of 0")
    z_next = params.alpha * z_curr / den
    if abs(z_next) > OVERFLOW_CEILING:
        raise OrbitOverflowError(f"|z_next| = {abs(z_next)!r} exceeds {OVERFLOW_CEILING}")
    return z_next


def generate_orbit(params: MapParameters, spec: OrbitSpec) -> Orbit:
    """Iterate the map for spec.n_iterations steps from (z[-1], z[0]).

    Guard and overflow events are embedded in the returned status rather
    than raised; the points produced before the event are kept.  The result
    is a pure function of (params, spec).
    """
    alpha = params.alpha
    beta = params.beta
    guard = spec.guard_epsilon
    points = [complex(spec.z_minus1), complex(spec.z0)]
    z_prev = points[0]
    z_curr = points[1]
    for step in range(1, spec.n_iterations + 1):
        den = 1 + beta * z_prev
        if abs(den) <= guard:
            return Orbit(points, STATUS_UNDEFINED, step)
        z_next = alpha * z_curr / den
        if abs(z_next) > OVERFLOW_CEILING:
            return Orbit(points, STATUS_OVERFLOW, step)
        points.append(z_next)
        z_prev = z_curr
        z_curr = z_next
    return Orbit(points)


def equilibria(
    params: MapParameters, guard_epsilon: float = GUARD_EPSILON
) -> tuple[complex, complex | None]:
    """The two fixed points: 0 and (alpha-1)/beta.

    Returns (0, None) when beta == 0 (only the trivial equilibrium exists).
    Raises DegenerateError when the nontrivial equilibrium sits on the
    forbidden set, i.e. 1 + beta*z is within guard_epsilon of zero.
    """
    if params.beta == 0:
        return 0j, None
    z2 = (params.alpha - 1) / params.beta
    if abs(1 + params.beta * z2) <= guard_epsilon:
        # 1 + beta*z2 = alpha, so this only happens for alpha ~ 0
        raise DegenerateError("nontrivial equilibrium lies on the forbidden set")
    return 0j, z2


def trap_ball_radius(params: MapParameters) -> float | None:
    """Radius of the invariant ball B(0, eps) around the origin.

    Whenever |alpha| < 1 and beta != 0, any two consecutive iterates inside
    B(0, eps) with eps <= (1-|alpha|)/|beta| keep the next iterate inside.
    Returns None when the |alpha| < 1 hypothesis fails or beta == 0.
    """
    mod_alpha = abs(params.alpha)
    mod_beta = abs(params.beta)
    if mod_alpha >= 1 or mod_beta == 0:
        return None
    return (1 - mod_alpha) / mod_beta
