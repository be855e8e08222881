"""Tolerance-based detection of periodic cycles and parameter classification.

detect_cycle scans candidate periods p = 1..p_max over the post-transient
tail of an orbit and reports the smallest p for which max |z[n+p] - z[n]|
stays below match_tol over a window of consecutive comparisons anchored at
the first post-transient index.  Minimality is enforced by re-checking
proper divisors on the same window.

classify_parameter_point aggregates cycle detection and a Lyapunov verdict
over several deterministic random initial pairs, turning "almost all initial
values behave like X" into a majority vote with a reported agreement
fraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .mapcore import (
    GUARD_EPSILON,
    STATUS_OVERFLOW,
    STATUS_UNDEFINED,
    DegenerateError,
    MapParameters,
    Orbit,
    OrbitSpec,
    equilibria,
    generate_orbit,
)

MATCH_TOL = 1e-7
P_MAX = 2048
CHAOS_TOL = 1e-3
AGREEMENT_FRACTION = 0.8

EXACTLY_PERIODIC = "ExactlyPeriodic"
CONVERGING = "ConvergingToCycle"
NO_CYCLE = "NoCycleFound"


class InsufficientDataError(ValueError):
    """Orbit too short (or not completed) for the requested detection."""


@dataclass
class CycleReport:
    detected: bool
    period: int | None
    representative_points: list[complex]
    residual: float
    window_start: int
    classification: str
    # smallest-residual candidate when nothing matched (useful for orbits
    # with strong near-recurrences that never lock into an exact cycle)
    best_period: int | None = None


def _window_residual(tail: np.ndarray, p: int, window: int) -> float:
    return float(np.max(np.abs(tail[p : p + window] - tail[:window])))


def _proper_divisors(p: int) -> list[int]:
    return [d for d in range(1, p) if p % d == 0]


def detect_cycle(
    orbit: Orbit,
    transient: int,
    p_max: int = P_MAX,
    match_tol: float = MATCH_TOL,
    window: int | None = None,
) -> CycleReport:
    """Find the minimal period of the post-transient tail of an orbit.

    The verification window starts at orbit index n = transient and spans
    `window` consecutive comparisons (default 3*p_max).  Requires
    len(points) >= transient + 2*p_max + window.
    """
    if window is None:
        window = 3 * p_max
    if not orbit.completed:
        raise InsufficientDataError(
            f"orbit terminated early ({orbit.status_text()}); cannot scan for cycles"
        )
    needed = transient + 2 * p_max + window
    if len(orbit.points) < needed:
        raise InsufficientDataError(
            f"orbit has {len(orbit.points)} points, need >= {needed} "
            f"(transient + 2*p_max + window)"
        )
    tail = np.asarray(orbit.points[transient + 1 :], dtype=complex)

    probe = min(8, window)
    found = None
    for p in range(1, p_max + 1):
        # cheap probe first; the full window only runs on near-matches
        r_probe = float(np.max(np.abs(tail[p : p + probe] - tail[:probe])))
        if r_probe >= match_tol:
            continue
        r = _window_residual(tail, p, window)
        if r < match_tol:
            found = (p, r)
            break

    if found is None:
        # report the strongest near-recurrence over a bounded window so
        # callers can see "almost periodic" structure
        w_best = min(window, 128)
        best = (math.inf, None)
        for p in range(1, p_max + 1):
            r = _window_residual(tail, p, w_best)
            if r < best[0]:
                best = (r, p)
        return CycleReport(
            detected=False,
            period=None,
            representative_points=[],
            residual=best[0],
            window_start=transient,
            classification=NO_CYCLE,
            best_period=best[1],
        )

    # enforce minimality: a passing proper divisor on the same window wins
    p, residual = found
    shrunk = True
    while shrunk:
        shrunk = False
        for d in _proper_divisors(p):
            r_d = _window_residual(tail, d, window)
            if r_d < match_tol:
                p, residual = d, r_d
                shrunk = True
                break

    scale = float(np.max(np.abs(tail[: window + p])))
    if residual <= 100 * np.finfo(float).eps * scale:
        label = EXACTLY_PERIODIC
    else:
        label = CONVERGING
    return CycleReport(
        detected=True,
        period=p,
        representative_points=[complex(z) for z in tail[:p]],
        residual=residual,
        window_start=transient,
        classification=label,
        best_period=p,
    )


# ---------------------------------------------------------------------------
# parameter-point classification


@dataclass(frozen=True)
class ClassifyBudgets:
    """Iteration budgets for classify_parameter_point.

    Defaults target high-period hunting (long transient); pass smaller
    numbers for quick interactive runs.  n_iterations is derived so the
    detect_cycle precondition holds exactly.
    """

    transient: int = 100_000
    p_max: int = P_MAX
    match_tol: float = MATCH_TOL
    window: int | None = None
    lyapunov_steps: int = 100_000
    chaos_tol: float = CHAOS_TOL
    guard_epsilon: float = GUARD_EPSILON

    @property
    def effective_window(self) -> int:
        return 3 * self.p_max if self.window is None else self.window

    @property
    def n_iterations(self) -> int:
        return self.transient + 2 * self.p_max + self.effective_window


QUICK_BUDGETS = ClassifyBudgets(transient=1_000, p_max=64, lyapunov_steps=20_000)

V_EQUILIBRIUM = "ConvergentToEquilibrium"
V_PERIODIC = "Periodic"
V_CHAOTIC = "Chaotic"
V_UNBOUNDED = "Unbounded"
V_UNDEFINED = "Undefined"
V_INCONCLUSIVE = "Inconclusive"


@dataclass
class SeedOutcome:
    kind: str
    period: int | None = None
    lambda_max: float | None = None


@dataclass
class ParameterClassification:
    verdict: str
    period: int | None
    agree_fraction: float
    lambda_max: float | None
    seed_outcomes: list[SeedOutcome] = field(default_factory=list)


def draw_initial_pair(rng_seed: int, stream: tuple[int, ...], seed_index: int):
    """Deterministic initial pair, uniform on the unit disk.

    The generator is keyed by (rng_seed, *stream, seed_index), so parallel
    evaluation order cannot perturb the draws.
    """
    rng = np.random.default_rng((rng_seed, *stream, seed_index))
    pts = []
    for _ in range(2):
        r = math.sqrt(rng.uniform())
        theta = rng.uniform(0.0, 2 * math.pi)
        pts.append(complex(r * math.cos(theta), r * math.sin(theta)))
    return pts[0], pts[1]


def _near_equilibrium(z: complex, eqs, tol: float = 1e-6) -> bool:
    for eq in eqs:
        if eq is not None and abs(z - eq) <= tol * (1 + abs(eq)):
            return True
    return False


def _classify_seed(
    params: MapParameters, zm1: complex, z0: complex, budgets: ClassifyBudgets
) -> SeedOutcome:
    from .lyapunov import largest_lyapunov  # local import: cycles <-> lyapunov

    spec = OrbitSpec(
        z_minus1=zm1,
        z0=z0,
        n_iterations=budgets.n_iterations,
        transient=budgets.transient,
        guard_epsilon=budgets.guard_epsilon,
    )
    orbit = generate_orbit(params, spec)
    if orbit.status == STATUS_UNDEFINED:
        return SeedOutcome(V_UNDEFINED)
    if orbit.status == STATUS_OVERFLOW:
        return SeedOutcome(V_UNBOUNDED)
    report = detect_cycle(
        orbit,
        transient=budgets.transient,
        p_max=budgets.p_max,
        match_tol=budgets.match_tol,
        window=budgets.effective_window,
    )
    try:
        eqs = equilibria(params)
    except DegenerateError:
        eqs = (0j, None)
    if report.detected:
        if report.period == 1 and _near_equilibrium(report.representative_points[0], eqs):
            return SeedOutcome(V_EQUILIBRIUM, period=1)
        return SeedOutcome(V_PERIODIC, period=report.period)
    lyap_spec = OrbitSpec(
        z_minus1=zm1,
        z0=z0,
        n_iterations=budgets.transient + budgets.lyapunov_steps,
        transient=budgets.transient,
        guard_epsilon=budgets.guard_epsilon,
    )
    try:
        lyap = largest_lyapunov(params, lyap_spec, chaos_tol=budgets.chaos_tol)
    except Exception:
        return SeedOutcome(V_INCONCLUSIVE)
    if lyap.lambda_max > budgets.chaos_tol:
        return SeedOutcome(V_CHAOTIC, lambda_max=lyap.lambda_max)
    if _near_equilibrium(orbit.points[-1], eqs):
        return SeedOutcome(V_EQUILIBRIUM, lambda_max=lyap.lambda_max)
    return SeedOutcome(V_INCONCLUSIVE, lambda_max=lyap.lambda_max)


def classify_parameter_point(
    params: MapParameters,
    n_seeds: int,
    rng_seed: int,
    budgets: ClassifyBudgets = ClassifyBudgets(),
    stream: tuple[int, ...] = (),
    agreement: float = AGREEMENT_FRACTION,
) -> ParameterClassification:
    """Majority verdict over n_seeds random initial pairs from the unit disk.

    A verdict (with its period, for Periodic) must be shared by at least
    `agreement` of the seeds; otherwise the point is Inconclusive.  Per-seed
    outcomes are retained in the report.
    """
    if n_seeds < 1:
        raise ValueError("n_seeds must be >= 1")
    outcomes = []
    for i in range(n_seeds):
        zm1, z0 = draw_initial_pair(rng_seed, stream, i)
        outcomes.append(_classify_seed(params, zm1, z0, budgets))

    votes: dict[tuple[str, int | None], int] = {}
    for out in outcomes:
        key = (out.kind, out.period if out.kind == V_PERIODIC else None)
        votes[key] = votes.get(key, 0) + 1
    (kind, period), count = max(votes.items(), key=lambda kv: kv[1])
    fraction = count / n_seeds
    lambdas = [o.lambda_max for o in outcomes if o.lambda_max is not None]
    lam = max(lambdas) if lambdas else None
    if fraction >= agreement:
        return ParameterClassification(kind, period, fraction, lam, outcomes)
    return ParameterClassification(V_INCONCLUSIVE, None, fraction, lam, outcomes)
