"""Prime period-2 cycles in closed form and their local stability.

A period-2 solution ..., phi, psi, phi, psi, ... satisfies
phi = alpha*psi/(1 + beta*phi) and psi = alpha*phi/(1 + beta*psi).
Eliminating one variable gives the closed forms

    phi, psi = [-(1+alpha)*beta -+ sqrt((1 - 2*alpha - 3*alpha^2) * beta^2)] / (2*beta^2)

which exist (with phi != psi, distinct from both equilibria) exactly when the
discriminant 1 - 2*alpha - 3*alpha^2 = -(3*alpha - 1)*(alpha + 1) is nonzero.

Stability goes through the second iterate T^2 of the planar map
T(u, v) = (v, alpha*v/(1 + beta*u)): the cycle is a fixed point of T^2 and
its Jacobian there has trace chi and determinant lambda_det.  Two verdicts
are produced: the real Jury-style test |chi| < 1 + |lambda_det| < 2 applied
to moduli (as in the source text) and the direct eigenvalue-modulus test.
They are not equivalent for complex chi, lambda_det; the eigenvalue test is
the authoritative one downstream.

Useful identity: beta*phi and beta*psi depend only on alpha, so chi,
lambda_det and the eigenvalues are functions of alpha alone.  Moreover
(1 + beta*phi)*(1 + beta*psi) = alpha^2, so the cycle never touches the
forbidden set unless alpha is close to 0.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .mapcore import GUARD_EPSILON, DegenerateError, MapParameters
from .stability import TOL_HYP, CharacteristicPoly, solve_quadratic

BRANCH_MINUS_PLUS = "minus_plus"
BRANCH_PLUS_MINUS = "plus_minus"

# relative tolerance for "coincides with an equilibrium / degenerate discriminant"
_COINCIDE_TOL = 1e-12


@dataclass(frozen=True)
class PeriodTwoCycle:
    phi: complex
    psi: complex
    branch: str


@dataclass
class JacobianT2:
    """Entries and invariants of the T^2 Jacobian at (phi, psi)."""

    g_u: complex
    g_v: complex
    h_u: complex
    h_v: complex
    chi: complex
    lambda_det: complex
    eigenvalues: tuple[complex, complex]


@dataclass
class PeriodTwoStabilityReport:
    paper_verdict: str  # "stable" / "unstable" from |chi| < 1 + |lambda| < 2
    eigen_verdict: str  # "stable" / "unstable" from eigenvalue moduli
    agreement_flag: bool
    chi_abs: float
    lambda_abs: float
    eigen_moduli: tuple[float, float]


def period_two_cycles(
    params: MapParameters, guard_epsilon: float = GUARD_EPSILON
) -> tuple[PeriodTwoCycle, PeriodTwoCycle] | None:
    """Both closed-form branches, or None when no prime period-2 cycle exists.

    The two branches carry the same two-point set with the roles of phi and
    psi swapped.  None is returned when the discriminant vanishes (the
    formulas collapse onto an equilibrium) or a cycle point coincides with
    an equilibrium or the forbidden set.
    """
    alpha, beta = params.alpha, params.beta
    if beta == 0:
        raise DegenerateError("beta = 0: period-2 closed forms divide by beta^2")
    disc = (1 + (-2 - 3 * alpha) * alpha) * beta * beta
    root = cmath.sqrt(disc)
    base = (-0.5 - 0.5 * alpha) * beta
    b2 = beta * beta
    phi = (base - 0.5 * root) / b2
    psi = (base + 0.5 * root) / b2

    scale = 1 + abs(phi) + abs(psi)
    if abs(phi - psi) <= _COINCIDE_TOL * scale:
        return None
    eq2 = (alpha - 1) / beta
    for z in (phi, psi):
        if abs(z) <= _COINCIDE_TOL * scale or abs(z - eq2) <= _COINCIDE_TOL * scale:
            return None
        if abs(1 + beta * z) <= guard_epsilon:
            return None
    return (
        PeriodTwoCycle(phi, psi, BRANCH_MINUS_PLUS),
        PeriodTwoCycle(psi, phi, BRANCH_PLUS_MINUS),
    )


def jacobian_t2(
    params: MapParameters,
    cycle: PeriodTwoCycle,
    guard_epsilon: float = GUARD_EPSILON,
) -> JacobianT2:
    """Analytic Jacobian of T^2 at (phi, psi).

    With g(u,v) = alpha*v/(1+beta*u) and h(u,v) = alpha*g(u,v)/(1+beta*v):

        g_u = -alpha*beta*psi/(1+beta*phi)^2          g_v = alpha/(1+beta*phi)
        h_u = -alpha^2*beta*psi/((1+beta*phi)^2 (1+beta*psi))
        h_v = alpha^2/((1+beta*phi)(1+beta*psi)) - alpha^2*beta*psi/((1+beta*phi)(1+beta*psi)^2)
    """
    alpha, beta = params.alpha, params.beta
    phi, psi = cycle.phi, cycle.psi
    d1 = 1 + beta * phi
    d2 = 1 + beta * psi
    if abs(d1) <= guard_epsilon or abs(d2) <= guard_epsilon:
        raise DegenerateError("cycle point within guard_epsilon of the forbidden set")
    a2 = alpha * alpha
    g_u = -alpha * beta * psi / (d1 * d1)
    g_v = alpha / d1
    h_u = -a2 * beta * psi / (d1 * d1 * d2)
    h_v = a2 / (d1 * d2) - a2 * beta * psi / (d1 * d2 * d2)
    chi = g_u + h_v
    lam = g_u * h_v - g_v * h_u
    eig = solve_quadratic(CharacteristicPoly(c1=-chi, c0=lam))
    return JacobianT2(g_u, g_v, h_u, h_v, chi, lam, eig)


def period_two_stability(jac: JacobianT2, tol_hyp: float = TOL_HYP) -> PeriodTwoStabilityReport:
    """Both stability verdicts for a period-2 cycle.

    paper_verdict applies |chi| < 1 + |lambda_det| < 2 to the moduli;
    eigen_verdict asks both eigenvalues of the T^2 Jacobian to lie strictly
    inside the unit disk (modulus < 1 - tol_hyp).
    """
    c = abs(jac.chi)
    l = abs(jac.lambda_det)
    paper = "stable" if (c < 1 + l < 2) else "unstable"
    moduli = (abs(jac.eigenvalues[0]), abs(jac.eigenvalues[1]))
    eigen = "stable" if max(moduli) < 1 - tol_hyp else "unstable"
    return PeriodTwoStabilityReport(
        paper_verdict=paper,
        eigen_verdict=eigen,
        agreement_flag=paper == eigen,
        chi_abs=c,
        lambda_abs=l,
        eigen_moduli=moduli,
    )
