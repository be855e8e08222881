"""Linear stability of the two equilibria.

Linearizing z[n+1] = alpha*z[n]/(1 + beta*z[n-1]) about an equilibrium gives
a second order linear recurrence whose characteristic polynomial is monic
quadratic.  The zero equilibrium yields lambda^2 - alpha*lambda; the
nontrivial equilibrium (alpha-1)/beta yields lambda^2 - lambda + (alpha-1)/alpha.

Classification is by root moduli relative to the unit circle, with a
tolerance band tol_hyp around modulus 1 (numerics cannot represent "modulus
exactly one").  The source text also states modulus bands on |alpha| for the
nontrivial equilibrium; those are exposed as a cross-check verdict only,
because they disagree with the roots on part of the parameter plane (see
``paper_criterion_z2``).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .mapcore import DegenerateError, MapParameters

TOL_HYP = 1e-9

STABLE = "LocallyAsymptoticallyStable"
UNSTABLE = "Unstable"
NON_HYPERBOLIC = "NonHyperbolic"


@dataclass(frozen=True)
class CharacteristicPoly:
    """Monic quadratic lambda^2 + c1*lambda + c0."""

    c1: complex
    c0: complex


@dataclass
class StabilityReport:
    equilibrium: complex
    roots: tuple[complex, complex]
    root_moduli: tuple[float, float]
    classification: str
    paper_criterion_verdict: str | None = None
    agreement_flag: bool | None = None


def solve_quadratic(poly: CharacteristicPoly) -> tuple[complex, complex]:
    """Roots of a monic quadratic, larger magnitude first.

    Uses the sign-adjusted formula: the discriminant square root is oriented
    to avoid cancellation against c1, and the companion root is recovered as
    c0/root so both stay accurate when |c1| is large.
    """
    c1, c0 = poly.c1, poly.c0
    s = cmath.sqrt(c1 * c1 - 4 * c0)
    if (c1.real * s.real + c1.imag * s.imag) < 0:
        s = -s
    big = -(c1 + s) / 2
    if big == 0:
        # c1 and c0 both ~0: double root at 0
        return 0j, 0j
    return big, c0 / big


def char_poly_zero_eq(params: MapParameters) -> CharacteristicPoly:
    """Characteristic polynomial at the zero equilibrium: lambda^2 - alpha*lambda."""
    return CharacteristicPoly(c1=-params.alpha, c0=0j)


def char_poly_nonzero_eq(params: MapParameters) -> CharacteristicPoly:
    """Characteristic polynomial at (alpha-1)/beta: lambda^2 - lambda + (alpha-1)/alpha."""
    if params.alpha == 0:
        raise DegenerateError("alpha = 0: the nontrivial equilibrium has no linearization")
    return CharacteristicPoly(c1=-1 + 0j, c0=(params.alpha - 1) / params.alpha)


def classify_roots(
    roots: tuple[complex, complex], tol_hyp: float = TOL_HYP
) -> tuple[str, tuple[float, float]]:
    """Root-modulus trichotomy against the unit circle.

    A root beyond 1 + tol_hyp makes the point unstable regardless of the
    other root; otherwise a root within tol_hyp of the circle makes it
    non-hyperbolic; otherwise both are inside and it is stable.
    """
    moduli = (abs(roots[0]), abs(roots[1]))
    top = max(moduli)
    if top > 1 + tol_hyp:
        verdict = UNSTABLE
    elif top >= 1 - tol_hyp:
        verdict = NON_HYPERBOLIC
    else:
        verdict = STABLE
    return verdict, moduli


def classify(
    poly: CharacteristicPoly,
    equilibrium: complex = 0j,
    tol_hyp: float = TOL_HYP,
) -> StabilityReport:
    roots = solve_quadratic(poly)
    verdict, moduli = classify_roots(roots, tol_hyp)
    return StabilityReport(
        equilibrium=equilibrium,
        roots=roots,
        root_moduli=moduli,
        classification=verdict,
    )


def paper_criterion_z2(params: MapParameters) -> str:
    """Verdict implied by the source text's |alpha| bands for (alpha-1)/beta.

    Stated band: stable iff 1/3 <= |alpha| <= 4/3, unstable for
    0 < |alpha| < 1/3; the "iff" makes |alpha| > 4/3 unstable as well.
    This band is provably wrong on part of the plane (already for real
    alpha = 1/2 the characteristic roots are the golden ratio pair), so it
    is reported as a cross-check verdict next to the root-based one, never
    used for classification.
    """
    if params.alpha == 0:
        raise DegenerateError("alpha = 0: criterion undefined")
    mod = abs(params.alpha)
    if 1 / 3 <= mod <= 4 / 3:
        return STABLE
    return UNSTABLE


def stability_reports(
    params: MapParameters, tol_hyp: float = TOL_HYP
) -> list[StabilityReport]:
    """Root-based reports for both equilibria, with the |alpha|-band
    cross-check attached to the nontrivial one."""
    reports = [classify(char_poly_zero_eq(params), equilibrium=0j, tol_hyp=tol_hyp)]
    if params.beta != 0 and params.alpha != 0:
        z2 = (params.alpha - 1) / params.beta
        report = classify(char_poly_nonzero_eq(params), equilibrium=z2, tol_hyp=tol_hyp)
        report.paper_criterion_verdict = paper_criterion_z2(params)
        report.agreement_flag = report.paper_criterion_verdict == report.classification
        reports.append(report)
    return reports
