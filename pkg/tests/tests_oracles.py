"""Independent oracles shared by the module and acceptance tests.

The Newton finder below locates fixed points of the second-iterate map T^2
in the realified 4-dimensional coordinates (Re u, Im u, Re v, Im v) using a
finite-difference Jacobian and a damped Newton step.  It shares no code
with the closed-form period-2 route it is used to check.
"""

import numpy as np


def _t2_real(params, x):
    u = complex(x[0], x[1])
    v = complex(x[2], x[3])
    g = params.alpha * v / (1 + params.beta * u)
    h = params.alpha * g / (1 + params.beta * v)
    return np.array([g.real, g.imag, h.real, h.imag])


def _newton(params, x0, itmax=80):
    x = np.asarray(x0, dtype=float)
    for _ in range(itmax):
        try:
            F = _t2_real(params, x) - x
        except ZeroDivisionError:
            return None
        nf = np.linalg.norm(F)
        if not np.isfinite(nf):
            return None
        if nf < 1e-13 * (1 + np.linalg.norm(x)):
            return x
        J = np.empty((4, 4))
        h = 1e-6 * (1 + np.linalg.norm(x))
        for j in range(4):
            xp = x.copy()
            xm = x.copy()
            xp[j] += h
            xm[j] -= h
            try:
                J[:, j] = (_t2_real(params, xp) - _t2_real(params, xm)) / (2 * h)
            except ZeroDivisionError:
                return None
        J -= np.eye(4)
        try:
            dx = np.linalg.solve(J, -F)
        except np.linalg.LinAlgError:
            return None
        lam = 1.0
        xn = x + dx
        for _ in range(8):
            xn = x + lam * dx
            try:
                fn = np.linalg.norm(_t2_real(params, xn) - xn)
            except ZeroDivisionError:
                fn = np.inf
            if np.isfinite(fn) and fn <= nf:
                break
            lam /= 2
        x = xn
    if np.linalg.norm(_t2_real(params, x) - x) < 1e-10 * (1 + np.linalg.norm(x)):
        return x
    return None


def newton_t2_fixed_points(params, rng, n_starts=100):
    """Fixed points of T^2 that are NOT fixed points of T (i.e. u != v),
    found from random starts; returns a list of (u, v) complex pairs."""
    eq2 = (params.alpha - 1) / params.beta if params.beta != 0 else None
    scale = max(1.0, abs(eq2) if eq2 is not None else 1.0,
                (1 + abs(params.alpha)) / max(abs(params.beta), 1e-9))
    found = []
    for _ in range(n_starts):
        x0 = rng.uniform(-1, 1, 4) * scale * rng.uniform(0.2, 2.0)
        x = _newton(params, x0)
        if x is None:
            continue
        u = complex(x[0], x[1])
        v = complex(x[2], x[3])
        if abs(u - v) < 1e-8 * (1 + abs(u)):
            continue  # fixed point of T itself
        found.append((u, v))
    return found
