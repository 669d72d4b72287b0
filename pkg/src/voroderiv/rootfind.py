"""Simultaneous root finding for dense complex polynomials.

Aberth-Ehrlich iteration with Newton corrections, started on a circle
sized from the Fujiwara root bound.  Polynomial evaluation rescales on
the fly so that degrees of several hundred with widely spread roots do
not overflow double precision.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _poly
from ._poly import DOUBLE, EXTENDED
from .errors import NoConvergence, ZeroPolynomial

__all__ = ["RootSet", "fujiwara_bound", "solve"]

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))

MAX_SWEEPS = {DOUBLE: 200, EXTENDED: 500}


@dataclass(frozen=True)
class RootSet:
    """Roots with per-root residuals |p|/|p'| and convergence flags."""

    roots: np.ndarray
    residuals: np.ndarray
    converged: np.ndarray

    def __len__(self):
        return len(self.roots)

    @property
    def all_converged(self):
        return bool(self.converged.all())

    def converged_roots(self):
        return self.roots[self.converged]


def fujiwara_bound(p):
    """2 max_k |a_{deg-k}/a_deg|^{1/k}; contains every root."""
    if isinstance(p, np.ndarray) and p.dtype == object:
        p = _poly.trim(p)
    else:
        p = _poly.trim(_poly.asarray(p, DOUBLE))
    if _poly.degree(p) < 1 or abs(p[-1]) == 0.0:
        raise ZeroPolynomial("need degree >= 1")
    m = _poly.degree(p)
    lead = abs(p[-1])
    best = 0.0
    for k in range(1, m + 1):
        a = abs(p[m - k]) / lead
        if a > 0.0:
            best = max(best, float(a) ** (1.0 / k))
    return 2.0 * best


def _horner_scaled(coeffs, z):
    """p(z), p'(z) up to a common per-point scale; returns (p, dp).

    Accumulators are renormalized whenever they grow past 1e120, and
    remaining coefficients are fed in with the inverse scale.  The
    Newton ratio p/dp is unaffected.
    """
    z = np.asarray(z)
    p = np.zeros_like(z)
    dp = np.zeros_like(z)
    e = np.zeros(z.shape, dtype=float)  # log2 of the running scale
    for a in coeffs[::-1]:
        dp = dp * z + p
        p = p * z + a * np.exp2(-e)
        big = np.abs(p) > 1e120
        if big.any():
            p[big] *= np.exp2(-400.0)
            dp[big] *= np.exp2(-400.0)
            e[big] += 400.0
    return p, dp


def _aberth_double(p, tolerance, start, max_sweeps, eval_pd=None):
    if eval_pd is None:
        eval_pd = lambda z: _horner_scaled(p, z)
    m = _poly.degree(p)
    roots = start.copy()
    active = np.ones(m, dtype=bool)
    converged = np.zeros(m, dtype=bool)
    tiny = 1e-300
    for _ in range(max_sweeps):
        pv, dv = eval_pd(roots)
        newton = pv / np.where(np.abs(dv) < tiny, tiny, dv)
        diff = roots[:, None] - roots[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        sums = inv.sum(axis=1)
        denom = 1.0 - newton * sums
        denom = np.where(np.abs(denom) < tiny, tiny, denom)
        corr = newton / denom
        step = np.where(active, corr, 0.0)
        roots = roots - step
        done = np.abs(corr) < tolerance * (1.0 + np.abs(roots))
        converged |= done & active
        active &= ~done
        if not active.any():
            break
    pv, dv = eval_pd(roots)
    guard = np.abs(dv) < tiny
    resid = np.abs(pv) / np.where(guard, tiny, np.abs(dv))
    if guard.any():
        # derivative underflow: fall back to nearest-neighbour cluster radius
        diff = roots[:, None] - roots[None, :]
        np.fill_diagonal(diff, np.inf)
        resid[guard] = np.abs(diff).min(axis=1)[guard]
    return RootSet(roots=roots, residuals=resid, converged=converged)


def _aberth_extended(p, tolerance, start, max_sweeps):
    import mpmath

    with _poly.workprec():
        m = _poly.degree(p)
        roots = list(start)
        converged = [False] * m
        dp = _poly.polyder(p)
        for _ in range(max_sweeps):
            moved = False
            for k in range(m):
                if converged[k]:
                    continue
                z = roots[k]
                pv = _poly.polyval(p, z)
                dv = _poly.polyval(dp, z)
                if abs(dv) == 0:
                    dv = mpmath.mpc(1e-60)
                newton = pv / dv
                s = mpmath.mpc(0)
                for j in range(m):
                    if j != k:
                        s += 1 / (z - roots[j])
                denom = 1 - newton * s
                if abs(denom) == 0:
                    denom = mpmath.mpc(1e-60)
                corr = newton / denom
                roots[k] = z - corr
                if abs(corr) < tolerance * (1 + abs(roots[k])):
                    converged[k] = True
                else:
                    moved = True
            if not moved:
                break
        resid = []
        for z in roots:
            pv = _poly.polyval(p, z)
            dv = _poly.polyval(dp, z)
            resid.append(float(abs(pv) / abs(dv)) if abs(dv) > 0 else float("inf"))
    out = np.empty(m, dtype=object)
    out[:] = roots
    return RootSet(
        roots=out,
        residuals=np.array(resid, dtype=float),
        converged=np.array(converged, dtype=bool),
    )


def _start_points(m, radius, precision):
    # golden-angle jitter keeps the start free of the symmetries that
    # stall the iteration on symmetric inputs
    angles = 2.0 * math.pi * np.arange(m) / m + GOLDEN_ANGLE * np.arange(m) / m + 0.31
    pts = radius * np.exp(1j * angles)
    if precision == EXTENDED:
        out = np.empty(m, dtype=object)
        for k in range(m):
            out[k] = _poly.scalar(complex(pts[k]), EXTENDED)
        return out
    return pts


def solve(p, tolerance=1e-12, precision=None, max_sweeps=None, evaluator=None,
          start=None):
    """All roots of p by Aberth-Ehrlich simultaneous iteration.

    Starts on the circle of radius 0.5 * fujiwara_bound with angular
    jitter; on non-convergence restarts once from the full Fujiwara
    radius and raises NoConvergence (with the best-effort RootSet
    attached) if that also stalls.

    evaluator, when given, supplies (p, p') at an array of points in
    place of coefficient Horner; use newton_evaluator for numerators
    of high derivative order, whose expanded coefficients are too
    ill-scaled for double evaluation.  Forces the double path.

    start, when given, replaces the first-attempt circle of initial
    points (skeleton_starts pays off for high-order numerators); the
    retry still uses the Fujiwara circle.
    """
    arr = np.asarray(p) if isinstance(p, np.ndarray) else None
    if evaluator is not None:
        precision = DOUBLE
    if precision is None:
        precision = EXTENDED if (arr is not None and arr.dtype == object) else DOUBLE
    p = _poly.trim(_poly.asarray(p, precision))
    m = _poly.degree(p)
    if m < 1:
        raise ZeroPolynomial("need degree >= 1")
    p = _poly.monic(p)
    if max_sweeps is None:
        max_sweeps = MAX_SWEEPS[precision]
    bound = fujiwara_bound(p)
    if bound == 0.0:
        roots = _poly.zeros(m, precision)
        return RootSet(roots=roots, residuals=np.zeros(m), converged=np.ones(m, dtype=bool))
    if precision == DOUBLE:
        def runner(q, tol, start, sweeps):
            return _aberth_double(q, tol, start, sweeps, eval_pd=evaluator)
    else:
        runner = _aberth_extended
    if start is not None:
        start = np.asarray(start)
        if len(start) != m:
            raise ValueError("start must supply one point per root")
        if precision == EXTENDED and start.dtype != object:
            conv = np.empty(m, dtype=object)
            for k in range(m):
                conv[k] = _poly.scalar(complex(start[k]), EXTENDED)
            start = conv
        first = start
    else:
        first = _start_points(m, 0.5 * bound, precision)
    result = runner(p, tolerance, first, max_sweeps)
    if not result.all_converged:
        retry = runner(p, tolerance, _start_points(m, bound, precision), max_sweeps)
        if retry.converged.sum() > result.converged.sum():
            result = retry
        if not result.all_converged:
            raise NoConvergence(
                f"{int((~result.converged).sum())} of {m} roots unconverged",
                rootset=result,
            )
    return result
