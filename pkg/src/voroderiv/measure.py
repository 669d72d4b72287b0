"""The limit measure on the Voronoi skeleton and its potential.

On the edge between sites i and j, in the canonical parameter t, the
measure has density 1 / (2 (d-1) pi (1/4 + t^2)) dt, with the closed
arctan antiderivative.  Per-edge masses and CDFs therefore need no
quadrature; quadrature appears only in the logarithmic-potential
integral, after the substitution u = arctan(2t) that flattens the
density and maps unbounded edges to finite u-intervals.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import OnSkeleton, OutOfInterval, SkeletonProximity
from .voronoi import distance_to_skeleton

__all__ = [
    "EdgeMeasure",
    "CauchyEvaluator",
    "edge_density",
    "edge_mass",
    "edge_cdf",
    "edge_measure",
    "total_mass",
    "skeleton_starts",
    "potential_from_measure",
    "cauchy_residual",
]


def _atan2t(t):
    if math.isinf(t):
        return math.copysign(0.5 * math.pi, t)
    return math.atan(2.0 * t)


def edge_density(edge, t, d):
    """Density of the limit measure with respect to dt on the edge."""
    if t < edge.t_lo or t > edge.t_hi:
        raise OutOfInterval(f"t={t} outside [{edge.t_lo}, {edge.t_hi}]")
    return 1.0 / (2.0 * (d - 1) * math.pi * (0.25 + t * t))


def edge_cdf(edge, t, d):
    """Mass of the edge below parameter t; arctan closed form."""
    t = min(max(t, edge.t_lo), edge.t_hi)
    return (_atan2t(t) - _atan2t(edge.t_lo)) / ((d - 1) * math.pi)


def edge_mass(edge, d):
    return edge_cdf(edge, edge.t_hi, d)


@dataclass(frozen=True)
class EdgeMeasure:
    """One edge's share of the limit measure."""

    edge: object
    d: int

    @property
    def mass(self):
        return edge_mass(self.edge, self.d)

    def cdf(self, t):
        return edge_cdf(self.edge, t, self.d)

    def density(self, t):
        return edge_density(self.edge, t, self.d)

    def quantile(self, q):
        """t with cdf(t) = q, 0 <= q <= mass."""
        u = (self.d - 1) * math.pi * q + _atan2t(self.edge.t_lo)
        return 0.5 * math.tan(u)


def edge_measure(diagram, edge):
    return EdgeMeasure(edge=edge, d=diagram.d)


def total_mass(diagram):
    """Sum of all edge masses; equals 1 for any valid diagram."""
    return sum(edge_mass(e, diagram.d) for e in diagram.edges)


def _panels(u_lo, u_hi, levels=16, u_near=None):
    """Panel boundaries graded toward both endpoints.

    Grading is applied unconditionally: even when an endpoint t is
    finite, a large |t| puts u close to +-pi/2 where tan varies fast,
    and graded panels keep the per-panel variation tame.  When u_near
    is given (nearest point of the edge to the evaluation point),
    panels are also refined dyadically around it so that a nearby
    logarithmic peak is resolved.
    """
    pts = [u_lo, u_hi]
    width = u_hi - u_lo
    for k in range(1, levels):
        frac = 0.5 ** k
        pts.append(u_lo + frac * width * 0.5)
        pts.append(u_hi - frac * width * 0.5)
    if u_near is not None and u_lo < u_near < u_hi:
        for k in range(0, 8):
            step = width * 0.25 * 0.5 ** k
            for u in (u_near - step, u_near, u_near + step):
                if u_lo < u < u_hi:
                    pts.append(u)
    return sorted(set(pts))


def skeleton_starts(diagram, count, jitter=0.01, seed=0):
    """Initial root guesses spread over the skeleton by the limit law.

    Allocates `count` points across the edges proportionally to edge
    mass, places them at the mass quantiles, and offsets each
    perpendicular to its edge by a normal jitter of the given fraction
    of the diagram scale.  Root iterations on high-order numerators
    converge in a few dozen sweeps from these instead of hundreds
    from a bounding circle.
    """
    rng = np.random.default_rng(seed)
    masses = np.array([edge_mass(e, diagram.d) for e in diagram.edges])
    alloc = [int(round(count * x / masses.sum())) for x in masses]
    while sum(alloc) < count:
        alloc[int(np.argmax(masses))] += 1
    while sum(alloc) > count:
        alloc[int(np.argmax(alloc))] -= 1
    pts = []
    for e, k in zip(diagram.edges, alloc):
        em = edge_measure(diagram, e)
        perp = 1j * e.direction / abs(e.direction)
        for i in range(k):
            t = em.quantile((i + 0.5) / k * em.mass)
            pts.append(e.point(t) + perp * jitter * diagram.scale * rng.standard_normal())
    return np.array(pts, dtype=complex)


def potential_from_measure(diagram, z, quadrature_nodes=200):
    """integral of log|z - zeta| over the limit measure, by quadrature.

    Gauss-Legendre in u = arctan(2t) per edge, with panels graded
    toward endpoints that map to t = +-inf (where the integrand has a
    mild logarithmic endpoint singularity).  z must stay off the
    skeleton so the integrand is smooth in the panel interiors.
    """
    z = complex(z)
    if distance_to_skeleton(diagram, z) < 1e-9 * diagram.scale:
        raise SkeletonProximity("z is on (or nearly on) the skeleton")
    d = diagram.d
    nodes_per_panel = max(quadrature_nodes // 8, 8)
    x, wts = np.polynomial.legendre.leggauss(nodes_per_panel)
    acc = 0.0
    for e in diagram.edges:
        u_lo = _atan2t(e.t_lo)
        u_hi = _atan2t(e.t_hi)
        m, w = e.midpoint, e.direction
        t_near, _ = e.project(z)
        bounds = _panels(u_lo, u_hi, u_near=_atan2t(t_near))
        for a, b in zip(bounds[:-1], bounds[1:]):
            mid, half = 0.5 * (a + b), 0.5 * (b - a)
            u = mid + half * x
            t = 0.5 * np.tan(u)
            zeta = m + t * w
            vals = np.log(np.abs(z - zeta))
            acc += half * (wts * vals).sum() / ((d - 1) * math.pi)
    return acc


@dataclass(frozen=True)
class CauchyEvaluator:
    """Piecewise-rational Cauchy transform of the limit measure."""

    sites: tuple

    @property
    def d(self):
        return len(self.sites)

    def branch(self, i, z):
        """(d-1)^{-1} sum_{j != i} 1/(z - z_j)."""
        z = complex(z)
        acc = 0.0 + 0.0j
        for j, s in enumerate(self.sites):
            if j == i:
                continue
            acc += 1.0 / (z - complex(s))
        return acc / (self.d - 1)

    def value(self, z):
        """The transform at z, via the branch of the containing cell."""
        dists = [abs(complex(z) - complex(s)) for s in self.sites]
        return self.branch(int(np.argmin(dists)), z)


def cauchy_residual(evaluator, z, diagram=None):
    """|prod_i (C(z) - branch_i(z))|; zero since C equals one branch.

    If a diagram is supplied, points on the skeleton (where the branch
    choice is ambiguous) are rejected.
    """
    z = complex(z)
    if diagram is not None and distance_to_skeleton(diagram, z) < 1e-12 * diagram.scale:
        raise OnSkeleton("branch choice ambiguous on the skeleton")
    c = evaluator.value(z)
    prod = 1.0
    for i in range(evaluator.d):
        prod *= abs(c - evaluator.branch(i, z))
    return prod
