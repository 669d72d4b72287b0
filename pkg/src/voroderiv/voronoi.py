"""Planar Voronoi diagrams by all-pairs bisector clipping.

Each candidate edge between sites i and j lives on the perpendicular
bisector z(t) = (z_i+z_j)/2 - t i (z_j - z_i), t real, and is clipped
against the half-planes closer to i than to every third site.  t is
the canonical edge parameter used throughout the measure code; the
ordering convention is i < j in every pair.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateScale, DuplicateSites

__all__ = [
    "EdgeSegment",
    "VoronoiDiagram",
    "PsiEvaluator",
    "build",
    "locate",
    "phi",
    "psi",
    "distance_to_skeleton",
]

COINCIDENCE_REL_TOL = 1e-9


@dataclass(frozen=True)
class EdgeSegment:
    """Bisector segment z(t) = midpoint + t * direction, t in [t_lo, t_hi]."""

    pair: tuple
    site_i: complex
    site_j: complex
    t_lo: float
    t_hi: float

    @property
    def midpoint(self):
        return 0.5 * (self.site_i + self.site_j)

    @property
    def direction(self):
        # t increases along -i (z_j - z_i)
        return -1j * (self.site_j - self.site_i)

    @property
    def gap(self):
        return abs(self.site_j - self.site_i)

    def point(self, t):
        return self.midpoint + t * self.direction

    def project(self, z):
        """(t, distance) of the nearest point of the segment to z."""
        w = self.direction
        t = ((z - self.midpoint) * w.conjugate()).real / abs(w) ** 2
        t = min(max(t, self.t_lo), self.t_hi)
        return t, abs(z - self.point(t))


@dataclass(frozen=True)
class VoronoiDiagram:
    sites: tuple
    edges: tuple
    vertices: tuple
    scale: float

    @property
    def d(self):
        return len(self.sites)

    def edge_for(self, i, j):
        """Edge between cells i and j, or None if they are not adjacent."""
        key = (min(i, j), max(i, j))
        for e in self.edges:
            if e.pair == key:
                return e
        return None

    def to_json(self):
        def tval(t):
            if math.isinf(t):
                return "inf" if t > 0 else "-inf"
            return t

        doc = {
            "sites": [{"re": z.real, "im": z.imag} for z in self.sites],
            "edges": [
                {
                    "pair": list(e.pair),
                    "t_lo": tval(e.t_lo),
                    "t_hi": tval(e.t_hi),
                }
                for e in self.edges
            ],
            "vertices": [{"re": v.real, "im": v.imag} for v in self.vertices],
        }
        return json.dumps(doc, sort_keys=True)


def _diameter(sites):
    return max(abs(a - b) for a in sites for b in sites)


def build(sites):
    """Voronoi diagram of d >= 2 distinct sites."""
    sites = tuple(complex(z) for z in sites)
    d = len(sites)
    if d < 2:
        raise DuplicateSites("need at least two sites")
    diam = _diameter(sites)
    if diam == 0.0:
        raise DegenerateScale("all sites coincide")
    tol = COINCIDENCE_REL_TOL * diam
    for i in range(d):
        for j in range(i + 1, d):
            if abs(sites[i] - sites[j]) <= tol:
                raise DuplicateSites(f"sites {i} and {j} coincide")

    edges = []
    vertices = []
    for i in range(d):
        for j in range(i + 1, d):
            zi, zj = sites[i], sites[j]
            m = 0.5 * (zi + zj)
            w = -1j * (zj - zi)
            t_lo, t_hi = -math.inf, math.inf
            empty = False
            for k in range(d):
                if k in (i, j):
                    continue
                zk = sites[k]
                # |z - zi|^2 - |z - zk|^2 = A + B t <= 0 along the bisector
                a = abs(m - zi) ** 2 - abs(m - zk) ** 2
                b = 2.0 * (w.conjugate() * (zk - zi)).real
                if abs(b) <= 1e-15 * abs(w) * diam:
                    if a > tol * diam:
                        empty = True
                        break
                    continue
                t_star = -a / b
                if b > 0:
                    t_hi = min(t_hi, t_star)
                else:
                    t_lo = max(t_lo, t_star)
                if t_lo >= t_hi:
                    empty = True
                    break
            # zero-length edges from cocircular degeneracies are dropped
            if empty or t_hi - t_lo <= tol / abs(w):
                continue
            edge = EdgeSegment((i, j), zi, zj, t_lo, t_hi)
            edges.append(edge)
            for t in (t_lo, t_hi):
                if math.isfinite(t):
                    vertices.append(edge.point(t))

    # dedupe vertices shared between edges
    unique = []
    for v in vertices:
        if all(abs(v - u) > tol for u in unique):
            unique.append(v)
    return VoronoiDiagram(sites=sites, edges=tuple(edges),
                          vertices=tuple(unique), scale=diam)


def locate(diagram, z):
    """(nearest cell index, tied indices) for a query point.

    The tie list has one entry away from the skeleton and lists every
    site within the coincidence tolerance of the minimum otherwise.
    """
    z = complex(z)
    dists = [abs(z - s) for s in diagram.sites]
    i = int(np.argmin(dists))
    tol = COINCIDENCE_REL_TOL * diagram.scale
    ties = [k for k, dist in enumerate(dists) if dist - dists[i] <= tol]
    return i, ties


def phi(sites, z):
    """min_i |z - z_i|."""
    return min(abs(complex(z) - complex(s)) for s in sites)


def psi(sites, z):
    """(d-1)^{-1} sum over non-nearest sites of log |z - z_i|.

    Equals (d-1)^{-1}(log prod|z - z_i| - log min|z - z_i|) away from
    the sites and extends it continuously to the sites themselves by
    dropping the nearest factor before taking logs.
    """
    z = complex(z)
    sites = [complex(s) for s in sites]
    d = len(sites)
    dists = [abs(z - s) for s in sites]
    nearest = int(np.argmin(dists))
    acc = 0.0
    for k, dist in enumerate(dists):
        if k == nearest:
            continue
        acc += math.log(dist)
    return acc / (d - 1)


@dataclass(frozen=True)
class PsiEvaluator:
    """Piecewise-harmonic potential over a fixed site set."""

    sites: tuple

    def phi(self, z):
        return phi(self.sites, z)

    def psi(self, z):
        return psi(self.sites, z)

    def cell_branch(self, i, z):
        """The harmonic formula of cell i evaluated at z (any z)."""
        sites = self.sites
        acc = 0.0
        for k, s in enumerate(sites):
            if k == i:
                continue
            acc += math.log(abs(complex(z) - complex(s)))
        return acc / (len(sites) - 1)


def distance_to_skeleton(diagram, z):
    """Euclidean distance from z to the nearest edge segment."""
    z = complex(z)
    return min(e.project(z)[1] for e in diagram.edges)
