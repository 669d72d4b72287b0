"""Voronoi skeletons of pole configurations and the limit potential."""

import cmath
import json
import math

import numpy as np
import pytest

from voroderiv import voronoi
from voroderiv.voronoi import DuplicateSites, build, locate, phi, psi


def cube_roots():
    return [cmath.exp(2j * math.pi * k / 3) for k in range(3)]


def test_two_sites_give_one_full_line():
    d = build([1j, -1j])
    assert len(d.edges) == 1
    e = d.edges[0]
    assert e.t_lo == -math.inf and e.t_hi == math.inf
    assert e.midpoint == 0j
    # the bisector of +-i is the real axis
    assert abs(e.point(1.0).imag) < 1e-15
    assert len(d.vertices) == 0


def test_equilateral_sites_vertex_and_intervals():
    d = build(cube_roots())
    assert len(d.edges) == 3
    assert len(d.vertices) == 1
    assert abs(d.vertices[0]) < 1e-12
    # each edge is a ray from the circumcenter; the finite endpoint sits
    # at parameter 1/(2 sqrt 3) from the segment midpoint
    lim = 1.0 / (2.0 * math.sqrt(3.0))
    for e in d.edges:
        finite = [t for t in (e.t_lo, e.t_hi) if math.isfinite(t)]
        assert len(finite) == 1
        assert abs(abs(finite[0]) - lim) < 1e-12


def test_collinear_sites_two_parallel_lines():
    d = build([-1.0, 0.0, 1.0])
    assert len(d.edges) == 2
    assert len(d.vertices) == 0
    for e in d.edges:
        assert e.t_lo == -math.inf and e.t_hi == math.inf


def test_duplicate_sites_rejected():
    with pytest.raises(DuplicateSites):
        build([0.0, 1.0, 1.0 + 1e-18])


def test_locate_interior_and_tie():
    d = build(cube_roots())
    idx, ties = locate(d, 0.9 + 0.05j)
    assert idx == 0
    assert ties == [0]
    # midpoint of sites 0 and 1 is equidistant from both
    _, ties = locate(d, 0.5 * (d.sites[0] + d.sites[1]))
    assert set(ties) >= {0, 1}


def test_distance_to_skeleton():
    d = build([1j, -1j])
    # skeleton is the real axis
    assert voronoi.distance_to_skeleton(d, 0.7 + 2.0j) == pytest.approx(2.0)
    assert voronoi.distance_to_skeleton(d, 5.0) == pytest.approx(0.0)


def test_psi_frozen_value_and_symmetry():
    # sites +-i: at 2i the nearest site is i, and psi averages the logs
    # of the distances to the remaining sites, here log 3
    assert psi([1j, -1j], 2j) == pytest.approx(math.log(3.0))
    assert psi([1j, -1j], -2j) == pytest.approx(math.log(3.0))
    # on the skeleton the two cell branches agree, so psi is continuous
    ev = voronoi.PsiEvaluator((1j, -1j))
    assert ev.cell_branch(0, 0.4) == pytest.approx(ev.cell_branch(1, 0.4))


def test_psi_continuous_across_equilateral_edges():
    sites = cube_roots()
    d = build(sites)
    ev = voronoi.PsiEvaluator(tuple(sites))
    for e in d.edges:
        z = e.point(1.0 if math.isinf(e.t_hi) else 0.5 * (e.t_lo + e.t_hi))
        i, j = e.pair
        assert ev.cell_branch(i, z) == pytest.approx(ev.cell_branch(j, z))


def test_phi_is_min_distance():
    sites = cube_roots()
    z = 1.7 - 0.4j
    assert phi(sites, z) == pytest.approx(min(abs(z - s) for s in sites))


def test_psi_evaluator_matches_module_functions():
    sites = (1j, -1j)
    ev = voronoi.PsiEvaluator(sites)
    z = 0.3 + 1.5j
    assert ev.psi(z) == pytest.approx(psi(sites, z))
    assert ev.phi(z) == pytest.approx(phi(sites, z))


def test_json_round_trip():
    d = build(cube_roots())
    data = json.loads(d.to_json())
    assert len(data["edges"]) == 3
    assert len(data["sites"]) == 3
    # infinities survive as strings and parse back
    tl = [e["t_lo"] for e in data["edges"]]
    assert "-inf" in tl
    z0 = complex(data["sites"][0]["re"], data["sites"][0]["im"])
    assert abs(z0 - d.sites[0]) < 1e-15


def test_degenerate_scale_guard():
    with pytest.raises(voronoi.DegenerateScale):
        build([0.5j, 0.5j])
