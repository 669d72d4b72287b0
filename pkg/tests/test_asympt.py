"""Empirical zero measures against the theoretical edge measure."""

import math

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from voroderiv import asympt, measure, rational, rootfind, voronoi


def multiset_distance(found, expected):
    found = np.asarray(found, dtype=complex)
    expected = np.asarray(expected, dtype=complex)
    cost = np.abs(found[:, None] - expected[None, :])
    ri, ci = linear_sum_assignment(cost)
    return cost[ri, ci].max()


def two_pole_rootset(n):
    form = rational.polar_decompose([1.0], [(1j, 1), (-1j, 1)])
    st = rational.derivative_state(form, n)
    res = rational.numerator(st)
    if res.degree <= 60:
        return rootfind.solve(res.r_n)
    # high degrees need the structural evaluator and skeleton starts
    d = voronoi.build([1j, -1j])
    return rootfind.solve(res.r_n,
                          evaluator=rational.newton_evaluator(st),
                          start=measure.skeleton_starts(d, res.degree))


def test_twopole_oracle_frozen_values():
    # A1 = A2 = 1 with poles +-1: the second-derivative zeros are +-i
    assert multiset_distance(asympt.twopole_zeros(1, 1, 1, -1, 2),
                             [1j, -1j]) < 1e-12
    # rotating the poles rotates the zeros
    assert multiset_distance(asympt.twopole_zeros(1, 1, 1j, -1j, 2),
                             [1.0, -1.0]) < 1e-12


def test_twopole_oracle_count_and_bisector():
    zs = asympt.twopole_zeros(2.0, 1.0 + 0.5j, 0.3, 1.0 - 0.7j, 12)
    assert len(zs) == 12


def test_twopole_oracle_matches_solver():
    # zeros of the (n-1)-th derivative numerator equal the closed form
    a1, a2 = 2.0, 1.0 - 1.0j
    z1, z2 = 0.5, -0.5 + 0.3j
    n = 9
    form = rational.polar_form([z1, z2], [1, 1], [[a1], [a2]])
    res = rational.numerator(rational.derivative_state(form, n - 1))
    rs = rootfind.solve(res.r_n, tolerance=1e-13)
    oracle = asympt.twopole_zeros(a1, a2, z1, z2, n)
    assert len(oracle) == res.degree == n
    assert multiset_distance(rs.roots, oracle) < 1e-9


def test_empirical_measure_weights():
    rs = two_pole_rootset(20)
    em = asympt.empirical(rs, 20)
    assert em.n == 20
    assert len(em.points) == 20
    assert em.excluded == 0


def test_empty_rootset_rejected():
    rs = rootfind.RootSet(np.array([], dtype=complex), np.array([]),
                          np.array([], dtype=bool))
    with pytest.raises(asympt.EmptyRootSet):
        asympt.empirical(rs, 5)


def test_project_and_bin_two_pole():
    d = voronoi.build([1j, -1j])
    rep = asympt.project_and_bin(asympt.empirical(two_pole_rootset(20), 20), d)
    assert rep.m_n == 20
    assert rep.off_skeleton_fraction == 0.0
    assert rep.mean_distance < 1e-12
    assert len(rep.edges) == 1
    ec = rep.edges[0]
    assert ec.theoretical_mass == pytest.approx(1.0)
    assert ec.empirical_fraction == pytest.approx(1.0)
    assert 0.0 <= ec.ks < 0.1


def test_ks_decreases_with_n():
    d = voronoi.build([1j, -1j])
    ks = []
    for n in (10, 40, 160):
        rep = asympt.project_and_bin(asympt.empirical(two_pole_rootset(n), n),
                                     d)
        ks.append(rep.edges[0].ks)
    assert ks[0] > ks[1] > ks[2]


def test_report_json_round_trip():
    import json
    d = voronoi.build([1j, -1j])
    rep = asympt.project_and_bin(asympt.empirical(two_pole_rootset(10), 10), d)
    data = json.loads(rep.to_json())
    assert data["m_n"] == 10
    assert data["edges"][0]["pair"] == [0, 1]


def test_potential_l1_decreases_with_n():
    d = voronoi.build([1j, -1j])
    vals = []
    for n in (10, 40, 160):
        rs = two_pole_rootset(n)
        vals.append(asympt.potential_l1(rs.roots, d, window=(0.0, 2.0),
                                        grid=40))
    assert vals[0] > vals[1] > vals[2]
    assert vals[-1] < 0.05


def test_exclusion_too_large_guard():
    d = voronoi.build([1j, -1j])
    rs = two_pole_rootset(10)
    with pytest.raises(asympt.ExclusionTooLarge):
        asympt.potential_l1(rs.roots, d, window=(0.0, 0.05),
                            grid=10, exclusion_radius=1.0)


def test_single_pole_escape_example():
    # (z+2)/(z-1)^3: every disk of radius 10 around the origin is free of
    # derivative zeros from n = 6 onward
    assert asympt.single_pole_escape([2.0, 1.0], 1.0, 3, 10.0) == 6


def test_single_pole_escape_constant_numerator():
    # 1/z^2 never has numerator zeros, so the first qualifying n is 0
    assert asympt.single_pole_escape([1.0], 0.0, 2, 1e6, n_max=20) == 0


def test_single_pole_escape_not_found():
    with pytest.raises(asympt.NotFound):
        asympt.single_pole_escape([2.0, 1.0], 1.0, 3, 1e9, n_max=15)
