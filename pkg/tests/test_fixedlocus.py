from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from k3mirror.diaggrp import DiagonalSymmetry, j_group, sl_group, subgroups_between
from k3mirror.errors import Inconsistent, NonIntegerGenus
from k3mirror.fixedlocus import (FixedLocusInvariants, ambient_singularities, curve_genus,
                                 fixed_locus, invariants_from_gnk, representatives,
                                 resolve_fixed_locus, riemann_hurwitz, symplectic_fixed_points)
from k3mirror.invpoly import InvertiblePolynomial
from k3mirror.lattices import load_classification
from k3mirror.weights import WeightSystem

P = InvertiblePolynomial.parse
EX_A = P("x^2+y^3+z^8+w^24")
EX_B = P("x^2+y^5+z^5+xw^5")
EX_BT = EX_B.transpose()


def test_representatives():
    vals = {r.value for r in representatives(DiagonalSymmetry((0, F(1, 3), 0, 0)),
                                             WeightSystem((12, 8, 3, 1), 24))}
    assert DiagonalSymmetry((0, 0, 0, F(1, 3))) in vals
    vals = {r.value for r in representatives(DiagonalSymmetry((0, F(1, 5), 0, 0)), (5, 2, 2, 1))}
    assert DiagonalSymmetry((0, 0, F(4, 5), F(2, 5))) in vals


def test_representatives_of_identity():
    reps = representatives(DiagonalSymmetry((0, 0, 0, 0)), (12, 8, 3, 1))
    assert DiagonalSymmetry((0, 0, 0, 0)) in {r.value for r in reps}
    for r in reps:
        assert r.zero_support
        assert all(r.value.g[i] == 0 for i in r.zero_support)


def test_curve_genus_examples():
    assert curve_genus(24, 12, 3, 1) == 3
    assert curve_genus(24, 12, 8, 3) == 0
    assert curve_genus(10, 5, 2, 1) == 2


@given(st.integers(1, 30))
def test_curve_genus_plane_curves(d):
    assert curve_genus(d, 1, 1, 1) == (d - 1) * (d - 2) // 2


def test_curve_genus_rejects_bad_input():
    with pytest.raises(NonIntegerGenus):
        curve_genus(7, 2, 3, 5)


def test_riemann_hurwitz():
    assert riemann_hurwitz(3, 2, []) == 2
    assert riemann_hurwitz(0, 2, [2, 2]) == 0
    assert riemann_hurwitz(5, 1, []) == 5
    with pytest.raises(Inconsistent):
        riemann_hurwitz(0, 2, [2, 2, 2, 2])


@given(st.integers(0, 10), st.integers(1, 6), st.lists(st.integers(2, 6), max_size=6))
def test_riemann_hurwitz_round_trip(g_base, deg, ram):
    g_cover2 = deg * (2 * g_base - 2) + sum(e - 1 for e in ram) + 2
    if g_cover2 % 2 or g_cover2 < 0:
        return
    assert riemann_hurwitz(g_cover2 // 2, deg, ram) == g_base


def test_invariants_from_gnk():
    lat = invariants_from_gnk(3, FixedLocusInvariants(3, 3, 2))
    assert (lat.r, lat.a, lat.m, lat.mu) == (8, 1, 7, 12)
    assert (invariants_from_gnk(5, FixedLocusInvariants(2, 1, 0)).r,
            invariants_from_gnk(5, FixedLocusInvariants(2, 1, 0)).a) == (2, 1)
    lat = invariants_from_gnk(5, FixedLocusInvariants(0, 13, 2))
    assert (lat.r, lat.a) == (18, 1)
    lat = invariants_from_gnk(13, FixedLocusInvariants(0, 9, 0))
    assert (lat.r, lat.a) == (10, 1)
    with pytest.raises(Inconsistent):
        invariants_from_gnk(3, FixedLocusInvariants(3, 4, 2))
    with pytest.raises(Inconsistent):
        invariants_from_gnk(13, FixedLocusInvariants(1, 9, 0))


def test_invariants_reproduce_classification_rows():
    for row in load_classification():
        lat = invariants_from_gnk(row.p, FixedLocusInvariants(row.g, row.n, row.k))
        assert (lat.r, lat.a) == (row.r, row.a)
        assert lat.a <= lat.m
        assert (22 - lat.r) % (row.p - 1) == 0


def _sing(points):
    return sorted((s.location, s.type, s.multiplicity) for s in points)


def test_ambient_singularities():
    assert _sing(ambient_singularities(EX_A)) == [("{x,y}", "A3", 1), ("{x,z}", "A2", 2)]
    assert _sing(ambient_singularities(EX_B)) == [("{y,z}", "A1", 5)]
    assert _sing(ambient_singularities(EX_BT)) == [("{x}", "A1", 1)]


def test_symplectic_fixed_points():
    pts = symplectic_fixed_points(EX_A, sl_group(EX_A))
    assert {s.type for s in pts} == {"A1"}
    assert sum(s.multiplicity for s in pts) == 8
    pts = symplectic_fixed_points(EX_B, sl_group(EX_B))
    assert {s.type for s in pts} == {"A4"}
    assert sum(s.multiplicity for s in pts) == 4
    assert symplectic_fixed_points(EX_A, j_group(EX_A)) == []


def test_resolve_examples():
    inv, lat = resolve_fixed_locus(EX_A, j_group(EX_A), 3)
    assert inv.as_tuple() == (3, 3, 2) and (lat.r, lat.a) == (8, 1)
    inv, lat = resolve_fixed_locus(EX_A, sl_group(EX_A), 3)
    assert (lat.r, lat.a) == (12, 1)
    assert inv.as_tuple() == (2, 5, 3)
    inv, lat = resolve_fixed_locus(EX_BT, j_group(EX_BT), 5)
    assert inv.as_tuple() == (2, 1, 0) and (lat.r, lat.a) == (2, 1)
    inv, lat = resolve_fixed_locus(EX_B, sl_group(EX_B), 5)
    assert inv.as_tuple() == (0, 13, 2) and (lat.r, lat.a) == (18, 1)


def test_fixed_curves_of_first_example():
    fl = fixed_locus(EX_A, j_group(EX_A), 3)
    assert sorted(fl.curve_genera, reverse=True) == [3, 0, 0]


def test_p13_forced():
    W = P("x^2z+xy^2+yz^3+w^13")
    inv, lat = resolve_fixed_locus(W, j_group(W), 13)
    assert inv.as_tuple() == (0, 9, 0) and (lat.r, lat.a) == (10, 1)


def test_never_the_curveless_row_for_p3(golden):
    for e in golden:
        if e.prime != 3:
            continue
        W = e.poly
        for G in subgroups_between(j_group(W), sl_group(W)):
            inv, lat = resolve_fixed_locus(W, G, 3)
            assert inv.g is not None
            assert (lat.r, lat.a) != (8, 7)
