from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flatcyl import builders
from flatcyl.curvegraph import (
    disjointness_graph,
    distance_lower_bound,
    distance_upper_bound,
    geometric_intersection,
)
from flatcyl.cylinder import closed_geodesic, enumerate_cylinders

TORUS = builders.torus()
F = TORUS.field
I = F.zeta_power(1)


def torus_curve(p, q, x=Fraction(1, 97), y=Fraction(1, 89)):
    v = F.rational(p) + I * q
    return closed_geodesic(TORUS, (0, F.rational(x) + I * y), v, F.rational(p * p + q * q + 1))


primitive = st.tuples(st.integers(-4, 4), st.integers(-4, 4)).filter(lambda v: gcd(*v) == 1)


@settings(max_examples=25, deadline=None)
@given(primitive, primitive)
def test_torus_determinant(a, b):
    (p, q), (r, s) = a, b
    ca = torus_curve(p, q)
    cb = torus_curve(r, s, Fraction(1, 53), Fraction(2, 61))
    rep = geometric_intersection(TORUS, ca, cb)
    assert rep.count == abs(p * s - q * r)
    assert len(rep.points) == rep.count
    assert geometric_intersection(TORUS, cb, ca).count == rep.count


def test_torus_basic_pairs():
    h, v = torus_curve(1, 0), torus_curve(0, 1)
    assert geometric_intersection(TORUS, h, v).count == 1
    h2 = torus_curve(1, 0, y=Fraction(1, 2))
    rep = geometric_intersection(TORUS, h, h2)
    assert rep.count == 0 and not rep.parallel_overlap


def test_parallel_copies_give_equal_counts():
    third = torus_curve(2, 3, Fraction(1, 31), Fraction(1, 37))
    counts = {
        geometric_intersection(TORUS, torus_curve(1, 1, Fraction(k, 11), Fraction(1, 89)), third).count
        for k in range(1, 6)
    }
    assert counts == {1}


def test_crossing_through_the_marked_point_counts_once():
    # the diagonal passes through the corner of the square, the horizontal runs along the bottom edge
    half = F.rational(Fraction(1, 2))
    diag = closed_geodesic(TORUS, (0, half + I * Fraction(1, 2)), F.one() + I, F.rational(3))
    assert any(seg[1] == F.zero() or seg[2] == F.zero() for seg in diag.segments)
    edge = closed_geodesic(TORUS, (0, half), F.one(), F.rational(2))
    assert geometric_intersection(TORUS, edge, diag).count == 1
    assert geometric_intersection(TORUS, diag, edge).count == 1
    inner = closed_geodesic(TORUS, (0, I * Fraction(1, 3)), F.one(), F.rational(2))
    assert geometric_intersection(TORUS, inner, diag).count == 1


def test_torus_graph_has_isolated_vertices():
    g = disjointness_graph(TORUS, [torus_curve(1, 0), torus_curve(0, 1)])
    assert g.adjacency == {0: (), 1: ()}
    assert g.components == [(0,), (1,)]
    assert g.diameters == [0, 0]


def test_singleton_graph():
    g = disjointness_graph(TORUS, [torus_curve(1, 0)])
    assert g.components == [(0,)] and g.diameters == [0]


def test_octagon_graph_is_deterministic():
    s = builders.regular_4g_gon(2)
    side_sq = s.polygons[0].edge_vector(0).norm_sq()
    runs = []
    for _ in range(2):
        cores = [c.core for c in enumerate_cylinders(s, side_sq * 16) if c.embedded]
        g = disjointness_graph(s, cores)
        runs.append((g.adjacency, g.components, g.diameters, g.intersections))
    assert runs[0] == runs[1]
    adj = runs[0][0]
    assert all(j != i for i in adj for j in adj[i])
    assert all(i in adj[j] for i in adj for j in adj[i])


@pytest.mark.parametrize("i,upper", [(0, 1), (1, 2), (2, 4), (3, 6), (4, 6), (5, 7)])
def test_distance_upper_bound(i, upper):
    assert distance_upper_bound(i) == upper


def test_distance_lower_bound():
    assert distance_lower_bound(0) == 1
    assert distance_lower_bound(3) == 2
    assert distance_lower_bound(0, same=True) == 0
    with pytest.raises(ValueError):
        distance_upper_bound(-1)
