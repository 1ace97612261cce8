from fractions import Fraction
from math import gcd, isqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flatcyl import builders
from flatcyl.exactnum import compare_real
from flatcyl.holonomy import holonomy_order
from flatcyl.flow import FlowError, flow_sq, naive_saddle_vectors, saddle_connections, separatrices, trace_key

TORUS = builders.torus()
OCTAGON = builders.regular_4g_gon(2)
FIG6 = builders.fig6_translation_h11()


def primitive_vectors(max_sq: Fraction):
    """Integer vectors of squared length <= max_sq, one per sign pair."""
    r = isqrt(int(max_sq)) + 1
    out = set()
    for p in range(-r, r + 1):
        for q in range(-r, r + 1):
            if (p, q) != (0, 0) and gcd(p, q) == 1 and p * p + q * q <= max_sq:
                out.add(max((p, q), (-p, -q)))
    return out


def torus_vectors(L2):
    f = TORUS.field
    i = f.zeta_power(1)
    found = set()
    for sc in saddle_connections(TORUS, f.rational(L2)):
        v = sc.vector
        for p in range(-4, 5):
            for q in range(-4, 5):
                if v == f.rational(p) + i * q:
                    found.add(max((p, q), (-p, -q)))
    return found


@pytest.mark.parametrize("L2", [Fraction(1), Fraction(2), Fraction(25, 4), Fraction(10)])
def test_torus_matches_primitive_vectors(L2):
    scs = saddle_connections(TORUS, TORUS.field.rational(L2))
    assert torus_vectors(L2) == primitive_vectors(L2)
    assert len(scs) == len(primitive_vectors(L2))


def test_octagon_shortest_are_sides():
    scs = saddle_connections(OCTAGON, OCTAGON.field.rational(1), embedded=True)
    # the four glued side pairs, all embedded
    assert len(scs) == 4
    side_sq = OCTAGON.polygons[0].edge_vector(0).norm_sq()
    assert all(sc.length_sq == side_sq and sc.embedded for sc in scs)


def test_octagon_dfs_matches_naive_oracle_2s():
    L2 = OCTAGON.field.rational(4)
    dfs = {trace_key(OCTAGON, sc.segments)[0] for sc in saddle_connections(OCTAGON, L2)}
    assert dfs == naive_saddle_vectors(OCTAGON, L2, depth=8)


def _oriented_vectors(s, L2):
    return saddle_connections(s, s.field.rational(L2), oriented=True)


@pytest.mark.parametrize("surface", [TORUS, OCTAGON, FIG6], ids=["torus", "octagon", "fig6"])
def test_reversal_symmetry(surface):
    f = surface.field
    L2 = 5
    oriented = _oriented_vectors(surface, L2)
    unoriented = saddle_connections(surface, f.rational(L2))
    assert len(oriented) == 2 * len(unoriented)
    vecs = [sc.vector for sc in oriented]
    for sc in oriented:
        # the reversed connection runs along -v, seen in some rotated chart
        assert any(-sc.vector * f.zeta_power(k) in vecs for k in range(f.n))
    if holonomy_order(surface).q == 1:
        assert sorted(map(str, vecs)) == sorted(str(-v) for v in vecs)


@settings(max_examples=12, deadline=None)
@given(st.fractions(min_value=1, max_value=6, max_denominator=8), st.fractions(min_value=1, max_value=6, max_denominator=8))
def test_length_monotone(a, b):
    lo, hi = min(a, b), max(a, b)
    f = OCTAGON.field
    small = {trace_key(OCTAGON, sc.segments)[0] for sc in saddle_connections(OCTAGON, f.rational(lo))}
    big = saddle_connections(OCTAGON, f.rational(hi))
    keys = {trace_key(OCTAGON, sc.segments)[0] for sc in big}
    assert small <= keys
    assert small == {
        trace_key(OCTAGON, sc.segments)[0] for sc in big if compare_real(sc.length_sq, f.rational(lo)) <= 0
    }
    lengths = [sc.length_sq for sc in big]
    assert all(compare_real(x, y) <= 0 for x, y in zip(lengths, lengths[1:]))


def test_workers_do_not_change_the_list():
    f = OCTAGON.field
    one = saddle_connections(OCTAGON, f.rational(9), workers=1)
    many = saddle_connections(OCTAGON, f.rational(9), workers=4)
    assert [(sc.vector, sc.word) for sc in one] == [(sc.vector, sc.word) for sc in many]


def test_torus_flow_closes():
    f = TORUS.field
    i = f.zeta_power(1)
    half = f.rational(Fraction(1, 2))
    tr = flow_sq(TORUS, (0, half + i * Fraction(1, 3)), f.rational(2) + i, f.rational(10))
    assert tr.status == "closed"
    assert tr.vector == f.rational(2) + i


def test_separatrix_count_matches_cone_angle():
    # a 6 pi cone has three outgoing rays in every direction
    rays = separatrices(OCTAGON, 0, OCTAGON.field.rational(1), OCTAGON.field.one() + OCTAGON.field.zeta_power(1) * Fraction(1, 3))
    assert len(rays) == 3


def test_bad_bound():
    with pytest.raises(FlowError):
        saddle_connections(OCTAGON, OCTAGON.field.rational(-1))
