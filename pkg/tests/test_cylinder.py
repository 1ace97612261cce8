from fractions import Fraction

import pytest

from flatcyl import builders
from flatcyl.cylinder import (
    closed_geodesic,
    crossing_counts,
    enumerate_cylinders,
    inscribed_angle_locus,
    on_locus,
)
from flatcyl.exactnum import compare_real
from flatcyl.flow import FlowError

from test_flow import primitive_vectors

TORUS = builders.torus()
OCTAGON = builders.regular_4g_gon(2)


@pytest.mark.parametrize("L2", [1, 2, 5, 10])
def test_torus_cylinders_match_primitive_directions(L2):
    f = TORUS.field
    cyls = enumerate_cylinders(TORUS, f.rational(L2))
    expected = sorted(p * p + q * q for p, q in primitive_vectors(Fraction(L2)))
    assert sorted(int(c.circumference_sq.to_fraction()) for c in cyls) == expected
    for c in cyls:
        assert c.embedded
        # one cylinder fills the torus
        assert c.circumference_sq * c.width_sq == f.one()


def test_octagon_cylinders_at_three_sides():
    side_sq = OCTAGON.polygons[0].edge_vector(0).norm_sq()
    cyls = enumerate_cylinders(OCTAGON, side_sq * 9)
    assert [c.embedded for c in cyls] == [True, True]
    total = OCTAGON.area_form
    for c in cyls:
        # area forms are 4i times the area
        ratio = c.area_form / total
        assert ratio.is_real() and compare_real(ratio, ratio.field.one()) <= 0
        assert c.area_form * c.area_form * Fraction(-1, 16) == c.circumference_sq * c.width_sq


def test_cylinder_list_is_sorted_and_unique():
    side_sq = OCTAGON.polygons[0].edge_vector(0).norm_sq()
    cyls = enumerate_cylinders(OCTAGON, side_sq * 16)
    assert len({c.core.key for c in cyls}) == len(cyls)
    circ = [c.circumference_sq for c in cyls]
    assert all(compare_real(a, b) <= 0 for a, b in zip(circ, circ[1:]))
    for c in cyls:
        assert c.embedded == (c.witness is None)


def test_core_curves_are_closed_geodesics():
    side_sq = OCTAGON.polygons[0].edge_vector(0).norm_sq()
    for c in enumerate_cylinders(OCTAGON, side_sq * 9):
        poly, a, b = c.core.segments[0]
        mid = (a + b) * Fraction(1, 2)
        again = closed_geodesic(OCTAGON, (poly, mid), b - a, c.circumference_sq * 4)
        assert again.key == c.core.key
        assert again.length_sq == c.circumference_sq


def test_closed_geodesic_parallel_copies_cross_the_same_edges():
    f = TORUS.field
    i = f.zeta_power(1)
    v = f.rational(1) + i * 2
    a = closed_geodesic(TORUS, (0, f.rational(Fraction(1, 5)) + i * Fraction(1, 7)), v, f.rational(20))
    b = closed_geodesic(TORUS, (0, f.rational(Fraction(2, 5)) + i * Fraction(1, 7)), v, f.rational(20))
    assert a.key != b.key
    assert crossing_counts(TORUS, a.segments) == crossing_counts(TORUS, b.segments) == {0: 2, 1: 1}


def test_closed_geodesic_rejects_open_leaves():
    f = OCTAGON.field
    with pytest.raises(FlowError):
        closed_geodesic(OCTAGON, (0, f.zero() + Fraction(1, 10)), f.zeta_power(1) + Fraction(1, 3), f.rational(4))


def test_inscribed_angle_locus():
    f = builders.torus(12).field
    a, b = f.zero(), f.one()
    for theta in (Fraction(1, 2), Fraction(1, 3), Fraction(5, 6)):
        for arc in inscribed_angle_locus(a, b, theta):
            assert (a - arc.center).norm_sq() == (b - arc.center).norm_sq() == arc.radius_sq
    # right angle: Thales
    assert on_locus(a, b, (f.one() + f.zeta_power(3)) * Fraction(1, 2), Fraction(1, 2))
    assert not on_locus(a, b, f.zeta_power(3), Fraction(1, 2))
