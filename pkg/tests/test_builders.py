from fractions import Fraction

import pytest

from flatcyl import builders
from flatcyl.builders import DeformationSpec, IntervalTilt, SlitSpec
from flatcyl.holonomy import holonomy_order
from flatcyl.surface import SurfaceError, cone_angle_multiset, euler_genus

FIG6 = builders.fig6_translation_h11()


@pytest.mark.parametrize("g", [2, 3, 4])
def test_4g_gon_single_cone(g):
    s = builders.regular_4g_gon(g)
    assert cone_angle_multiset(s) == [Fraction(4 * g - 2)]
    assert euler_genus(s)[1] == g


def test_twelve_gon():
    s = builders.twelve_gon_genus3()
    assert cone_angle_multiset(s) == [Fraction(10)]
    assert euler_genus(s)[1] == 3
    assert holonomy_order(s).q == 6


def test_building_block_boundary():
    s = builders.building_block()
    assert s.has_boundary
    boundary = sorted(c.angle for c in s.cone_classes if c.boundary)
    # the corner where the handle meets the arc, then the convex corners of the arc
    assert boundary[-1] == Fraction(13, 3)
    assert all(a < 1 for a in boundary[:-1])
    assert euler_genus(s)[1] == 1


def test_fig7_and_fig6_are_h11():
    for s in (builders.fig7_square_tiled(), FIG6):
        assert cone_angle_multiset(s) == [Fraction(4), Fraction(4)]
        assert euler_genus(s)[1] == 2
        assert holonomy_order(s).q == 1


def test_default_slit_length():
    assert builders.default_slit_length(FIG6, 0) == Fraction(1, 13)


def test_slit_and_cap_cones():
    out = builders.slit_and_cap(FIG6, SlitSpec(0, Fraction(1, 20)))
    assert cone_angle_multiset(out) == [Fraction(4)] + [Fraction(5, 2)] * 4
    assert holonomy_order(out).q == 4
    assert euler_genus(out)[1] == 2


def test_slit_along_a_saddle_direction_is_rejected():
    with pytest.raises(SurfaceError) as info:
        builders.slit_and_cap(FIG6, SlitSpec(0, Fraction(1, 10)))
    assert info.value.code == "bad-slit"


def test_slit_needs_a_4pi_cone():
    with pytest.raises(SurfaceError):
        builders.slit_and_cap(builders.regular_4g_gon(2), SlitSpec(0, Fraction(1, 20)))


def test_spec_balance():
    bal = DeformationSpec((IntervalTilt(2, Fraction(1, 24)), IntervalTilt(3, Fraction(-1, 24))), (2, 2))
    unb = DeformationSpec((IntervalTilt(1, Fraction(1, 24)), IntervalTilt(2, Fraction(-1, 24), None)), (1, 2))
    assert bal.balanced and bal.holonomy_angle() == 0
    assert not unb.balanced and unb.holonomy_angle() == Fraction(1, 12)
    with pytest.raises(ValueError):
        DeformationSpec((IntervalTilt(1, Fraction(1, 24)),), (0,))


def test_unbalanced_deformation_needs_opt_in():
    unb = DeformationSpec((IntervalTilt(1, Fraction(1, 24)), IntervalTilt(2, Fraction(-1, 24), None)), (1, 2))
    base = builders.fig7_square_tiled()
    with pytest.raises(SurfaceError) as info:
        builders.deform_square_tiled(base, unb)
    assert info.value.code == "holonomy-constraint"
    s = builders.deform_square_tiled(base, unb, allow_holonomy=True)
    assert sum(cone_angle_multiset(s)) == 8


def test_fixed_lengths_must_close_up():
    # balanced, but the tilted intervals have lengths 1 and 2
    spec = DeformationSpec((IntervalTilt(1, Fraction(1, 24)), IntervalTilt(2, Fraction(-1, 24))), (1, 1))
    with pytest.raises(SurfaceError) as info:
        builders.deform_square_tiled(builders.fig7_square_tiled(), spec)
    assert info.value.code == "unequal-sides"


def test_deformation_moves_angle_between_cones():
    spec = DeformationSpec((IntervalTilt(2, Fraction(1, 24)), IntervalTilt(3, Fraction(-1, 24))), (2, 2))
    s = builders.deform_square_tiled(builders.fig7_square_tiled(), spec)
    assert s.order == 48
    assert s.area > 0
    angles = cone_angle_multiset(s)
    assert len(angles) == 2 and sum(angles) == 8


def test_crossing_rotation_on_translation_surface():
    s = builders.fig7_square_tiled()
    sides = [g.a for g in s.gluings]
    assert builders.crossing_rotation(s, [(side, 3) for side in sides]) == 0


def test_embed_preserves_values():
    s = builders.regular_4g_gon(2)
    big = builders.embed_surface(s, 24)
    assert big.order == 24
    assert abs(big.area - s.area) < 1e-12
    assert cone_angle_multiset(big) == cone_angle_multiset(s)
