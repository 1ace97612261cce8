import pytest

from flatcyl import builders
from flatcyl.holonomy import holonomy_order, trivializing_cover, verify_cover

EXPECTED_Q = {
    "torus": 1,
    "octagon": 4,
    "12gon-g3": 3,
    "16gon-g4": 8,
    "twelve-gon": 6,
    "building-block": 6,
    "fig7": 1,
    "fig6": 1,
    "slit-cap": 4,
    "deformed": 24,  # each tilted gluing turns by pi/12; only the vertical curve has trivial holonomy
}


def test_holonomy_orders(built):
    name, s = built
    if name in EXPECTED_Q:
        assert holonomy_order(s).q == EXPECTED_Q[name]
    assert s.order % holonomy_order(s).q == 0


def test_cover_properties(built):
    name, s = built
    h = holonomy_order(s)
    cover, data = trivializing_cover(s)
    report = verify_cover(s, cover, data)
    assert report.ok, report.details
    assert data.degree == h.q0
    assert holonomy_order(cover).q <= 2
    assert cover.area_form == s.area_form * h.q0


@pytest.mark.parametrize("q,q0", [(1, 1), (2, 1), (3, 3), (4, 2), (6, 3), (8, 4)])
def test_q0_rule(q, q0):
    from flatcyl.holonomy import HolonomyData

    assert HolonomyData(q, 24, (), ()).q0 == q0


def test_holonomy_is_chart_independent():
    from flatcyl.surface import relabel

    s = builders.twelve_gon_genus3()
    turned = relabel(s, [0], {0: 1})
    assert holonomy_order(turned).q == holonomy_order(s).q
