from fractions import Fraction

import pytest

from flatcyl import builders
from flatcyl.fileformat import ParseError, format_surface, parse_surface
from flatcyl.surface import SurfaceError, cone_angle_multiset, euler_genus, gauss_bonnet_check

OCTAGON = format_surface(builders.regular_4g_gon(2))


def test_gauss_bonnet_every_builder(built):
    name, s = built
    assert gauss_bonnet_check(s), name


def test_file_round_trip(built):
    name, s = built
    text = format_surface(s)
    again = parse_surface(text)
    assert format_surface(again) == text
    assert again.area_form == s.area_form
    assert cone_angle_multiset(again) == cone_angle_multiset(s)


def test_octagon_invariants():
    s = builders.regular_4g_gon(2)
    chi, genus, cones = euler_genus(s)
    assert (chi, genus, cones) == (-2, 2, 1)
    assert cone_angle_multiset(s) == [Fraction(6)]


def test_torus_has_only_a_marked_point():
    s = builders.torus()
    assert cone_angle_multiset(s) == []
    assert cone_angle_multiset(s, include_marked=True) == [Fraction(2)]
    assert euler_genus(s)[:2] == (0, 1)


def _mutate(old, new):
    assert old in OCTAGON
    return OCTAGON.replace(old, new, 1)


MUTATIONS = [
    ("unmatched-edge", _mutate("glue P.4 P.6 rot 6\n", "")),
    ("orientation-mismatch", _mutate("glue P.0 P.2 rot 6", "glue P.0 P.2 rot 2")),
    ("unknown-edge", _mutate("glue P.0 P.2", "glue P.0 P.9")),
    ("duplicate-edge", _mutate("glue P.4 P.6", "glue P.4 P.2")),
    ("self-glued-edge", _mutate("glue P.4 P.6", "glue P.4 P.4")),
    ("length-mismatch", _mutate("1*u(0) 1*u(1)", "2*u(0) 1*u(1)")),
    ("negative-orientation", _mutate(
        "polygon P 1*u(0) 1*u(1) 1*u(2) 1*u(3) -1*u(0) -1*u(1) -1*u(2) -1*u(3)",
        "polygon P -1*u(3) -1*u(2) -1*u(1) -1*u(0) 1*u(3) 1*u(2) 1*u(1) 1*u(0)",
    )),
]


@pytest.mark.parametrize("code,text", MUTATIONS, ids=[m[0] for m in MUTATIONS])
def test_single_field_corruptions_rejected(code, text):
    with pytest.raises(SurfaceError) as info:
        parse_surface(text)
    assert info.value.code == code


def test_unglued_edge_is_named():
    with pytest.raises(SurfaceError) as info:
        parse_surface(MUTATIONS[0][1])
    assert "P.4" in str(info.value) or "P.6" in str(info.value)


def test_parse_error_cites_line():
    with pytest.raises(ParseError) as info:
        parse_surface(OCTAGON.replace("glue P.1 P.7 rot 2", "glue P.1 P.7 spin 2"), "oct.txt")
    assert info.value.line == 4
    assert "oct.txt:4" in str(info.value)
