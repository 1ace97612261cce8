from fractions import Fraction

import pytest

from flatcyl import builders


def all_builders():
    """Every constructor with cheap default parameters, by name."""
    return {
        "torus": builders.torus,
        "octagon": lambda: builders.regular_4g_gon(2),
        "12gon-g3": lambda: builders.regular_4g_gon(3),
        "16gon-g4": lambda: builders.regular_4g_gon(4),
        "twelve-gon": builders.twelve_gon_genus3,
        "building-block": builders.building_block,
        "building-block-5": lambda: builders.building_block(5),
        "fig7": builders.fig7_square_tiled,
        "fig6": builders.fig6_translation_h11,
        "slit-cap": lambda: builders.slit_and_cap(
            builders.fig6_translation_h11(), builders.SlitSpec(0, Fraction(1, 20))
        ),
        "deformed": lambda: builders.deform_square_tiled(
            builders.fig7_square_tiled(),
            builders.DeformationSpec(
                (builders.IntervalTilt(2, Fraction(1, 24)), builders.IntervalTilt(3, Fraction(-1, 24))), (2, 2)
            ),
        ),
    }


_CACHE = {}


@pytest.fixture(params=sorted(all_builders()))
def built(request):
    name = request.param
    if name not in _CACHE:
        _CACHE[name] = all_builders()[name]()
    return name, _CACHE[name]
