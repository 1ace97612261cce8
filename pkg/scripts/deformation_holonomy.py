"""Tilt intervals of the square-tiled surface and look for the vertical cylinder.

For each spec prints the holonomy angle sum n_i theta_i, whether a cylinder
whose core crosses a, b, c, d as the vertical curve does (3, 1, 2, 2 times)
survives, and its rotation index.  Takes a couple of minutes.
"""
import argparse
from fractions import Fraction

from flatcyl import builders
from flatcyl.builders import DeformationSpec, IntervalTilt
from flatcyl.cylinder import crossing_counts, crossing_word, enumerate_cylinders

VERTICAL = {0: 3, 1: 1, 2: 2, 3: 2}

SPECS = {
    "c,d +-1/24 (balanced)": DeformationSpec((IntervalTilt(2, Fraction(1, 24)), IntervalTilt(3, Fraction(-1, 24))), (2, 2)),
    "b,c +-1/24 (unbalanced)": DeformationSpec(
        (IntervalTilt(1, Fraction(1, 24)), IntervalTilt(2, Fraction(-1, 24), None)), (1, 2)
    ),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-circumference", type=Fraction, default=Fraction(9))
    args = ap.parse_args()
    base = builders.fig7_square_tiled()
    for name, spec in SPECS.items():
        s = builders.deform_square_tiled(base, spec, allow_holonomy=True)
        cyls = enumerate_cylinders(s, s.field.rational(args.max_circumference**2))
        vert = [c for c in cyls if crossing_counts(s, c.core.segments) == VERTICAL]
        line = f"{name:<26} sum n*theta = {spec.holonomy_angle()}pi  cylinders {len(cyls):>3}  "
        if vert:
            c = vert[0]
            rot = builders.crossing_rotation(s, [(x, 1) for x in crossing_word(s, c.core.segments)])
            line += f"vertical: embedded={c.embedded} rotation={rot}"
        else:
            line += "vertical: none"
        print(line)


if __name__ == "__main__":
    main()
