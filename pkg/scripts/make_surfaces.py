"""Write every example surface to surfaces/ in the text format."""
import argparse
import json
from fractions import Fraction
from pathlib import Path

from flatcyl import builders
from flatcyl.fileformat import format_surface

ROOT = Path(__file__).resolve().parent.parent


def deform_from(path):
    data = json.loads(path.read_text())
    tilts = tuple(
        builders.IntervalTilt(t["interval"], Fraction(t["psi"]), None if t["adjust"] is None else Fraction(t["adjust"]))
        for t in data["tilts"]
    )
    spec = builders.DeformationSpec(tilts, tuple(data["weights"]))
    return builders.deform_square_tiled(builders.fig7_square_tiled(), spec, data.get("allow_holonomy", False))


def examples(out):
    return {
        "torus": builders.torus(),
        "octagon": builders.regular_4g_gon(2),
        "4g-gon-3": builders.regular_4g_gon(3),
        "twelve-gon": builders.twelve_gon_genus3(),
        "building-block": builders.building_block(),
        "fig7": builders.fig7_square_tiled(),
        "fig6": builders.fig6_translation_h11(),
        "slit-cap": builders.slit_and_cap(builders.fig6_translation_h11(), builders.SlitSpec(0, Fraction(1, 20))),
        "deform-balanced": deform_from(out / "deform_balanced.json"),
        "deform-unbalanced": deform_from(out / "deform_unbalanced.json"),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=ROOT / "surfaces")
    args = ap.parse_args()
    for name, s in examples(args.out).items():
        path = args.out / f"{name}.srf"
        path.write_text(format_surface(s))
        print(f"{path.name}: {len(s.polygons)} polygons, order {s.order}")


if __name__ == "__main__":
    main()
