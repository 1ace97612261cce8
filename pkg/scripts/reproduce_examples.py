"""Invariants, cylinder counts and figures for the example surfaces.

Writes results/summary.txt and results/octagon_cylinders.svg.  The
twelve-gon run at four triangle sides takes about a minute; skip it with
--quick.
"""
import argparse
import time
from fractions import Fraction
from pathlib import Path

from flatcyl import builders
from flatcyl.cli import info_lines
from flatcyl.curvegraph import disjointness_graph
from flatcyl.cylinder import enumerate_cylinders
from flatcyl.svg import Overlays, emit_svg

ROOT = Path(__file__).resolve().parent.parent


def count_row(name, s, L2, label):
    t = time.time()
    cyls = enumerate_cylinders(s, L2)
    emb = [c for c in cyls if c.embedded]
    g = disjointness_graph(s, [c.core for c in emb])
    return cyls, (
        f"{name:<14} {label:<10} cylinders {len(cyls):>3}  embedded {len(emb):>2}  "
        f"graph diameters {g.diameters}  {time.time() - t:6.1f} s"
    )


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=ROOT / "results")
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    args.out.mkdir(exist_ok=True)
    lines = []

    surfaces = {
        "octagon": builders.regular_4g_gon(2),
        "4g-gon g=3": builders.regular_4g_gon(3),
        "twelve-gon": builders.twelve_gon_genus3(),
        "fig6": builders.fig6_translation_h11(),
        "slit-cap": builders.slit_and_cap(builders.fig6_translation_h11(), builders.SlitSpec(0, Fraction(1, 20))),
    }
    for name, s in surfaces.items():
        lines.append(f"[{name}]")
        lines.extend("  " + l for l in info_lines(s))

    lines.append("")
    lines.append("cylinder counts (L in multiples of the polygon side)")
    for g in (2, 3, 4):
        s = builders.regular_4g_gon(g)
        side = s.polygons[0].edge_vector(0).norm_sq()
        for k in (3, 4, 6) if g < 4 else (4,):
            cyls, row = count_row(f"4g-gon g={g}", s, side * (k * k), f"L={k}s")
            lines.append(row)
            if g == 2 and k == 4:
                (args.out / "octagon_cylinders.svg").write_text(
                    emit_svg(s, Overlays(cylinders=[c for c in cyls if c.embedded]))
                )
    if not args.quick:
        s = surfaces["twelve-gon"]
        cyls, row = count_row("twelve-gon", s, s.field.rational(256), "L=16")
        lines.append(row)
        lines.append(f"  every non-embedded cylinder has an overlap witness: {all(c.witness for c in cyls)}")

    text = "\n".join(lines) + "\n"
    (args.out / "summary.txt").write_text(text)
    print(text, end="")


if __name__ == "__main__":
    main()
