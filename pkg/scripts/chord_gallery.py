"""Chord tables for every built-in generating family.

Runs the fiber-critical scan and the chord enumeration on each sample
family, prints value/index/degree tables with the duality audit already
applied, and leaves one SVG front per family next to the script when
--svg is passed.
"""

import sys

from legcob.gfnum import (fiber_critical_set, fish_family, reeb_chords,
                          scaled_unknot_family, shifted_unknot_family, spin,
                          stacked_pair_family, unknot_family)
from legcob.render import render_points_svg

FAMILIES = [
    ("unknot", unknot_family(), 0.05),
    ("scaled-unknot", scaled_unknot_family(), 0.05),
    ("shifted-unknot", shifted_unknot_family(), 0.05),
    ("fish", fish_family(), 0.05),
    ("stacked-pair", stacked_pair_family(), 0.05),
    ("saucer", spin(unknot_family()), 0.1),
]


def main(write_svg=False):
    for name, fam, step in FAMILIES:
        pts = fiber_critical_set(fam, step=step)
        chords, gamma, report = reeb_chords(fam, step=step)
        print(f"{name}: n={fam.n} N={fam.N} "
              f"front samples={len(pts)} chords={len(chords)} "
              f"gamma={gamma}")
        for c in chords:
            print(f"  value {c.value:>12.6f}  index {c.index}  "
                  f"degree {c.degree:>2}  margin "
                  f"{c.min_abs_hessian_eigenvalue:.3g}")
        for w in report["warnings"]:
            print(f"  note: {w}")
        if write_svg:
            path = f"{name}_front.svg"
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(render_points_svg(pts))
            print(f"  wrote {path}")
        print()


if __name__ == "__main__":
    main(write_svg="--svg" in sys.argv[1:])
