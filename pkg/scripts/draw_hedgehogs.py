"""Draw the envelopes of the built-in hedgehogs as SVG files."""

import argparse
import math
from pathlib import Path

from hedgehog_sections.scene import figure1_scene
from hedgehog_sections.svg import envelope_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=4096)
    ap.add_argument("--outdir", type=Path, default=Path("results"))
    args = ap.parse_args()

    args.outdir.mkdir(parents=True, exist_ok=True)
    scene = figure1_scene()
    for name, h in scene.hedgehogs.items():
        path = args.outdir / f"envelope_{name}.svg"
        path.write_text(envelope_svg(h, args.samples, lines=(0.0, math.pi / 2)))
        print(path)


if __name__ == "__main__":
    main()
