#!/usr/bin/env python3
"""Color-image demo: PPM -> two-sided transform -> spectrum image -> back.

Generates a synthetic color test card, pushes it through the CLI pipeline,
and verifies the reconstruction is byte-identical to the input.
"""

import argparse
import os

import numpy as np

from qgft.cli import main as qgft
from qgft.fileio import write_ppm


def test_card(n: int) -> np.ndarray:
    y, x = np.mgrid[0:n, 0:n]
    r = (127.5 * (1 + np.sin(2 * np.pi * 3 * x / n))).astype(np.uint8)
    g = (127.5 * (1 + np.cos(2 * np.pi * 5 * y / n))).astype(np.uint8)
    b = (255.0 * ((x // (n // 8) + y // (n // 8)) % 2)).astype(np.uint8)
    return np.stack([r, g, b], axis=-1)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=64)
    ap.add_argument("--outdir", default="image_demo")
    args = ap.parse_args()

    os.makedirs(args.outdir, exist_ok=True)
    p = lambda name: os.path.join(args.outdir, name)
    write_ppm(p("input.ppm"), test_card(args.size))

    steps = [
        ["img2q", p("input.ppm"), p("signal.qsig")],
        ["transform", p("signal.qsig"), p("spectrum.qsig"), "--kind", "sqft"],
        ["spectrum", p("spectrum.qsig"), p("spectrum.ppm")],
        ["inverse", p("spectrum.qsig"), p("reconstructed.qsig"), "--kind", "sqft"],
        ["q2img", p("reconstructed.qsig"), p("output.ppm")],
    ]
    for argv in steps:
        rc = qgft(argv)
        if rc != 0:
            raise SystemExit(f"step failed ({rc}): {' '.join(argv)}")

    with open(p("input.ppm"), "rb") as a, open(p("output.ppm"), "rb") as b:
        identical = a.read() == b.read()
    print(f"wrote {args.outdir}/: input.ppm spectrum.ppm output.ppm")
    print("round trip byte-identical:", identical)
    if not identical:
        raise SystemExit(1)


if __name__ == "__main__":
    main()
