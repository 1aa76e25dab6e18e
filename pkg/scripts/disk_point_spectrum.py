"""Point-spectrum scan of the dual shift over a disk-covering grid.

For an inner function vanishing at the origin every interior grid point
carries a one-dimensional kernel; otherwise the point spectrum is empty.
Points within two grid steps of the unit circle are refused rather than
classified, since finite sections cannot separate them from the
essential curve.
"""
import argparse
import sys

from dttlab.analysis import GridSpec, spectrum_scan
from dttlab.blaschke import blaschke
from dttlab.rational import RationalFunction


def parse_zeros(spec: str) -> list[complex]:
    if not spec:
        return []
    return [complex(tok) for tok in spec.split(",")]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--zeros", default="0,0,0",
                    help="comma-separated Blaschke zeros, e.g. '0,0.5'")
    ap.add_argument("--step", type=float, default=0.1)
    ap.add_argument("--extent", type=float, default=1.5)
    ap.add_argument("--window", type=int, default=24)
    ap.add_argument("--out", help="optional CSV path")
    args = ap.parse_args(argv)

    theta = blaschke(*parse_zeros(args.zeros))
    grid = GridSpec(-args.extent, args.extent, -args.extent, args.extent,
                    args.step)
    sym = RationalFunction([0.0, 1.0], [1.0])
    rep = spectrum_scan(sym, theta, grid, radius=args.window)
    print(rep.summary())
    refused = sum(1 for r in rep.records if r["kernel_dim"] < 0)
    inv = sum(1 for r in rep.records if r["verdict"] == "invertible")
    print(f"grid {len(rep.records)} points: {len(rep.point_spectrum_hits)} "
          f"kernel hits, {inv} invertible, {refused} refused near the circle")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("lam_re,lam_im,kernel_dim,verdict\n")
            for re, im, dim, verdict in rep.csv_rows():
                fh.write(f"{re:.17g},{im:.17g},{dim},{verdict}\n")
        print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
