"""Walk one symbol through the whole equivalence chain of sections.

Builds the dual, paired, truncated, and block-Toeplitz sections for a
conjugate-monomial symbol, reports each kernel dimension with its
singular-value gap, and checks that the kernel maps line up to within
the subspace angle printed at the end.
"""
import argparse
import sys

import numpy as np

from dttlab.analysis import (dual_matrix, kernel, kernel_iso_N, kernel_iso_NDA,
                             stack_pair, subspace_angle)
from dttlab.blaschke import blaschke
from dttlab.fourier import FourierVector
from dttlab.operators import (block_toeplitz_matrix, g_matrix,
                              paired_operator_matrix, paired_symbols,
                              truncated_toeplitz_matrix)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--power", type=int, default=1,
                    help="conjugate-monomial symbol exponent k for conj(z)^k")
    ap.add_argument("--zeros", default="0,0",
                    help="comma-separated Blaschke zeros")
    ap.add_argument("--window", type=int, default=48)
    ap.add_argument("--margin", type=int, default=10)
    args = ap.parse_args(argv)

    w = args.window
    theta = blaschke(*[complex(t) for t in args.zeros.split(",")])
    phi = FourierVector.from_terms({-args.power: 1.0}, w)
    phi_inv = FourierVector.from_terms({args.power: 1.0}, w)

    sections = [
        ("dual", kernel(dual_matrix(phi, theta, theta, w), margin=args.margin)),
        ("paired", kernel(paired_operator_matrix(
            paired_symbols(phi, theta, theta, w), w), margin=args.margin)),
        ("truncated", kernel(truncated_toeplitz_matrix(phi_inv, theta, theta, w))),
        ("block", kernel(block_toeplitz_matrix(g_matrix(phi, theta, theta, w), w),
                         margin=args.margin)),
    ]
    for name, rep in sections:
        flag = " (ambiguous)" if rep.ambiguous else ""
        print(f"{name:10s} dim {rep.dimension}  gap {rep.gap_ratio:.2e}{flag}")

    d_rep = sections[0][1]
    if d_rep.dimension == 0:
        print("trivial kernel, nothing to map")
        return 0
    cols_n, cols_a = [], []
    for j in range(d_rep.dimension):
        f = FourierVector(d_rep.ambient_matrix()[:, j].copy())
        cols_n.append(stack_pair(kernel_iso_N(f, phi, theta, theta), w))
        cols_a.append(kernel_iso_NDA(f, phi, theta, theta).resize(w).coeffs)
    ang_n = subspace_angle(np.column_stack(cols_n),
                           sections[1][1].ambient_matrix())
    ang_a = subspace_angle(np.column_stack(cols_a),
                           sections[2][1].ambient_matrix())
    print(f"map into paired kernel: angle {ang_n:.2e}")
    print(f"map into truncated kernel: angle {ang_a:.2e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
