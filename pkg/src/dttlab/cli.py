"""Batch front-end: build operator sections, compute kernels, scan spectra,
and rerun the self-verification suite.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 numeric precondition failure, 4 ambiguous singular-value gap.  Wall-clock
timings go to stderr so identical configs produce byte-identical files.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import GridSpec, dual_matrix, kernel, rational_kernel_solve, spectrum_scan
from .blaschke import BlaschkeProduct
from .config import DEFAULT_WINDOW, ProblemConfig
from .errors import AmbiguousGapError, ConfigError, DttlabError, PreconditionError
from .fourier import FourierVector
from .operators import (
    SymbolMatrix,
    block_toeplitz_matrix,
    dual_truncated_matrix,
    extension_e_matrix,
    extension_f_matrices,
    g_matrix,
    paired_operator_matrix,
    paired_symbols,
    toeplitz_matrix,
    truncated_toeplitz_matrix,
)
from .rational import RationalFunction
from .serialize import matrix_csv_rows, write_csv, write_json
from .verify import KNOWN_TAGS, run_suite

ENV_WINDOW = "DTTLAB_WINDOW"


def _default_window() -> int:
    raw = os.environ.get(ENV_WINDOW)
    if raw is None:
        return DEFAULT_WINDOW
    try:
        value = int(raw)
    except ValueError as exc:
        raise ConfigError(f"{ENV_WINDOW} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ConfigError(f"{ENV_WINDOW} must be positive, got {value}")
    return value


def _load_config(path: str | None, required: bool = True) -> ProblemConfig:
    if path is None:
        if required:
            raise ConfigError("--config is required for this command")
        return ProblemConfig.from_dict({}, default_window=_default_window())
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config root must be a JSON object")
    return ProblemConfig.from_dict(data, default_window=_default_window())


def _report(config: ProblemConfig, results: dict) -> dict:
    return {
        "version": __version__,
        "config": config.echo(),
        "timings": {"policy": "stderr-only"},
        "results": results,
    }


def _require_symbol(config: ProblemConfig):
    if config.symbol is None:
        raise ConfigError("this command needs a symbol block")
    return config.symbol


def _require_theta(config: ProblemConfig) -> BlaschkeProduct:
    if config.theta is None:
        raise ConfigError("this command needs a theta block")
    return config.theta


def _symbol_vector(config: ProblemConfig, radius: int) -> FourierVector:
    sym = _require_symbol(config)
    if isinstance(sym, RationalFunction):
        return sym.fourier(radius)
    return sym.resize(radius)


def cmd_build(config: ProblemConfig, out: Path) -> int:
    if config.kind is None:
        raise ConfigError("build needs a kind field")
    n = config.window
    m = config.dual
    kind = config.kind
    extra: dict = {}
    if kind == "toeplitz":
        mat = toeplitz_matrix(_symbol_vector(config, n), n)
    elif kind == "truncated":
        mat = truncated_toeplitz_matrix(_require_symbol(config),
                                        _require_theta(config),
                                        config.alpha, n)
    elif kind == "dual":
        theta = _require_theta(config)
        m_top = m - theta.degree
        if m_top < 0:
            raise PreconditionError(
                f"dual size {m} below the inner degree {theta.degree}")
        mat = dual_truncated_matrix(_require_symbol(config), theta,
                                    config.alpha, m, m_top, n)
    elif kind == "paired":
        phi = _require_symbol(config)
        theta = _require_theta(config)
        pair = paired_symbols(phi, theta, config.alpha, n)
        mat = paired_operator_matrix(pair, n)
        extra["determinant_residuals"] = pair.determinant_residuals(
            phi, theta, config.alpha)
    elif kind == "block":
        theta = _require_theta(config)
        alpha = config.alpha
        phi = _symbol_vector(config, n)
        sym = SymbolMatrix([
            [theta.series(n).conjugate(), FourierVector.zero(n)],
            [phi, alpha.series(n)],
        ])
        mat = block_toeplitz_matrix(sym, n)
        extra["symbol_matrix"] = sym.to_json()
    elif kind == "E":
        alpha = config.alpha or config.theta
        if alpha is None:
            raise ConfigError("E needs alpha (or theta) in the config")
        mat = extension_e_matrix(alpha, n)
    elif kind == "F":
        f_mat, f_inv = extension_f_matrices(_require_symbol(config),
                                            _require_theta(config),
                                            config.alpha, n)
        write_json(out / "build.json", _report(config, {
            "kind": kind,
            "matrix": f_mat,
            "inverse": f_inv,
        }))
        write_csv(out / "matrix.csv", ["row", "col", "re", "im"],
                  matrix_csv_rows(f_mat.entries))
        write_csv(out / "matrix_inverse.csv", ["row", "col", "re", "im"],
                  matrix_csv_rows(f_inv.entries))
        print(f"{kind}: {f_mat.shape[0]}x{f_mat.shape[1]} and inverse written")
        return 0
    elif kind == "G":
        mat = block_toeplitz_matrix(
            g_matrix(_require_symbol(config), _require_theta(config),
                     config.alpha, n), n)
    else:
        raise ConfigError(f"unknown build kind {kind!r}")
    write_json(out / "build.json", _report(config, {
        "kind": kind,
        "matrix": mat,
        **extra,
    }))
    write_csv(out / "matrix.csv", ["row", "col", "re", "im"],
              matrix_csv_rows(mat.entries))
    print(f"{kind}: {mat.shape[0]}x{mat.shape[1]} written")
    return 0


def cmd_kernel(config: ProblemConfig, out: Path) -> int:
    theta = _require_theta(config)
    sym = _require_symbol(config)
    n = config.window
    margin = config.margin if config.margin is not None else 10
    threshold = config.tolerances.get("kernel_threshold")
    alpha = config.alpha
    same_inner = alpha is theta or (
        alpha is not None and alpha.degree == theta.degree
        and bool(np.allclose(np.sort_complex(alpha.zeros),
                             np.sort_complex(theta.zeros)))
        and abs(alpha.constant - theta.constant) < 1e-12)
    if isinstance(sym, RationalFunction) and same_inner:
        rep = rational_kernel_solve(sym, theta, n, cross_validate=True,
                                    margin=margin)
    else:
        m = config.dual
        m_top = m - max(theta.degree, config.alpha.degree)
        if m_top < 0:
            raise PreconditionError(
                f"dual size {m} below the inner degree")
        mat = dual_truncated_matrix(sym, theta, config.alpha, m, m_top, n)
        rep = kernel(mat, threshold=threshold, margin=margin)
    write_json(out / "kernel.json", _report(config, {"kernel": rep}))
    print(rep.dimension)
    rep.require_unambiguous()
    return 0


def cmd_spectrum(config: ProblemConfig, out: Path) -> int:
    if config.grid is None:
        raise ConfigError("spectrum needs a grid block")
    theta = _require_theta(config)
    sym = _require_symbol(config)
    grid = GridSpec(**config.grid)
    rep = spectrum_scan(sym, theta, grid, config.window)
    write_json(out / "spectrum.json", _report(config, {"spectrum": rep}))
    write_csv(out / "spectrum.csv",
              ["lam_re", "lam_im", "kernel_dim", "verdict"], rep.csv_rows())
    print(rep.summary())
    return 0


def cmd_verify(config: ProblemConfig, out: Path, only: list[str]) -> int:
    window = None
    if config.raw.get("window") is not None:
        window = config.window
    elif os.environ.get(ENV_WINDOW) is not None:
        window = _default_window()
    tags = only or config.only or None
    results, code = run_suite(window=window, tolerances=config.tolerances,
                              only=tags)
    for r in results:
        print(r.line())
    counts = {
        "pass": sum(1 for r in results if r.status == "pass"),
        "fail": sum(1 for r in results if r.status == "fail"),
        "precondition": sum(1 for r in results if r.status == "precondition"),
        "ambiguous": sum(1 for r in results if r.status == "ambiguous"),
    }
    print(f"{counts['pass']}/{len(results)} pass, {counts['fail']} fail, "
          f"{counts['precondition']} precondition, "
          f"{counts['ambiguous']} ambiguous")
    write_json(out / "verify.json", _report(config, {
        "checks": [r.to_json() for r in results],
        "counts": counts,
        "window": window,
    }))
    return code


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="dttlab",
        description="finite-section operator laboratory",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, needs_config in [("build", True), ("kernel", True),
                               ("spectrum", True), ("verify", False)]:
        p = sub.add_parser(name)
        p.add_argument("--config", default=None,
                       required=False, help="JSON problem description")
        p.add_argument("--out", default=".", help="output directory")
        if name == "verify":
            p.add_argument("--only", action="append", default=[],
                           metavar="TAG",
                           help=f"run one tag (repeatable); known: "
                                f"{', '.join(KNOWN_TAGS)}")
    args = parser.parse_args(argv)

    t0 = time.monotonic()
    try:
        config = _load_config(args.config,
                              required=args.command != "verify")
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        if args.command == "build":
            code = cmd_build(config, out)
        elif args.command == "kernel":
            code = cmd_kernel(config, out)
        elif args.command == "spectrum":
            code = cmd_spectrum(config, out)
        else:
            code = cmd_verify(config, out, list(args.only))
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except AmbiguousGapError as exc:
        print(f"ambiguous gap: {exc}", file=sys.stderr)
        return 4
    except PreconditionError as exc:
        print(f"precondition failure: {exc}", file=sys.stderr)
        return 3
    except DttlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wall {time.monotonic() - t0:.2f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
