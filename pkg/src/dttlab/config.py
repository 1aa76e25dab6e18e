"""Problem configuration: schema validation and defaults.

Configs are plain JSON.  Unknown fields are rejected so that typos fail
loudly, and every default that influenced a run is echoed back in the
report for reproducibility.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import jsonschema

from .blaschke import BlaschkeProduct
from .errors import ConfigError
from .fourier import FourierVector
from .rational import RationalFunction

_COMPLEX = {
    "oneOf": [
        {"type": "number"},
        {"type": "array", "items": {"type": "number"},
         "minItems": 2, "maxItems": 2},
    ]
}

_BLASCHKE = {
    "type": "object",
    "properties": {
        "zeros": {"type": "array", "items": _COMPLEX},
        "constant": _COMPLEX,
    },
    "required": ["zeros"],
    "additionalProperties": False,
}

_SYMBOL = {
    "type": "object",
    "oneOf": [
        {
            "properties": {
                "rational": {
                    "type": "object",
                    "properties": {
                        "num": {"type": "array", "items": _COMPLEX, "minItems": 1},
                        "den": {"type": "array", "items": _COMPLEX, "minItems": 1},
                    },
                    "required": ["num", "den"],
                    "additionalProperties": False,
                },
            },
            "required": ["rational"],
            "additionalProperties": False,
        },
        {
            "properties": {
                # centered coefficient list of odd length 2k+1 covering
                # frequencies -k..k
                "trig_poly": {
                    "type": "object",
                    "properties": {
                        "coeffs": {"type": "array", "items": _COMPLEX,
                                   "minItems": 1},
                    },
                    "required": ["coeffs"],
                    "additionalProperties": False,
                },
            },
            "required": ["trig_poly"],
            "additionalProperties": False,
        },
    ],
}

_TOLERANCES = {
    "type": "object",
    "properties": {
        "kernel_threshold": {"type": ["number", "null"]},
        "corona_delta": {"type": "number", "exclusiveMinimum": 0},
        "residual": {"type": "number", "exclusiveMinimum": 0},
    },
    "additionalProperties": False,
}

_GRID = {
    "type": "object",
    "properties": {
        "re_min": {"type": "number"}, "re_max": {"type": "number"},
        "im_min": {"type": "number"}, "im_max": {"type": "number"},
        "step": {"type": "number", "exclusiveMinimum": 0},
    },
    "required": ["re_min", "re_max", "im_min", "im_max", "step"],
    "additionalProperties": False,
}

CONFIG_SCHEMA = {
    "type": "object",
    "properties": {
        "symbol": _SYMBOL,
        "theta": _BLASCHKE,
        "alpha": _BLASCHKE,
        "window": {"type": "integer", "minimum": 1},
        "dual": {"type": "integer", "minimum": 0},
        "tolerances": _TOLERANCES,
        "grid": _GRID,
        "kind": {"type": "string",
                 "enum": ["toeplitz", "truncated", "dual", "paired",
                          "block", "E", "F", "G"]},
        "margin": {"type": "integer", "minimum": 0},
        "only": {"type": "array", "items": {"type": "string"}},
    },
    "additionalProperties": False,
}

DEFAULT_TOLERANCES = {
    "kernel_threshold": None,
    "corona_delta": 1e-4,
    "residual": 1e-8,
}
DEFAULT_WINDOW = 32


def _complex_of(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    return complex(v[0], v[1])


@dataclass(eq=False)
class ProblemConfig:
    """Validated problem description with defaults filled in."""

    symbol: RationalFunction | FourierVector | None
    theta: BlaschkeProduct | None
    alpha: BlaschkeProduct | None
    window: int
    dual: int
    tolerances: dict
    grid: dict | None = None
    kind: str | None = None
    margin: int | None = None
    only: list[str] = field(default_factory=list)
    raw: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: dict, default_window: int = DEFAULT_WINDOW,
                  ) -> "ProblemConfig":
        try:
            jsonschema.validate(data, CONFIG_SCHEMA)
        except jsonschema.ValidationError as exc:
            path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
            raise ConfigError(f"config invalid at {path}: {exc.message}") from exc
        symbol = None
        if "symbol" in data:
            body = data["symbol"]
            if "rational" in body:
                symbol = RationalFunction.from_json(body["rational"])
            else:
                coeffs = [_complex_of(c) for c in body["trig_poly"]["coeffs"]]
                if len(coeffs) % 2 != 1:
                    raise ConfigError(
                        "trig_poly coeffs must have odd length (centered window)"
                    )
                import numpy as np

                symbol = FourierVector(np.asarray(coeffs, dtype=complex))
        theta = BlaschkeProduct.from_json(data["theta"]) if "theta" in data else None
        alpha = BlaschkeProduct.from_json(data["alpha"]) if "alpha" in data else theta
        window = int(data.get("window", default_window))
        dual = int(data.get("dual", window))
        tol = dict(DEFAULT_TOLERANCES)
        tol.update(data.get("tolerances", {}))
        return cls(symbol, theta, alpha, window, dual, tol,
                   grid=data.get("grid"), kind=data.get("kind"),
                   margin=data.get("margin"),
                   only=list(data.get("only", [])), raw=dict(data))

    def echo(self) -> dict:
        """Full effective configuration, defaults included."""
        out: dict = {"window": self.window, "dual": self.dual,
                     "tolerances": dict(self.tolerances)}
        if self.symbol is not None:
            if isinstance(self.symbol, RationalFunction):
                out["symbol"] = {"rational": self.symbol.to_json()}
            else:
                out["symbol"] = {"trig_poly": {"coeffs": [
                    [float(c.real), float(c.imag)] for c in self.symbol.coeffs
                ]}}
        if self.theta is not None:
            out["theta"] = self.theta.to_json()
        if self.alpha is not None:
            out["alpha"] = self.alpha.to_json()
        if self.grid is not None:
            out["grid"] = dict(self.grid)
        if self.kind is not None:
            out["kind"] = self.kind
        if self.margin is not None:
            out["margin"] = self.margin
        if self.only:
            out["only"] = list(self.only)
        return out
