"""Cubic files: ``{"scalar": "rational"|"golden"|"float", "coeffs": [10 values], "meta": {...}}``.

Coefficients follow the fixed monomial order of :data:`icosaharm.poly3.MONOMIALS`.
Rationals are integers or ``"p/q"`` strings, golden values ``{"a": .., "b": ..}``
meaning ``a + b√5``, floats plain JSON numbers.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .poly3 import MONOMIALS, Cubic
from .scalars import Golden, golden_from_json, golden_to_json, rational_from_json, rational_to_json

SCALAR_MODES = ("rational", "golden", "float")


class CubicParseError(ValueError):
    """Schema or syntax problem in a cubic file; ``where`` names the line or field."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


def cubic_from_obj(obj) -> Cubic:
    if not isinstance(obj, dict):
        raise CubicParseError("top level must be an object", "$")
    mode = obj.get("scalar", "rational")
    if mode not in SCALAR_MODES:
        raise CubicParseError(f"unknown scalar mode {mode!r}; expected one of {SCALAR_MODES}", "scalar")
    coeffs = obj.get("coeffs")
    if not isinstance(coeffs, list):
        raise CubicParseError("missing coefficient list", "coeffs")
    if len(coeffs) != 10:
        raise CubicParseError(f"expected 10 coefficients, got {len(coeffs)}", "coeffs")
    out = []
    for i, c in enumerate(coeffs):
        where = f"coeffs[{i}] (x^{MONOMIALS[i]})"
        try:
            if mode == "rational":
                out.append(rational_from_json(c))
            elif mode == "golden":
                out.append(golden_from_json(c))
            else:
                if isinstance(c, bool) or not isinstance(c, (int, float)):
                    raise TypeError(f"expected a number, got {c!r}")
                out.append(float(c))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise CubicParseError(str(exc), where) from None
    return Cubic(tuple(out))


def cubic_to_obj(f: Cubic, meta: dict | None = None) -> dict:
    mode = f.scalar_kind()
    if mode == "rational":
        coeffs = [rational_to_json(c) for c in f.coeffs]
    elif mode == "golden":
        coeffs = [golden_to_json(c) for c in f.coeffs]
    else:
        coeffs = [float(c) for c in f.coeffs]
    obj = {"scalar": mode, "coeffs": coeffs}
    if meta:
        obj["meta"] = meta
    return obj


def loads_cubic(text: str) -> Cubic:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CubicParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return cubic_from_obj(obj)


def parse_cubic(path: str) -> Cubic:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise CubicParseError(exc.strerror or str(exc), path) from None
    return loads_cubic(text)


def dumps_cubic(f: Cubic, meta: dict | None = None) -> str:
    return json.dumps(cubic_to_obj(f, meta))


def write_cubic(f: Cubic, path: str, meta: dict | None = None) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_cubic(f, meta) + "\n")


__all__ = [
    "CubicParseError",
    "cubic_from_obj",
    "cubic_to_obj",
    "loads_cubic",
    "parse_cubic",
    "dumps_cubic",
    "write_cubic",
    "Golden",
    "Fraction",
]
