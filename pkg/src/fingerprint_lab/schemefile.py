"""JSON scheme files and canonical report encoding.

Complex entries are ``[re, im]`` pairs. Floats are written with 17
significant digits and object keys are sorted, so write -> read -> write is
byte-stable.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import FingerprintError
from .protocol import FingerprintScheme


class SchemeFileError(FingerprintError):
    """A scheme file is unreadable or structurally wrong."""


def format_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot encode non-finite value {x!r}")
    return format(x, ".17g")


def _encode(obj) -> str:
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(obj[k])}" for k in sorted(obj)) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    if isinstance(obj, np.ndarray):
        return _encode(obj.tolist())
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj: dict) -> str:
    """Canonical JSON: sorted keys, one top-level key per line, 17-digit floats."""
    if not isinstance(obj, dict):
        return _encode(obj) + "\n"
    lines = [f"  {json.dumps(str(k))}: {_encode(obj[k])}" for k in sorted(obj)]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def _complex_pairs(mat) -> list:
    arr = np.asarray(mat, dtype=np.complex128)
    if arr.ndim == 1:
        return [[float(z.real), float(z.imag)] for z in arr]
    return [_complex_pairs(row) for row in arr]


def scheme_to_dict(scheme: FingerprintScheme) -> dict:
    out = {
        "n": scheme.n,
        "m": scheme.m,
        "lambda": [float(v) for v in scheme.lam],
        "alice_ops": _complex_pairs(scheme.alice_ops),
        "bob_ops": _complex_pairs(scheme.bob_ops),
        "alpha": _complex_pairs(scheme.alpha.reshape(-1)),
    }
    if scheme.label:
        out["label"] = scheme.label
    return out


def _parse_complex(node, shape, what: str) -> np.ndarray:
    arr = np.asarray(node, dtype=np.float64)
    if arr.shape != tuple(shape) + (2,):
        raise SchemeFileError(f"{what} has shape {arr.shape[:-1]}, expected {tuple(shape)}")
    return arr[..., 0] + 1j * arr[..., 1]


def scheme_from_dict(doc: dict) -> FingerprintScheme:
    try:
        n = doc["n"]
        m = doc["m"]
        if not isinstance(n, int) or not isinstance(m, int) or n < 1 or m < 2:
            raise SchemeFileError("'n' and 'm' must be integers with n >= 1, m >= 2")
        lam = np.asarray(doc["lambda"], dtype=np.float64)
        alice = _parse_complex(doc["alice_ops"], (m, n, n), "alice_ops")
        bob = _parse_complex(doc["bob_ops"], (m, n, n), "bob_ops")
        alpha = _parse_complex(doc["alpha"], (n * n,), "alpha").reshape(n, n)
        label = doc.get("label", "")
    except KeyError as exc:
        raise SchemeFileError(f"missing key {exc}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, FingerprintError):
            raise
        raise SchemeFileError(f"malformed entry: {exc}") from None
    try:
        return FingerprintScheme(lam, alice, bob, alpha, label=label)
    except FingerprintError as exc:
        raise SchemeFileError(str(exc)) from None


def dumps_scheme(scheme: FingerprintScheme) -> str:
    return dumps(scheme_to_dict(scheme))


def loads_scheme(text: str) -> FingerprintScheme:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemeFileError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemeFileError("top level must be an object")
    return scheme_from_dict(doc)


def write_scheme(scheme: FingerprintScheme, path) -> None:
    Path(path).write_text(dumps_scheme(scheme))


def read_scheme(path) -> FingerprintScheme:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SchemeFileError(f"cannot read {path}: {exc}") from None
    return loads_scheme(text)
