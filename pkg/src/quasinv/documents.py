"""JSON channel documents: parsing, rendering, and the published schemas.

One JSON object describes one channel. Complex numbers are [re, im]
pairs, matrices are row-major nested arrays, and all floats are emitted
with 17 significant digits so documents round-trip exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .channels import AffineChannel, KrausChannel, kraus_to_affine
from .zoo import FamilySpec, make

CHANNEL_TYPES = ("kraus", "affine", "pauli", "gad", "mixed_unitary", "tetrahedron", "unitary")


class DocumentError(ValueError):
    """A channel document that cannot be parsed or fails validation."""


@dataclass
class ParsedChannel:
    """A channel document resolved to concrete representations."""

    label: str
    doc: dict
    affine: AffineChannel
    kraus: KrausChannel | None


# ---------------------------------------------------------------------------
# published JSON schemas
# ---------------------------------------------------------------------------

_COMPLEX = {
    "type": "array",
    "items": {"type": "number"},
    "minItems": 2,
    "maxItems": 2,
}
_CMATRIX2 = {
    "type": "array",
    "minItems": 2,
    "maxItems": 2,
    "items": {"type": "array", "minItems": 2, "maxItems": 2, "items": _COMPLEX},
}
_RVECTOR3 = {"type": "array", "minItems": 3, "maxItems": 3, "items": {"type": "number"}}
_RMATRIX3 = {"type": "array", "minItems": 3, "maxItems": 3, "items": _RVECTOR3}
_RMATRIX4 = {
    "type": "array",
    "minItems": 4,
    "maxItems": 4,
    "items": {"type": "array", "minItems": 4, "maxItems": 4, "items": {"type": "number"}},
}

CHANNEL_DOCUMENT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "channel document",
    "type": "object",
    "required": ["type"],
    "properties": {"label": {"type": "string"}},
    "oneOf": [
        {
            "properties": {
                "type": {"const": "kraus"},
                "operators": {"type": "array", "minItems": 1, "items": _CMATRIX2},
            },
            "required": ["type", "operators"],
        },
        {
            "properties": {"type": {"const": "affine"}, "m": _RMATRIX3, "c": _RVECTOR3},
            "required": ["type", "m", "c"],
        },
        {
            "properties": {
                "type": {"const": "pauli"},
                "p": {"type": "array", "minItems": 4, "maxItems": 4, "items": {"type": "number"}},
            },
            "required": ["type", "p"],
        },
        {
            "properties": {
                "type": {"const": "gad"},
                "gamma": {"type": "number"},
                "p": {"type": "number"},
            },
            "required": ["type", "gamma", "p"],
        },
        {
            "properties": {
                "type": {"const": "mixed_unitary"},
                "p": {"type": "number"},
                "theta": {"type": "number"},
            },
            "required": ["type", "p", "theta"],
        },
        {
            "properties": {
                "type": {"const": "tetrahedron"},
                "p": {"type": "number"},
                "p_prime": {"type": "number"},
            },
            "required": ["type", "p", "p_prime"],
        },
        {
            "properties": {
                "type": {"const": "unitary"},
                "theta": {"type": "number"},
                "axis": _RVECTOR3,
            },
            "required": ["type", "theta", "axis"],
        },
    ],
}

_CPTP_SCHEMA = {
    "type": "object",
    "required": ["tp_exact", "tp_residual", "min_choi_eigenvalue", "passed"],
    "properties": {
        "tp_exact": {"type": "boolean"},
        "tp_residual": {"type": ["number", "null"]},
        "min_choi_eigenvalue": {"type": "number"},
        "passed": {"type": "boolean"},
    },
}

RESULT_DOCUMENT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "analysis result document",
    "type": "object",
    "required": ["input", "affine", "cptp"],
    "properties": {
        "input": {"type": "object"},
        "affine": {
            "type": "object",
            "required": ["m", "c"],
            "properties": {"m": _RMATRIX3, "c": _RVECTOR3},
        },
        "cptp": _CPTP_SCHEMA,
        "mstd_before": {"type": "number"},
        "q_matrix": _RMATRIX4,
        "lambda_max": {"type": "number"},
        "quasi_inverse": {
            "type": "object",
            "required": ["x", "matrix"],
            "properties": {
                "x": {
                    "type": "array",
                    "minItems": 4,
                    "maxItems": 4,
                    "items": {"type": "number"},
                },
                "matrix": _CMATRIX2,
            },
        },
        "delta_mstd": {"type": "number"},
        "mstd_after": {"type": "number"},
        "trivial": {"type": "boolean"},
        "degenerate": {"type": "boolean"},
    },
}

MSTD_DOCUMENT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "mstd document",
    "type": "object",
    "required": ["input", "mstd"],
    "properties": {
        "input": {"type": "object"},
        "mstd": {
            "type": "object",
            "required": ["value", "method", "stderr", "n_samples"],
            "properties": {
                "value": {"type": "number"},
                "method": {
                    "enum": [
                        "analytic-ball",
                        "analytic-surface",
                        "monte-carlo-ball",
                        "monte-carlo-surface",
                    ]
                },
                "stderr": {"type": ["number", "null"]},
                "n_samples": {"type": ["integer", "null"]},
            },
        },
    },
}

VERIFICATION_DOCUMENT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "verification document",
    "type": "object",
    "required": ["input", "verification"],
    "properties": {
        "input": {"type": "object"},
        "verification": {
            "type": "object",
            "required": [
                "channel_id",
                "solver_delta",
                "best_sampled_delta",
                "n_samples",
                "max_violation",
                "passed",
            ],
            "properties": {
                "channel_id": {"type": "string"},
                "solver_delta": {"type": "number"},
                "best_sampled_delta": {"type": "number"},
                "n_samples": {"type": "integer"},
                "max_violation": {"type": "number"},
                "passed": {"type": "boolean"},
            },
        },
    },
}

ERROR_DOCUMENT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "error document",
    "type": "object",
    "required": ["error"],
    "properties": {
        "error": {
            "type": "object",
            "required": ["code", "message"],
            "properties": {"code": {"type": "string"}, "message": {"type": "string"}},
        }
    },
}


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _require(obj: dict, key: str):
    if key not in obj:
        raise DocumentError(f"channel document is missing field {key!r}")
    return obj[key]


def _as_float(value, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DocumentError(f"field {name!r} must be a number")
    return float(value)


def _as_complex_matrix(raw, name: str) -> np.ndarray:
    arr = np.asarray(raw, dtype=float)
    if arr.shape != (2, 2, 2):
        raise DocumentError(f"{name} must be a 2x2 matrix of [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def parse_channel_document(obj) -> ParsedChannel:
    """Resolve a channel document to affine (always) and Kraus (when known)."""
    if not isinstance(obj, dict):
        raise DocumentError("channel document must be a JSON object")
    doc_type = _require(obj, "type")
    if doc_type not in CHANNEL_TYPES:
        raise DocumentError(f"unknown channel type {doc_type!r}, expected one of {CHANNEL_TYPES}")
    label = obj.get("label", "")
    if not isinstance(label, str):
        raise DocumentError("label must be a string")

    try:
        if doc_type == "kraus":
            raw_ops = _require(obj, "operators")
            if not isinstance(raw_ops, list) or not raw_ops:
                raise DocumentError("kraus document needs a nonempty operators list")
            ops = [_as_complex_matrix(op, "kraus operator") for op in raw_ops]
            kraus = KrausChannel(ops)
            affine = kraus_to_affine(kraus)
        elif doc_type == "affine":
            m = np.asarray(_require(obj, "m"), dtype=float)
            c = np.asarray(_require(obj, "c"), dtype=float)
            if m.shape != (3, 3) or c.shape != (3,):
                raise DocumentError("affine document needs a 3x3 'm' and 3-vector 'c'")
            kraus = None
            affine = AffineChannel(m, c)
        else:
            spec = _family_spec(doc_type, obj)
            kraus, _ = make(spec)
            affine = kraus_to_affine(kraus)
    except DocumentError:
        raise
    except (ValueError, TypeError) as exc:
        raise DocumentError(str(exc)) from exc
    return ParsedChannel(label=label, doc=obj, affine=affine, kraus=kraus)


def _family_spec(doc_type: str, obj: dict) -> FamilySpec:
    if doc_type == "pauli":
        p = _require(obj, "p")
        if not isinstance(p, list) or len(p) != 4:
            raise DocumentError("pauli document needs p = [p0, p1, p2, p3]")
        return FamilySpec("pauli", {"p": [_as_float(x, "p") for x in p]})
    if doc_type == "gad":
        return FamilySpec(
            "gad",
            {"gamma": _as_float(_require(obj, "gamma"), "gamma"), "p": _as_float(_require(obj, "p"), "p")},
        )
    if doc_type == "mixed_unitary":
        return FamilySpec(
            "mixed_unitary",
            {"p": _as_float(_require(obj, "p"), "p"), "theta": _as_float(_require(obj, "theta"), "theta")},
        )
    if doc_type == "tetrahedron":
        return FamilySpec(
            "tetrahedron",
            {
                "p": _as_float(_require(obj, "p"), "p"),
                "p_prime": _as_float(_require(obj, "p_prime"), "p_prime"),
            },
        )
    # unitary document = rotation family
    axis = _require(obj, "axis")
    if not isinstance(axis, list) or len(axis) != 3:
        raise DocumentError("unitary document needs axis = [nx, ny, nz]")
    return FamilySpec(
        "rotation",
        {
            "theta": _as_float(_require(obj, "theta"), "theta"),
            "axis": [_as_float(x, "axis") for x in axis],
        },
    )


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def complex_matrix_to_json(m: np.ndarray) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def real_matrix_to_json(m: np.ndarray) -> list:
    return [[float(x) for x in row] for row in np.asarray(m, dtype=float)]


def kraus_document(k: KrausChannel, label: str = "") -> dict:
    doc = {"type": "kraus", "operators": [complex_matrix_to_json(op) for op in k.operators]}
    if label:
        doc["label"] = label
    return doc


def _format_float(x: float) -> str:
    if not np.isfinite(x):
        raise ValueError(f"cannot serialize non-finite number {x}")
    if x == 0.0:
        return "0"  # avoid the "-0" artifact
    return f"{x:.17g}"


def dumps(obj, indent: int | None = None) -> str:
    """Deterministic JSON with floats at 17 significant digits."""
    pieces: list[str] = []
    _render(obj, pieces, indent, 0)
    return "".join(pieces)


def _render(obj, out: list, indent: int | None, level: int) -> None:
    nl, pad, pad_in = "", "", ""
    if indent is not None:
        nl = "\n"
        pad = " " * (indent * level)
        pad_in = " " * (indent * (level + 1))
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_format_float(float(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{" + nl)
        for i, (key, value) in enumerate(obj.items()):
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings, got {type(key)!r}")
            out.append(pad_in + json.dumps(key) + ": ")
            _render(value, out, indent, level + 1)
            if i + 1 < len(obj):
                out.append("," + (nl if nl else " "))
        out.append(nl + pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not len(obj):
            out.append("[]")
            return
        out.append("[")
        for i, value in enumerate(obj):
            _render(value, out, indent, level + 1)
            if i + 1 < len(obj):
                out.append(", ")
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj)!r}")
