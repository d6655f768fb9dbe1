"""TJSON file format: grid-tagged JSON for states, fields, and tomograms.

One JSON document per file.  Floats are serialized through Python's
shortest round-trip repr (at most 17 significant digits), so every file
reads back bit-identically.  Complex numbers are [re, im] pairs; arrays
are flattened row-major next to their grid description.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import ContractError
from .grids import Axis, ComplexField, Grid, SpinorField
from .quasidist import PhaseField4
from .tomography import TomogramField4

FORMAT_TAG = "pauli-tomograph/1"

CSV_HEADER = "X,theta,w1,w2,w3,w4"


def _axis_payload(axis: Axis) -> dict:
    return {"min": float(axis.min), "count": int(axis.count),
            "spacing": float(axis.spacing)}


def _grid_payload(grid: Grid) -> list:
    return [_axis_payload(ax) for ax in grid.axes]


def _grid_from_payload(payload) -> Grid:
    return Grid(tuple(Axis(float(a["min"]), int(a["count"]),
                           float(a["spacing"])) for a in payload))


def _complex_payload(values: np.ndarray) -> list:
    flat = np.asarray(values, dtype=np.complex128).ravel()
    return np.column_stack([flat.real, flat.imag]).tolist()


def _complex_from_payload(payload, shape) -> np.ndarray:
    pairs = np.asarray(payload, dtype=np.float64)
    if pairs.ndim != 2 or pairs.shape[1] != 2 or pairs.shape[0] != np.prod(shape):
        raise ContractError("complex payload shape mismatch")
    return (pairs[:, 0] + 1j * pairs[:, 1]).reshape(shape)


def _real_payload(values: np.ndarray) -> list:
    return np.asarray(values, dtype=np.float64).ravel().tolist()


def to_payload(obj) -> dict:
    """Serializable document for a state, phase-space field, or tomogram."""
    if isinstance(obj, SpinorField):
        return {
            "format": FORMAT_TAG,
            "kind": "spinor",
            "grid": _grid_payload(obj.grid),
            "up": _complex_payload(obj.up.values),
            "down": _complex_payload(obj.down.values),
        }
    if isinstance(obj, PhaseField4):
        return {
            "format": FORMAT_TAG,
            "kind": "phase_field",
            "field_kind": obj.kind,
            "grid": _grid_payload(obj.grid),
            "values": _real_payload(obj.values),
        }
    if isinstance(obj, TomogramField4):
        return {
            "format": FORMAT_TAG,
            "kind": "tomogram",
            "grid": _grid_payload(obj.grid),
            "thetas": np.asarray(obj.thetas).tolist(),
            "values": _real_payload(obj.values),
        }
    raise ContractError(f"cannot serialize {type(obj).__name__} to TJSON")


def from_payload(doc: dict):
    """Rebuild the stored object, running its constructor validation."""
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_TAG:
        raise ContractError("not a TJSON document (missing format tag)")
    kind = doc.get("kind")
    if kind not in ("spinor", "phase_field", "tomogram"):
        raise ContractError(f"unknown TJSON kind {kind!r}")
    try:
        grid = _grid_from_payload(doc["grid"])
        if kind == "spinor":
            up = _complex_from_payload(doc["up"], grid.shape)
            down = _complex_from_payload(doc["down"], grid.shape)
            return SpinorField(ComplexField(grid, up), ComplexField(grid, down))
        if kind == "phase_field":
            values = np.asarray(doc["values"], dtype=np.float64)
            return PhaseField4(grid, values.reshape((4,) + grid.shape),
                               kind=doc["field_kind"])
        thetas = np.asarray(doc["thetas"], dtype=np.float64)
        n = thetas.shape[0]
        values = np.asarray(doc["values"], dtype=np.float64)
        return TomogramField4(grid, thetas, values.reshape((n, 4) + grid.shape))
    except KeyError as exc:
        raise ContractError(f"TJSON document missing field {exc}") from None
    except ValueError as exc:
        raise ContractError(f"TJSON payload malformed: {exc}") from None


def write_tjson(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_payload(obj), fh, separators=(",", ":"))
        fh.write("\n")


def read_tjson(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return from_payload(json.load(fh))


def export_csv(path: str, obj) -> None:
    """Plot-ready CSV of a 1D optical tomogram: X,theta,w1..w4 rows.

    Locale-independent: '.' decimal point, ',' separator.
    """
    if not isinstance(obj, TomogramField4) or obj.grid.ndim != 1:
        raise ContractError("CSV export supports 1D optical tomograms only")
    xs = obj.grid.axes[0].coords()
    lines = [CSV_HEADER]
    for i, theta in enumerate(np.asarray(obj.thetas)):
        for j, x in enumerate(xs):
            row = obj.values[i, :, j]
            lines.append(",".join([repr(float(x)), repr(float(theta))]
                                  + [repr(float(v)) for v in row]))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
