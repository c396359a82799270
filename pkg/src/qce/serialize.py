"""JSON document formats for matrices, resolutions, and partition data.

A matrix document is {"dim": n, "re": [[...]], "im": [[...]], "label": ...}
with "im" and "label" optional. A resolution document is {"dim": n,
"blocks": [matrix documents]}. Partition data is either the four-field form
{"p", "q", "p_given_q", "q_given_p"} or {"joint": [[...]]}.

Structural problems (bad JSON, missing keys, wrong shapes, non-finite
numbers) raise ParseError; whether the parsed numbers satisfy a role's
invariants is the caller's concern and raises validation errors instead.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import ParseError
from .matcore import IdentityResolution, Projector
from .shannon import ClassicalPartitionData


def load_document(source) -> dict:
    """Read a JSON object from a path, or from a string that starts with '{'."""
    if isinstance(source, Path):
        text = _read_path(source)
    elif isinstance(source, str) and source.lstrip().startswith("{"):
        text = source
    elif isinstance(source, str):
        text = _read_path(Path(source))
    else:
        raise ParseError(f"cannot load a document from {type(source).__name__}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    return doc


def _read_path(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def _grid(doc: dict, key: str, dim: int) -> np.ndarray:
    rows = doc[key]
    arr = np.asarray(rows, dtype=float)
    if arr.shape != (dim, dim):
        raise ParseError(f'"{key}" must be a {dim} x {dim} grid, got shape {arr.shape}')
    if not np.all(np.isfinite(arr)):
        raise ParseError(f'"{key}" contains non-finite entries')
    return arr


def doc_to_matrix(doc: dict) -> np.ndarray:
    """Matrix document -> complex ndarray."""
    if "dim" not in doc or "re" not in doc:
        raise ParseError('matrix document needs "dim" and "re" fields')
    try:
        dim = int(doc["dim"])
    except (TypeError, ValueError):
        raise ParseError('"dim" must be an integer') from None
    if dim < 1:
        raise ParseError(f'"dim" must be positive, got {dim}')
    try:
        re = _grid(doc, "re", dim)
        im = _grid(doc, "im", dim) if "im" in doc else np.zeros((dim, dim))
    except (TypeError, ValueError):
        raise ParseError("matrix entries must be numbers") from None
    return re + 1j * im


def matrix_to_doc(mat, label: str | None = None) -> dict:
    """Complex ndarray -> matrix document (plain lists, JSON-ready).

    The "im" grid is written only when some entry actually has an
    imaginary part, matching the optional-"im" input format.
    """
    a = np.asarray(mat, dtype=np.complex128)
    doc = {
        "dim": int(a.shape[0]),
        "re": [[float(x) for x in row] for row in a.real],
    }
    if np.any(a.imag != 0.0):
        doc["im"] = [[float(x) for x in row] for row in a.imag]
    if label is not None:
        doc["label"] = str(label)
    return doc


def doc_to_resolution(doc: dict, tol: Tolerances = DEFAULT_TOLERANCES) -> IdentityResolution:
    """Resolution document -> IdentityResolution (blocks validated as projectors)."""
    if "dim" not in doc or "blocks" not in doc:
        raise ParseError('resolution document needs "dim" and "blocks" fields')
    blocks = doc["blocks"]
    if not isinstance(blocks, list) or not blocks:
        raise ParseError('"blocks" must be a nonempty list of matrix documents')
    projs = []
    for k, entry in enumerate(blocks):
        if not isinstance(entry, dict):
            raise ParseError(f"block {k} is not a matrix document")
        mat = doc_to_matrix(entry)
        if mat.shape[0] != int(doc["dim"]):
            raise ParseError(f'block {k} dim {mat.shape[0]} != document dim {doc["dim"]}')
        projs.append(Projector(mat, tol))
    return IdentityResolution(projs, tol)


def resolution_to_doc(res: IdentityResolution) -> dict:
    return {
        "dim": res.dim,
        "blocks": [matrix_to_doc(p.mat) for p in res.projectors],
    }


def doc_to_partition(doc: dict, tol: Tolerances = DEFAULT_TOLERANCES) -> ClassicalPartitionData:
    """Partition document -> ClassicalPartitionData."""
    if "joint" in doc:
        joint = np.asarray(doc["joint"], dtype=float)
        if joint.ndim != 2 or 0 in joint.shape:
            raise ParseError(f'"joint" must be a 2-D matrix, got shape {joint.shape}')
        if not np.all(np.isfinite(joint)):
            raise ParseError('"joint" contains non-finite entries')
        return ClassicalPartitionData.from_joint(joint, tol)
    needed = ("p", "q", "p_given_q", "q_given_p")
    if not all(k in doc for k in needed):
        raise ParseError(
            'partition document needs either "joint" or all of '
            '"p", "q", "p_given_q", "q_given_p"'
        )
    try:
        p = np.asarray(doc["p"], dtype=float)
        q = np.asarray(doc["q"], dtype=float)
        pg = np.asarray(doc["p_given_q"], dtype=float)
        qg = np.asarray(doc["q_given_p"], dtype=float)
    except (TypeError, ValueError):
        raise ParseError("partition fields must be numeric arrays") from None
    for name, arr in (("p", p), ("q", q), ("p_given_q", pg), ("q_given_p", qg)):
        if not np.all(np.isfinite(arr)):
            raise ParseError(f'"{name}" contains non-finite entries')
    return ClassicalPartitionData(p, q, pg, qg, tol)
