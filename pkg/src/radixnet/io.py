"""Spec documents, edge lists, Matrix Market files, dense masks and reports.

All text output uses ``\\n`` line endings and is byte-identical for equal
inputs.
"""
from __future__ import annotations

import contextlib
import json
from fractions import Fraction
from pathlib import Path
from typing import IO, Optional, Sequence, Union

import numpy as np

from .analysis import AnalysisReport
from .builder import RadixNetSpec, validate_spec
from .errors import ConstraintViolation, FormatError, GuardExceeded
from .mixed_radix import LayeredTopology
from .sparse import SparseIntMatrix

PathOrStream = Union[str, Path, IO[str]]

DEFAULT_MASK_CELLS = 10**6
MM_HEADER = "%%MatrixMarket matrix coordinate integer general"


@contextlib.contextmanager
def _open(target: PathOrStream, mode: str):
    if hasattr(target, "read") or hasattr(target, "write"):
        yield target
    else:
        with open(target, mode, encoding="utf-8", newline="\n") as fh:
            yield fh


# ---------------------------------------------------------------------------
# spec documents
# ---------------------------------------------------------------------------

def spec_from_document(doc, *, validate: bool = True) -> RadixNetSpec:
    if not isinstance(doc, dict):
        raise FormatError("spec document must be an object")
    missing = [k for k in ("systems", "widths") if k not in doc]
    if missing:
        raise FormatError(f"spec document missing key(s): {', '.join(missing)}")
    systems, widths = doc["systems"], doc["widths"]
    if not isinstance(systems, list) or not all(
            isinstance(s, list) and all(isinstance(r, int) and not isinstance(r, bool) for r in s)
            for s in systems):
        raise FormatError('"systems" must be a list of lists of integers')
    if not isinstance(widths, list) or not all(
            isinstance(w, int) and not isinstance(w, bool) for w in widths):
        raise FormatError('"widths" must be a list of integers')
    if "name" in doc and not isinstance(doc["name"], str):
        raise FormatError('"name" must be a string')
    try:
        spec = RadixNetSpec(tuple(tuple(s) for s in systems), tuple(widths))
    except ValueError as exc:
        raise ConstraintViolation([str(exc)]) from exc
    if validate:
        result = validate_spec(spec)
        if not result.ok:
            raise ConstraintViolation(result.violations)
    return spec


def spec_to_document(spec: RadixNetSpec, name: Optional[str] = None) -> dict:
    doc = {"systems": [list(s.radices) for s in spec.systems], "widths": list(spec.widths)}
    if name is not None:
        doc["name"] = name
    return doc


def read_spec(source: PathOrStream, *, validate: bool = True) -> RadixNetSpec:
    """Parse a JSON spec document.

    Raises :class:`FormatError` (with line and column) on malformed JSON and
    :class:`ConstraintViolation` listing every violated constraint.
    """
    with _open(source, "r") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    return spec_from_document(doc, validate=validate)


def write_spec(spec: RadixNetSpec, target: PathOrStream, name: Optional[str] = None) -> None:
    with _open(target, "w") as fh:
        fh.write(json.dumps(spec_to_document(spec, name)) + "\n")


# ---------------------------------------------------------------------------
# edge lists
# ---------------------------------------------------------------------------

def write_edge_list(topology: LayeredTopology, target: PathOrStream) -> None:
    """One ``layer<TAB>src<TAB>dst`` line per edge, 1-based layer, 0-based nodes."""
    with _open(target, "w") as fh:
        for layer, w in enumerate(topology.submatrices, start=1):
            if w.nnz:
                block = np.column_stack([np.full(w.nnz, layer), w.row, w.col])
                fh.write("\n".join("\t".join(map(str, r)) for r in block.tolist()) + "\n")


def read_edge_list(source: PathOrStream, layer_sizes: Sequence[int]) -> LayeredTopology:
    layer_sizes = tuple(int(n) for n in layer_sizes)
    depth = len(layer_sizes) - 1
    if depth < 1:
        raise ValueError("need at least two layer sizes")
    rows = [[] for _ in range(depth)]
    cols = [[] for _ in range(depth)]
    with _open(source, "r") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise FormatError(f"expected 3 tab-separated fields, got {len(parts)}", lineno)
            try:
                layer, src, dst = (int(p) for p in parts)
            except ValueError:
                raise FormatError(f"non-integer field in {line!r}", lineno) from None
            if not 1 <= layer <= depth:
                raise FormatError(f"layer {layer} outside 1..{depth}", lineno)
            if not 0 <= src < layer_sizes[layer - 1]:
                raise FormatError(f"source {src} outside layer {layer - 1}", lineno)
            if not 0 <= dst < layer_sizes[layer]:
                raise FormatError(f"destination {dst} outside layer {layer}", lineno)
            rows[layer - 1].append(src)
            cols[layer - 1].append(dst)
    subs = []
    for i in range(depth):
        r = np.asarray(rows[i], dtype=np.int64)
        c = np.asarray(cols[i], dtype=np.int64)
        try:
            subs.append(SparseIntMatrix(layer_sizes[i], layer_sizes[i + 1], r, c, np.ones_like(r)))
        except ValueError as exc:
            raise FormatError(f"layer {i + 1}: {exc}") from exc
    return LayeredTopology(layer_sizes, tuple(subs))


# ---------------------------------------------------------------------------
# Matrix Market
# ---------------------------------------------------------------------------

def write_matrix_market_matrix(matrix: SparseIntMatrix, target: PathOrStream) -> None:
    with _open(target, "w") as fh:
        fh.write(f"{MM_HEADER}\n{matrix.n_rows} {matrix.n_cols} {matrix.nnz}\n")
        if matrix.nnz:
            block = np.column_stack([matrix.row + 1, matrix.col + 1, matrix.data])
            fh.write("\n".join(" ".join(map(str, r)) for r in block.tolist()) + "\n")


def read_matrix_market_matrix(source: PathOrStream) -> SparseIntMatrix:
    with _open(source, "r") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0].strip().lower() != MM_HEADER.lower():
        raise FormatError("missing coordinate integer header", 1)
    body = [(n, l) for n, l in enumerate(lines[1:], start=2) if l and not l.startswith("%")]
    if not body:
        raise FormatError("missing size line")
    lineno, size_line = body[0]
    try:
        n_rows, n_cols, nnz = (int(x) for x in size_line.split())
    except ValueError:
        raise FormatError("bad size line", lineno) from None
    if len(body) - 1 != nnz:
        raise FormatError(f"expected {nnz} entries, found {len(body) - 1}")
    entries = np.zeros((nnz, 3), dtype=np.int64)
    for k, (lineno, line) in enumerate(body[1:]):
        try:
            entries[k] = [int(x) for x in line.split()]
        except ValueError:
            raise FormatError(f"bad entry {line!r}", lineno) from None
    return SparseIntMatrix(n_rows, n_cols, entries[:, 0] - 1, entries[:, 1] - 1, entries[:, 2])


def write_matrix_market(topology: LayeredTopology, directory) -> list[Path]:
    """Write ``layer_<i>.mtx`` for every layer ``i`` (1-based)."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for i, w in enumerate(topology.submatrices, start=1):
        path = directory / f"layer_{i}.mtx"
        write_matrix_market_matrix(w, path)
        paths.append(path)
    return paths


# ---------------------------------------------------------------------------
# dense masks
# ---------------------------------------------------------------------------

def check_mask_guard(topology: LayeredTopology, max_cells: int = DEFAULT_MASK_CELLS) -> None:
    for i, w in enumerate(topology.submatrices, start=1):
        cells = w.n_rows * w.n_cols
        if cells > max_cells:
            raise GuardExceeded(
                f"layer {i} dense mask has {cells} cells, above the limit of {max_cells}")


def write_mask_grid(topology: LayeredTopology, directory,
                    max_cells: int = DEFAULT_MASK_CELLS) -> list[Path]:
    """Write ``layer_<i>.mask``: rows of space-separated 0/1 flags.

    Every layer is checked against ``max_cells`` before any file is written.
    """
    check_mask_guard(topology, max_cells)
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for i, w in enumerate(topology.submatrices, start=1):
        dense = np.zeros(w.shape, dtype=np.uint8)
        dense[w.row, w.col] = 1
        path = directory / f"layer_{i}.mask"
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for row in dense:
                fh.write(" ".join("1" if x else "0" for x in row) + "\n")
        paths.append(path)
    return paths


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator} ({float(x):.10g})"
    if isinstance(x, float):
        return f"{x:.10g}"
    if isinstance(x, bool):
        return str(x).lower()
    return str(x)


def report_to_text(report: AnalysisReport) -> str:
    def opt(value, status):
        return status if value is None else _fmt(value)

    sym = report.symmetry_status
    if report.symmetric is not None:
        sym = _fmt(report.symmetric)
    lines = [
        f"layers: {','.join(map(str, report.layer_sizes))}",
        f"N': {report.n_prime}",
        f"edges: {report.edge_count}",
        f"dense edges: {report.dense_edge_count}",
        f"density: {_fmt(report.density_exact)}",
        f"mu: {_fmt(report.mu)}",
        f"d: {_fmt(report.d)}",
        f"density ~ mu/N': {_fmt(report.density_mu_approx)}",
        f"density ~ mu^(1-d): {_fmt(report.density_d_approx)}",
        f"approximation regime met: {_fmt(report.approximation_regime_met)}",
        f"paths: {report.path_count_closed_form}",
        f"symmetric: {sym}",
        f"path multiplicity: {opt(report.path_multiplicity, report.symmetry_status)}",
        f"path-connected: {opt(report.path_connected, report.symmetry_status)}",
        f"fnnt valid: {opt(report.fnnt_valid, 'skipped: guard')}",
    ]
    lines += [f"warning: {w}" for w in report.warnings]
    return "\n".join(lines) + "\n"


def report_to_json(report: AnalysisReport) -> str:
    return json.dumps(report.as_dict(), indent=2) + "\n"
