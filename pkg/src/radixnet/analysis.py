"""Density, symmetry and path-count analysis of layered topologies.

Two independent routes to path counts are provided: the chained product of
adjacency submatrices (:func:`verify_symmetry`) and explicit depth-first
enumeration of every path (:func:`brute_force_path_count`,
:func:`brute_force_path_counts`).  They share no code beyond reading the
submatrix entries.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional, Union

import numpy as np

from . import _kernels
from .builder import RadixNetSpec, build_radixnet, validate_spec
from .errors import ConstraintViolation, GuardExceeded, IntegerOverflowError
from .mixed_radix import LayeredTopology
from .sparse import INT64_MAX, SparseIntMatrix, is_constant, matmul

DEFAULT_PATH_LIMIT = 10**7
DEFAULT_MAX_EDGES = 10**7
DEFAULT_MAX_CELLS = 10**7
REGIME_TOLERANCE = 0.05

Number = Union[Fraction, float, int]


# ---------------------------------------------------------------------------
# density
# ---------------------------------------------------------------------------

def density_exact(topology: LayeredTopology) -> Fraction:
    return Fraction(topology.edge_count, topology.dense_edge_count)


def density_from_spec(spec: RadixNetSpec) -> Fraction:
    """Closed-form density of the RadiX-Net defined by ``spec``.

    Weighted mean of the flattened radices, weights ``D_{i-1} D_i``, divided
    by ``N'``.
    """
    d = spec.widths
    pairs = [d[i - 1] * d[i] for i in range(1, len(d))]
    num = sum(n * w for n, w in zip(spec.flat_radices, pairs))
    return Fraction(num, spec.n_prime * sum(pairs))


def minimum_density(topology: LayeredTopology) -> Fraction:
    """Lowest density any FNNT on these layers can have (one edge per source)."""
    s = topology.layer_sizes
    return Fraction(sum(s[:-1]), topology.dense_edge_count)


class DensityApproximations(NamedTuple):
    mu: Fraction
    d: Number
    mu_over_n_prime: Fraction
    mu_pow_1_minus_d: Number
    regime_met: bool


def _exact_log(base: Fraction, value: int) -> Optional[int]:
    if base.denominator != 1:
        return None
    b, k, acc = base.numerator, 0, 1
    while acc < value:
        acc *= b
        k += 1
    return k if acc == value else None


def density_approximations(spec: RadixNetSpec) -> DensityApproximations:
    """Mean radix ``mu``, ``d = log_mu N'`` and the two density estimates.

    ``d`` and ``mu**(1-d)`` are exact when ``N'`` is an integral power of an
    integral ``mu``; otherwise they are floats.
    """
    radices = spec.flat_radices
    mu = Fraction(sum(radices), len(radices))
    n_prime = spec.n_prime
    k = _exact_log(mu, n_prime)
    if k is not None:
        d: Number = k
        approx: Number = Fraction(1, mu.numerator ** (k - 1)) if k >= 1 else mu
    else:
        d = math.log(n_prime) / math.log(mu)
        approx = float(mu) ** (1.0 - d)
    regime_met = abs(d - round(d)) <= REGIME_TOLERANCE
    return DensityApproximations(mu, d, mu / n_prime, approx, regime_met)


# ---------------------------------------------------------------------------
# path counts
# ---------------------------------------------------------------------------

def path_count_closed_form(spec: RadixNetSpec) -> int:
    """Paths between any input and any output node, as an exact integer.

    ``N'^(M-2) * prod(final system) * prod(D_1..D_{Mbar-1})``; with a single
    system the first two factors collapse to 1.  The result is a Python int
    and may exceed 64 bits.
    """
    result = validate_spec(spec)
    if not result.ok:
        raise ConstraintViolation(result.violations)
    m = len(spec.systems)
    inner = math.prod(spec.widths[1:-1])
    if m == 1:
        return inner
    return spec.n_prime ** (m - 2) * spec.systems[-1].size * inner


class SymmetryResult(NamedTuple):
    symmetric: bool
    multiplicity: Optional[int]


def path_count_matrix(topology: LayeredTopology) -> SparseIntMatrix:
    """Chained product of all submatrices: entry (u, v) counts u->v paths."""
    out = topology.submatrices[0]
    for w in topology.submatrices[1:]:
        out = matmul(out, w)
    return out


def verify_symmetry(topology: LayeredTopology) -> SymmetryResult:
    m = is_constant(path_count_matrix(topology))
    if m is None or m < 1:
        return SymmetryResult(False, None)
    return SymmetryResult(True, m)


def verify_path_connectedness(topology: LayeredTopology) -> bool:
    # reachability only, so values are clipped to 1 after every step
    reach = topology.submatrices[0].binarized()
    for w in topology.submatrices[1:]:
        reach = matmul(reach, w).binarized()
    return reach.nnz == reach.n_rows * reach.n_cols


def _global_csr(topology: LayeredTopology):
    sizes = topology.layer_sizes
    offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(np.int64)
    indptr_parts, index_parts = [np.zeros(1, np.int64)], []
    base = 0
    for layer, w in enumerate(topology.submatrices):
        indptr_parts.append(base + w.indptr[1:])
        index_parts.append(offsets[layer + 1] + w.col)
        base += w.nnz
    indptr_parts.append(np.full(sizes[-1], base, np.int64))
    indptr = np.concatenate(indptr_parts)
    indices = np.concatenate(index_parts) if index_parts else np.zeros(0, np.int64)
    return indptr, indices, offsets


def _reaches_sink(topology: LayeredTopology, sink: int) -> np.ndarray:
    sizes = topology.layer_sizes
    masks = [np.zeros(sizes[-1], dtype=bool)]
    masks[0][sink] = True
    for w in reversed(topology.submatrices):
        prev = np.zeros(w.n_rows, dtype=bool)
        prev[w.row[masks[0][w.col]]] = True
        masks.insert(0, prev)
    return np.concatenate(masks)


def brute_force_path_count(topology: LayeredTopology, source: int, sink: int,
                           limit: int = DEFAULT_PATH_LIMIT) -> int:
    """Count ``source -> sink`` paths by walking each one explicitly.

    Nodes that cannot reach ``sink`` are pruned first, so the walk touches
    exactly the counted paths.  Raises :class:`GuardExceeded` past ``limit``.
    """
    sizes = topology.layer_sizes
    if not 0 <= source < sizes[0]:
        raise IndexError(f"source {source} outside input layer of size {sizes[0]}")
    if not 0 <= sink < sizes[-1]:
        raise IndexError(f"sink {sink} outside output layer of size {sizes[-1]}")
    indptr, indices, offsets = _global_csr(topology)
    allowed = _reaches_sink(topology, sink)
    counts, total, status = _kernels.enumerate_paths(
        indptr, indices, source, topology.depth, offsets[-2], sizes[-1], allowed, limit)
    if status == _kernels.STATUS_LIMIT:
        raise GuardExceeded(f"more than {limit} paths from {source} to {sink}")
    return int(counts[sink])


def brute_force_path_counts(topology: LayeredTopology,
                            limit: int = DEFAULT_PATH_LIMIT) -> np.ndarray:
    """All-pairs path counts, one exhaustive walk per input node.

    ``limit`` bounds the total number of paths walked across all sources.
    """
    sizes = topology.layer_sizes
    indptr, indices, offsets = _global_csr(topology)
    allowed = np.ones(int(offsets[-1]), dtype=bool)
    out = np.zeros((sizes[0], sizes[-1]), dtype=np.int64)
    budget = limit
    for u in range(sizes[0]):
        counts, total, status = _kernels.enumerate_paths(
            indptr, indices, u, topology.depth, offsets[-2], sizes[-1], allowed, budget)
        if status == _kernels.STATUS_LIMIT:
            raise GuardExceeded(f"more than {limit} paths in total")
        out[u] = counts
        budget -= total
    return out


def total_path_count(spec: RadixNetSpec) -> int:
    """Total input-output path count of the built spec (closed form)."""
    return spec.widths[0] * spec.widths[-1] * spec.n_prime ** 2 * path_count_closed_form(spec)


# ---------------------------------------------------------------------------
# structural validity
# ---------------------------------------------------------------------------

def validate_fnnt(topology: LayeredTopology) -> list[str]:
    """Structural violations: shape mismatches, non-unit entries, zero rows/columns."""
    out = []
    sizes = topology.layer_sizes
    for i, w in enumerate(topology.submatrices, start=1):
        if w.shape != (sizes[i - 1], sizes[i]):
            out.append(f"layer {i}: submatrix shape {w.shape} != "
                       f"({sizes[i - 1]}, {sizes[i]})")
            continue
        bad = np.flatnonzero(w.data != 1)
        for k in bad.tolist():
            out.append(f"layer {i}: entry ({w.row[k]}, {w.col[k]}) = {w.data[k]}, expected 1")
        for r in np.flatnonzero(np.bincount(w.row, minlength=w.n_rows) == 0).tolist():
            out.append(f"layer {i}: row {r} is zero (node {r} of layer {i - 1} has no out-edges)")
        for c in np.flatnonzero(np.bincount(w.col, minlength=w.n_cols) == 0).tolist():
            out.append(f"layer {i}: column {c} is zero (node {c} of layer {i} has no in-edges)")
    return out


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

@dataclass
class AnalysisReport:
    layer_sizes: tuple[int, ...]
    n_prime: int
    edge_count: int
    dense_edge_count: int
    density_exact: Fraction
    mu: Fraction
    d: Number
    density_mu_approx: Fraction
    density_d_approx: Number
    approximation_regime_met: bool
    path_count_closed_form: int
    symmetric: Optional[bool]
    path_multiplicity: Optional[int]
    path_connected: Optional[bool]
    fnnt_valid: Optional[bool]
    symmetry_status: str = "verified"
    warnings: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        out = asdict(self)
        for key, value in out.items():
            if isinstance(value, Fraction):
                out[key] = f"{value.numerator}/{value.denominator}"
            elif isinstance(value, tuple):
                out[key] = list(value)
        out["density_exact_float"] = float(self.density_exact)
        return out


def analyze(spec: RadixNetSpec, *, max_edges: int = DEFAULT_MAX_EDGES,
            max_cells: int = DEFAULT_MAX_CELLS) -> AnalysisReport:
    """Full report for ``spec``.

    The topology is built only when its edge count is at most ``max_edges``;
    otherwise counts come from the closed forms and the structural checks
    are skipped.  Symmetry additionally requires the chained product to stay
    within ``max_cells`` dense cells and 64-bit range.
    """
    check = validate_spec(spec)
    if not check.ok:
        raise ConstraintViolation(check.violations)
    d = spec.widths
    n_prime = spec.n_prime
    sizes = tuple(w * n_prime for w in d)
    edges = sum(d[i - 1] * d[i] * n_prime * n for i, n in enumerate(spec.flat_radices, start=1))
    approx = density_approximations(spec)
    closed = path_count_closed_form(spec)

    report = AnalysisReport(
        layer_sizes=sizes, n_prime=n_prime, edge_count=edges,
        dense_edge_count=sum(a * b for a, b in zip(sizes[:-1], sizes[1:])),
        density_exact=density_from_spec(spec), mu=approx.mu, d=approx.d,
        density_mu_approx=approx.mu_over_n_prime, density_d_approx=approx.mu_pow_1_minus_d,
        approximation_regime_met=approx.regime_met, path_count_closed_form=closed,
        symmetric=None, path_multiplicity=None, path_connected=None, fnnt_valid=None,
        symmetry_status="skipped: guard", warnings=list(check.warnings))
    if not approx.regime_met:
        report.warnings.append("approximation regime not met: d is not close to an integer")

    if edges > max_edges:
        return report
    topology = build_radixnet(spec)
    report.edge_count = topology.edge_count
    report.dense_edge_count = topology.dense_edge_count
    report.density_exact = density_exact(topology)
    report.fnnt_valid = not validate_fnnt(topology)

    if sizes[0] * max(sizes) > max_cells:
        return report
    if closed > INT64_MAX:
        report.symmetry_status = "skipped: overflow"
        return report
    try:
        sym = verify_symmetry(topology)
    except IntegerOverflowError:
        report.symmetry_status = "skipped: overflow"
        return report
    report.symmetric, report.path_multiplicity = sym
    report.path_connected = verify_path_connectedness(topology)
    report.symmetry_status = "verified"
    return report
