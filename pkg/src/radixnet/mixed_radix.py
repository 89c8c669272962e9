"""Mixed-radix numeral systems and the layered topologies they induce."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import ConstraintViolation, IntegerOverflowError
from .sparse import INT64_MAX, SparseIntMatrix


@dataclass(frozen=True)
class MixedRadixSystem:
    """Ordered radices ``(N_1, ..., N_L)``, each at least 2.

    Digit ``i`` (0-based here) carries place value ``prod(radices[:i])``, so
    the first radix is the least significant.
    """

    radices: tuple[int, ...]

    def __post_init__(self):
        radices = tuple(int(r) for r in self.radices)
        if not radices:
            raise ValueError("a mixed-radix system needs at least one radix")
        bad = [r for r in radices if r < 2]
        if bad:
            raise ValueError(f"radices must be integers greater than 1, got {bad[0]}")
        if math.prod(radices) > INT64_MAX:
            raise IntegerOverflowError("MixedRadixSystem", f"product of {radices}")
        object.__setattr__(self, "radices", radices)

    @classmethod
    def of(cls, *radices: int) -> "MixedRadixSystem":
        return cls(tuple(radices))

    def __len__(self):
        return len(self.radices)

    def __iter__(self):
        return iter(self.radices)

    @property
    def size(self) -> int:
        """Number of representable values, the product of all radices."""
        return math.prod(self.radices)

    @property
    def place_values(self) -> tuple[int, ...]:
        out, acc = [], 1
        for r in self.radices:
            out.append(acc)
            acc *= r
        return tuple(out)

    def __str__(self):
        return ",".join(map(str, self.radices))


def _system(s) -> MixedRadixSystem:
    return s if isinstance(s, MixedRadixSystem) else MixedRadixSystem(tuple(s))


def decode_digits(system, digits: Sequence[int]) -> int:
    system = _system(system)
    digits = tuple(int(d) for d in digits)
    if len(digits) != len(system):
        raise ValueError(f"expected {len(system)} digits, got {len(digits)}")
    value = 0
    for pos, (d, r, place) in enumerate(zip(digits, system.radices, system.place_values)):
        if not 0 <= d < r:
            raise ValueError(f"digit {d} at position {pos} outside [0, {r})")
        value += d * place
    return value


def encode_digits(system, value: int) -> tuple[int, ...]:
    system = _system(system)
    value = int(value)
    if not 0 <= value < system.size:
        raise ValueError(f"value {value} outside [0, {system.size})")
    digits = []
    for r in system.radices:
        value, d = divmod(value, r)
        digits.append(d)
    return tuple(digits)


def enumerate_systems(max_size: int, max_length: int, min_length: int = 1) -> Iterator[MixedRadixSystem]:
    """Every system with ``min_length <= L <= max_length`` and product ``<= max_size``.

    Yielded in lexicographic order of the radix tuples.
    """
    def rec(prefix, budget):
        if len(prefix) >= min_length:
            yield MixedRadixSystem(tuple(prefix))
        if len(prefix) == max_length:
            return
        for r in range(2, budget + 1):
            yield from rec(prefix + [r], budget // r)

    for r in range(2, max_size + 1):
        yield from rec([r], max_size // r)


def ordered_factorizations(n: int, max_length: int | None = None) -> Iterator[MixedRadixSystem]:
    """Every system whose radix product is exactly ``n``."""
    def rec(prefix, rest):
        if rest == 1:
            yield MixedRadixSystem(tuple(prefix))
            return
        if max_length is not None and len(prefix) == max_length:
            return
        for r in range(2, rest + 1):
            if rest % r == 0:
                yield from rec(prefix + [r], rest // r)

    if n >= 2:
        yield from rec([], n)


# ---------------------------------------------------------------------------
# topologies
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LayeredTopology:
    """Feedforward layered graph given by its adjacency submatrices.

    ``submatrices[i]`` holds the edges from layer ``i`` to layer ``i + 1``;
    rows index sources and columns destinations.  Structural validity is
    not enforced here; see :func:`radixnet.analysis.validate_fnnt`.
    """

    layer_sizes: tuple[int, ...]
    submatrices: tuple[SparseIntMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "layer_sizes", tuple(int(n) for n in self.layer_sizes))
        object.__setattr__(self, "submatrices", tuple(self.submatrices))
        if len(self.layer_sizes) != len(self.submatrices) + 1:
            raise ValueError(
                f"{len(self.layer_sizes)} layer sizes for {len(self.submatrices)} submatrices")

    @classmethod
    def from_submatrices(cls, submatrices) -> "LayeredTopology":
        submatrices = tuple(submatrices)
        if not submatrices:
            raise ValueError("need at least one submatrix")
        sizes = [submatrices[0].n_rows] + [w.n_cols for w in submatrices]
        return cls(tuple(sizes), submatrices)

    @property
    def depth(self) -> int:
        """Number of edge layers."""
        return len(self.submatrices)

    @property
    def edge_count(self) -> int:
        return sum(w.nnz for w in self.submatrices)

    @property
    def dense_edge_count(self) -> int:
        s = self.layer_sizes
        return sum(a * b for a, b in zip(s[:-1], s[1:]))

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(layer, src, dst)`` with 1-based layer numbers, sorted."""
        for layer, w in enumerate(self.submatrices, start=1):
            for r, c in zip(w.row.tolist(), w.col.tolist()):
                yield layer, r, c

    def without_edge(self, layer: int, src: int, dst: int) -> "LayeredTopology":
        """Copy with one edge removed; ``layer`` is 1-based."""
        w = self.submatrices[layer - 1]
        keep = ~((w.row == src) & (w.col == dst))
        if keep.all():
            raise KeyError(f"no edge {src}->{dst} in layer {layer}")
        trimmed = SparseIntMatrix(w.n_rows, w.n_cols, w.row[keep], w.col[keep], w.data[keep])
        subs = list(self.submatrices)
        subs[layer - 1] = trimmed
        return LayeredTopology(self.layer_sizes, tuple(subs))


def layer_submatrix(system, i: int, n_nodes: int | None = None) -> SparseIntMatrix:
    """Adjacency submatrix of layer ``i`` (1-based) of a mixed-radix topology.

    Row ``j`` has ones at ``(j + n * place_i) mod n_nodes`` for every digit
    ``n`` of radix ``i``.  ``n_nodes`` defaults to the system size; a larger
    multiple of it builds the system on a wider node set with the same rule.
    """
    system = _system(system)
    if not 1 <= i <= len(system):
        raise IndexError(f"layer index {i} outside 1..{len(system)}")
    n = system.size if n_nodes is None else int(n_nodes)
    if n % system.size:
        raise ValueError(f"node count {n} is not a multiple of system size {system.size}")
    radix = system.radices[i - 1]
    place = system.place_values[i - 1]
    if n * radix > INT64_MAX:
        raise IntegerOverflowError("layer_submatrix", f"{n} nodes x radix {radix}")
    src = np.arange(n, dtype=np.int64)
    offsets = np.arange(radix, dtype=np.int64) * place
    dst = (src[:, None] + offsets[None, :]) % n
    dst.sort(axis=1)
    return SparseIntMatrix._canonical(
        n, n, np.repeat(src, radix), dst.ravel(), np.ones(n * radix, np.int64))


def build_mixed_radix_topology(system) -> LayeredTopology:
    system = _system(system)
    subs = tuple(layer_submatrix(system, i) for i in range(1, len(system) + 1))
    return LayeredTopology((system.size,) * (len(system) + 1), subs)


def emr_violations(systems: Sequence[MixedRadixSystem]) -> list[str]:
    """Constraint violations of a system list, as human-readable strings."""
    if not systems:
        return ["at least one mixed-radix system is required"]
    out = []
    n_prime = systems[0].size
    for k, s in enumerate(systems[:-1], start=1):
        if s.size != n_prime:
            out.append(
                f"constraint 1: system {k} ({s}) has product {s.size}, expected N'={n_prime}")
    last = systems[-1]
    if n_prime % last.size:
        out.append(
            f"constraint 2: product {last.size} of final system {len(systems)} ({last}) "
            f"does not divide N'={n_prime}")
    return out


def build_emr_topology(systems) -> LayeredTopology:
    """Concatenate mixed-radix topologies, output layer of one = input of next.

    All layers have ``N'`` nodes.  A final system whose product is a proper
    divisor of ``N'`` is laid out on ``N'`` nodes with the same shift rule.
    """
    systems = [_system(s) for s in systems]
    violations = emr_violations(systems)
    if violations:
        raise ConstraintViolation(violations)
    n_prime = systems[0].size
    subs = []
    for s in systems:
        subs.extend(layer_submatrix(s, i, n_prime) for i in range(1, len(s) + 1))
    return LayeredTopology((n_prime,) * (len(subs) + 1), tuple(subs))
