"""RadiX-Net parameter validation and Kronecker assembly."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ConstraintViolation, IntegerOverflowError
from .mixed_radix import (LayeredTopology, MixedRadixSystem, build_emr_topology,
                          emr_violations)
from .sparse import INT64_MAX, kron, ones_matrix


@dataclass(frozen=True)
class RadixNetSpec:
    """Generator input: a list of mixed-radix systems and a list of layer widths.

    Construction only normalizes types; use :func:`validate_spec` to check the
    RadiX-Net constraints.
    """

    systems: tuple[MixedRadixSystem, ...]
    widths: tuple[int, ...]

    def __post_init__(self):
        systems = tuple(s if isinstance(s, MixedRadixSystem) else MixedRadixSystem(tuple(s))
                        for s in self.systems)
        object.__setattr__(self, "systems", systems)
        object.__setattr__(self, "widths", tuple(int(d) for d in self.widths))

    @classmethod
    def uniform(cls, systems, width: int = 1) -> "RadixNetSpec":
        """Spec with every width equal to ``width``."""
        bare = cls(tuple(systems), ())
        return cls(bare.systems, (width,) * (bare.total_radices + 1))

    @property
    def n_prime(self) -> int:
        """Node count of every pre-Kronecker layer (product of the first system)."""
        return self.systems[0].size

    @property
    def total_radices(self) -> int:
        return sum(len(s) for s in self.systems)

    @property
    def flat_radices(self) -> tuple[int, ...]:
        return tuple(r for s in self.systems for r in s.radices)


@dataclass
class ValidationResult:
    violations: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def validate_spec(spec: RadixNetSpec) -> ValidationResult:
    result = ValidationResult()
    if not spec.systems:
        result.violations.append("at least one mixed-radix system is required")
        return result
    result.violations.extend(emr_violations(spec.systems))

    expected = spec.total_radices + 1
    if len(spec.widths) != expected:
        result.violations.append(
            f"widths: expected {expected} widths (total radices + 1), got {len(spec.widths)}")
    for i, d in enumerate(spec.widths):
        if d < 1:
            result.violations.append(f"widths: D_{i}={d} is not a positive integer")

    n_prime = spec.n_prime
    for i, d in enumerate(spec.widths):
        if d >= n_prime:
            result.warnings.append(f"D_{i}={d} >= N'={n_prime}; width is not small relative to N'")
        if d >= 1 and d * n_prime > INT64_MAX:
            result.violations.append(f"widths: layer {i} size {d}*{n_prime} overflows")
    return result


def _require_valid(spec):
    result = validate_spec(spec)
    if not result.ok:
        raise ConstraintViolation(result.violations)


def layer_sizes(spec: RadixNetSpec) -> tuple[int, ...]:
    _require_valid(spec)
    n_prime = spec.n_prime
    return tuple(d * n_prime for d in spec.widths)


def build_radixnet(spec: RadixNetSpec) -> LayeredTopology:
    """Assemble the topology: layer ``i`` is ``ones(D_{i-1}, D_i)`` kron ``W_i``.

    Node ``j`` of width-block ``d`` in a layer has global index ``d * N' + j``.
    """
    _require_valid(spec)
    emr = build_emr_topology(spec.systems)
    widths = spec.widths
    subs = []
    for i, w in enumerate(emr.submatrices, start=1):
        nnz = math.prod((widths[i - 1], widths[i], w.nnz))
        if nnz > INT64_MAX:
            raise IntegerOverflowError("build_radixnet", f"layer {i} edge count")
        subs.append(kron(ones_matrix(widths[i - 1], widths[i]), w))
    return LayeredTopology(layer_sizes(spec), tuple(subs))
