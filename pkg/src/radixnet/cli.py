"""``radixnet`` command line: generate, analyze, verify, sweep.

Results go to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 invalid input / disagreement / guard on output, 2 I/O failure or
verification guard exceeded.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import io as rio
from .analysis import (DEFAULT_MAX_CELLS, DEFAULT_MAX_EDGES, DEFAULT_PATH_LIMIT, analyze,
                       brute_force_path_counts, density_approximations, density_exact,
                       density_from_spec, path_count_closed_form, path_count_matrix,
                       total_path_count)
from .builder import RadixNetSpec, build_radixnet, layer_sizes, validate_spec
from .errors import ConstraintViolation, FormatError, GuardExceeded, IntegerOverflowError
from .sparse import INT64_MAX

FORMATS = ("edges", "mtx", "mask")


class UsageError(Exception):
    pass


def parse_systems(text: str) -> list[tuple[int, ...]]:
    """``"2,2,2;4"`` -> ``[(2, 2, 2), (4,)]``."""
    try:
        return [tuple(int(r) for r in chunk.split(",")) for chunk in text.split(";")]
    except ValueError:
        raise UsageError(f"cannot parse systems {text!r}; expected e.g. \"2,2,2;4\"") from None


def parse_int_list(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse {what} {text!r}; expected comma-separated integers") from None


def _err(msg):
    print(msg, file=sys.stderr)


def _load_spec(args) -> RadixNetSpec:
    if args.spec is not None:
        if args.systems is not None or args.widths is not None:
            raise UsageError("use either --spec or --systems/--widths, not both")
        return rio.read_spec(args.spec, validate=False)
    if args.systems is None:
        raise UsageError("a spec is required: --spec FILE or --systems \"2,2,2\"")
    try:
        systems = parse_systems(args.systems)
        total = sum(len(s) for s in systems)
        widths = (parse_int_list(args.widths, "widths") if args.widths is not None
                  else [1] * (total + 1))
        return RadixNetSpec(tuple(systems), tuple(widths))
    except ValueError as exc:
        raise ConstraintViolation([str(exc)]) from None


def _valid_spec(args) -> RadixNetSpec:
    spec = _load_spec(args)
    result = validate_spec(spec)
    for w in result.warnings:
        _err(f"warning: {w}")
    if not result.ok:
        raise ConstraintViolation(result.violations)
    return spec


def _formats(values) -> list[str]:
    out = []
    for v in values or ["edges"]:
        for f in v.split(","):
            if f not in FORMATS:
                raise UsageError(f"unknown format {f!r}; choose from {', '.join(FORMATS)}")
            if f not in out:
                out.append(f)
    return out


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_generate(args) -> int:
    spec = _valid_spec(args)
    formats = _formats(args.format)
    topology = build_radixnet(spec)
    if "mask" in formats:
        rio.check_mask_guard(topology, args.max_mask_cells)
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        if "edges" in formats:
            rio.write_edge_list(topology, out / "edges.tsv")
        if "mtx" in formats:
            rio.write_matrix_market(topology, out / "mtx")
        if "mask" in formats:
            rio.write_mask_grid(topology, out / "mask", args.max_mask_cells)
        rio.write_spec(spec, out / "spec.json")
    except OSError as exc:
        _err(f"error: cannot write output: {exc}")
        return 2
    print(f"layers: {','.join(map(str, topology.layer_sizes))} edges: {topology.edge_count}")
    return 0


def cmd_analyze(args) -> int:
    spec = _valid_spec(args)
    report = analyze(spec, max_edges=args.max_edges, max_cells=args.max_cells)
    if args.json:
        sys.stdout.write(rio.report_to_json(report))
    else:
        sys.stdout.write(rio.report_to_text(report))
    return 0


def cmd_verify(args) -> int:
    spec = _valid_spec(args)
    expected = path_count_closed_form(spec)
    if args.edges is not None:
        topology = rio.read_edge_list(args.edges, layer_sizes(spec))
        source = f"edge list {args.edges}"
    else:
        if total_path_count(spec) > args.max_paths:
            _err(f"error: guard exceeded: {total_path_count(spec)} paths > {args.max_paths}")
            return 2
        topology = build_radixnet(spec)
        source = "generated topology"

    try:
        oracle = brute_force_path_counts(topology, limit=args.max_paths)
    except GuardExceeded as exc:
        _err(f"error: guard exceeded: {exc}")
        return 2
    try:
        product = path_count_matrix(topology).to_dense()
    except IntegerOverflowError as exc:
        _err(f"error: {exc}")
        return 2

    bad = np.argwhere((oracle != expected) | (product != expected) | (oracle != product))
    pairs = oracle.size
    if bad.size:
        u, v = (int(x) for x in bad[0])
        print(f"FAIL at (u={u}, v={v}) in {source}: oracle={oracle[u, v]} "
              f"closed_form={expected} product={product[u, v]} "
              f"({len(bad)} of {pairs} pairs disagree)")
        return 1
    print(f"PASS ({expected} = {expected} = {expected}) oracle = closed form = product "
          f"over {pairs} pairs")
    return 0


def cmd_sweep(args) -> int:
    mus = parse_int_list(args.mu, "mu")
    ds = parse_int_list(args.d, "d")
    if any(m < 2 for m in mus) or any(d < 1 for d in ds):
        raise UsageError("sweep needs integer mu >= 2 and d >= 1")
    for m in mus:
        for d in ds:
            if m ** d > INT64_MAX:
                raise IntegerOverflowError("sweep", f"N' = {m}^{d} exceeds 64 bits")
    print("mu\td\tn_prime\tdensity_exact\tmu_pow_1_minus_d\texact_match")
    mismatch = False
    for m in mus:
        for d in ds:
            spec = RadixNetSpec.uniform([(m,) * d])
            if m ** d * m * d <= args.max_edges:
                exact = density_exact(build_radixnet(spec))
            else:
                exact = density_from_spec(spec)
            approx = density_approximations(spec).mu_pow_1_minus_d
            match = isinstance(approx, Fraction) and approx == exact
            mismatch |= not match
            print(f"{m}\t{d}\t{m ** d}\t{float(exact):.10g}\t{float(approx):.10g}\t"
                  f"{'yes' if match else 'no'}")
    return 1 if mismatch else 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_spec_args(p):
    p.add_argument("--spec", help="JSON spec document with \"systems\" and \"widths\"")
    p.add_argument("--systems", help='mixed-radix systems, e.g. "2,2,2;4"')
    p.add_argument("--widths", help='layer widths, e.g. "1,1,1,1" (default all ones)')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radixnet", description="Generate and analyze RadiX-Net sparse topologies.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="build a topology and write it to disk")
    _add_spec_args(p)
    p.add_argument("--out", default=".", help="output directory (default: .)")
    p.add_argument("--format", action="append",
                   help="edges, mtx or mask; repeat or comma-separate (default: edges)")
    p.add_argument("--max-mask-cells", type=int, default=rio.DEFAULT_MASK_CELLS)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("analyze", help="density, approximations and symmetry report")
    _add_spec_args(p)
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.add_argument("--max-edges", type=int, default=DEFAULT_MAX_EDGES)
    p.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="check brute force, closed form and matrix product agree")
    _add_spec_args(p)
    p.add_argument("--edges", help="verify this edge list instead of the generated topology")
    p.add_argument("--max-paths", type=int, default=DEFAULT_PATH_LIMIT)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="exact density vs mu^(1-d) for uniform-radix specs")
    p.add_argument("--mu", default="2,3,4,5,6", help="comma-separated radices (default 2..6)")
    p.add_argument("--d", default="1,2,3,4,5,6", help="comma-separated digit counts (default 1..6)")
    p.add_argument("--max-edges", type=int, default=DEFAULT_MAX_EDGES)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConstraintViolation as exc:
        for v in exc.violations:
            _err(f"error: {v}")
        return 1
    except (UsageError, FormatError, GuardExceeded, IntegerOverflowError) as exc:
        _err(f"error: {exc}")
        return 1
    except OSError as exc:
        _err(f"error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
