"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary under "acceptance criteria".
"""
import contextlib
import io
import math
import random
import time
from fractions import Fraction

import numpy as np

from radixnet import (RadixNetSpec, SparseIntMatrix, brute_force_path_counts,
                      build_mixed_radix_topology, build_radixnet, density_approximations,
                      density_exact, kron, matmul, path_count_closed_form, validate_spec, verify_symmetry)
from radixnet import io as rio
from radixnet.analysis import path_count_matrix
from radixnet.mixed_radix import enumerate_systems, ordered_factorizations

from helpers import random_valid_spec

# per-spec cap on paths walked by the Theorem 1 oracle; keeps the suite desk-sized
THEOREM1_PATH_BUDGET = 2 * 10**5


@contextlib.contextmanager
def criterion(log, label):
    info = {}
    start = time.perf_counter()
    try:
        yield info
    except BaseException:
        log.append(f"FAIL  {label}")
        raise
    detail = info.get("detail", "")
    log.append(f"PASS  {label} [{time.perf_counter() - start:.1f}s] {detail}".rstrip())


def _emr_system_lists(max_n_prime, max_systems):
    """Every system list allowed by the construction constraints, L <= 3."""
    for n_prime in range(2, max_n_prime + 1):
        firsts = list(ordered_factorizations(n_prime, 3))
        lasts = [s for d in range(2, n_prime + 1) if n_prime % d == 0
                 for s in ordered_factorizations(d, 3)]
        for f in firsts:
            yield [f]
        for m in range(2, max_systems + 1):
            prefixes = [[]]
            for _ in range(m - 1):
                prefixes = [p + [f] for p in prefixes for f in firsts]
            for p in prefixes:
                for last in lasts:
                    yield p + [last]


def test_ac01_lemma1_mixed_radix_single_path(acceptance_log):
    with criterion(acceptance_log, "AC1  Lemma 1: every mixed-radix pair has exactly one path") as info:
        start = time.perf_counter()
        systems = list(enumerate_systems(64, 4))
        for system in systems:
            oracle = brute_force_path_counts(build_mixed_radix_topology(system))
            assert (oracle == 1).all(), system
        elapsed = time.perf_counter() - start
        assert elapsed < 30.0
        info["detail"] = f"{len(systems)} systems, N'<=64, L<=4, {elapsed:.2f}s < 30s"


def test_ac02_lemma2_emr_multiplicity(acceptance_log):
    with criterion(acceptance_log, "AC2  Lemma 2: EMR chained product = N'^(M-1) * ones") as info:
        n_specs = n_equal = 0
        for systems in _emr_system_lists(12, 3):
            spec = RadixNetSpec.uniform(systems)
            topo = build_radixnet(spec)
            n_prime, m = spec.n_prime, len(systems)
            if systems[-1].size == n_prime:
                expected = n_prime ** (m - 1)
                n_equal += 1
            else:
                expected = n_prime ** (m - 2) * systems[-1].size
            product = path_count_matrix(topo)
            assert product == SparseIntMatrix.from_dense(
                np.full((n_prime, n_prime), expected)), systems
            assert (brute_force_path_counts(topo) == expected).all(), systems
            n_specs += 1
        info["detail"] = (f"{n_specs} specs (M<=3, N'<=12); {n_equal} with equal products "
                          f"match N'^(M-1), the rest match N'^(M-2)*prod(final)")


def test_ac03_theorem1_radixnet_multiplicity(acceptance_log):
    label = "AC3  Theorem 1: oracle = N'^(M-2)*prod(final)*prod(D_1..D_{Mbar-1})"
    with criterion(acceptance_log, label) as info:
        rng = random.Random(20190101)
        n_specs = n_differs = n_wide = 0
        for systems in _emr_system_lists(12, 3):
            total = sum(len(s) for s in systems)
            for _ in range(2):
                widths = [rng.randint(1, 3) for _ in range(total + 1)]
                spec = RadixNetSpec(systems, widths)
                # shrink inner widths until the exhaustive walk fits the budget
                while (spec.widths[0] * spec.widths[-1] * spec.n_prime ** 2
                       * path_count_closed_form(spec)) > THEOREM1_PATH_BUDGET:
                    w = list(spec.widths)
                    k = max(range(len(w)), key=lambda i: (w[i], i))
                    w[k] -= 1
                    spec = RadixNetSpec(systems, w)
                topo = build_radixnet(spec)
                n_prime, m, mbar = spec.n_prime, len(systems), spec.total_radices
                inner = math.prod(spec.widths[1:-1])
                expected = (inner if m == 1
                            else n_prime ** (m - 2) * systems[-1].size * inner)
                assert path_count_closed_form(spec) == expected
                oracle = brute_force_path_counts(topo)
                assert (oracle == expected).all(), spec
                assert verify_symmetry(topo) == (True, expected), spec
                printed = n_prime ** (mbar - 1) * inner
                if printed != expected:
                    n_differs += 1
                n_wide += max(spec.widths) > 1
                n_specs += 1
        assert n_differs > 0
        info["detail"] = (f"{n_specs} specs ({n_wide} with some D_i>1); oracle confirms the "
                          f"exponent M-1 form; the N'^(Mbar-1) form disagrees with the oracle "
                          f"on {n_differs} of them")


def test_ac04_density_identity(acceptance_log):
    with criterion(acceptance_log, "AC4  density_exact equals the closed-form density") as info:
        rng = random.Random(4)
        for _ in range(200):
            spec = random_valid_spec(rng, n_primes=(2, 4, 6, 8, 9, 12, 16, 18, 24, 30, 36),
                                     max_systems=4, max_width=5, max_length=4)
            d, nbar = spec.widths, spec.flat_radices
            num = sum(nbar[i - 1] * d[i - 1] * d[i] for i in range(1, len(d)))
            den = spec.n_prime * sum(d[i - 1] * d[i] for i in range(1, len(d)))
            assert density_exact(build_radixnet(spec)) == Fraction(num, den), spec
        info["detail"] = "200 random valid specs, exact rationals"


def test_ac05_zero_variance_exactness(acceptance_log):
    with criterion(acceptance_log, "AC5  uniform radix: density = mu/N' = mu^(1-d) exactly") as info:
        rng = random.Random(5)
        points = 0
        for mu in range(2, 7):
            for d in range(1, 7):
                n_prime = mu ** d
                max_w = 3 if n_prime < 10**4 else 2
                variants = [[(mu,) * d]]
                if n_prime <= 1000:
                    variants.append([(mu,) * d, (mu,) * d, (mu,) * rng.randint(1, d)])
                for systems in variants:
                    total = sum(len(s) for s in systems)
                    for widths in ([1] * (total + 1),
                                   [rng.randint(1, max_w) for _ in range(total + 1)]):
                        spec = RadixNetSpec(systems, widths)
                        approx = density_approximations(spec)
                        exact = density_exact(build_radixnet(spec))
                        assert approx.d == d
                        assert exact == approx.mu_over_n_prime == approx.mu_pow_1_minus_d
                        assert exact == Fraction(1, mu ** (d - 1))
                        points += 1
        info["detail"] = f"mu in 2..6, d in 1..6, {points} specs with varied widths"


def test_ac06_fig1_reproduction(acceptance_log):
    with criterion(acceptance_log, "AC6  Fig. 1 net: 4x8 nodes, 48 edges, degree 2, density 1/4") as info:
        topo = build_radixnet(RadixNetSpec.uniform([(2, 2, 2)]))
        assert topo.layer_sizes == (8, 8, 8, 8)
        assert topo.edge_count == 48
        for w in topo.submatrices:
            assert set(w.row_sums().tolist()) == {2} and set(w.col_sums().tolist()) == {2}
        assert density_exact(topo) == Fraction(1, 4)
        info["detail"] = "exact"


def test_ac07_fig2_scale(acceptance_log):
    with criterion(acceptance_log, "AC7  Fig. 2: (3,3,4) gives 36-node layers; 4 copies symmetric") as info:
        assert build_mixed_radix_topology((3, 3, 4)).layer_sizes == (36,) * 4
        cases = [[(3, 3, 4)] * 4, [(3, 3, 4)] * 3 + [(2, 3)]]
        details = []
        for systems in cases:
            spec = RadixNetSpec.uniform(systems)
            assert validate_spec(spec).ok
            topo = build_radixnet(spec)
            assert set(topo.layer_sizes) == {36}
            expected = 36 ** 2 * math.prod(systems[-1])
            assert verify_symmetry(topo) == (True, expected)
            assert path_count_closed_form(spec) == expected
            details.append(f"final {systems[-1]}: m={expected}")
        info["detail"] = "; ".join(details)


def test_ac08_mixed_product_property(acceptance_log):
    with criterion(acceptance_log, "AC8  (A kron B)(C kron D) = (AC) kron (BD)") as info:
        rng = np.random.default_rng(8)
        for _ in range(100):
            p, q, r, s, t, u = rng.integers(1, 6, size=6)
            A, C = rng.integers(0, 4, size=(p, q)), rng.integers(0, 4, size=(q, r))
            B, D = rng.integers(0, 4, size=(s, t)), rng.integers(0, 4, size=(t, u))
            A, B, C, D = (SparseIntMatrix.from_dense(x) for x in (A, B, C, D))
            assert matmul(kron(A, B), kron(C, D)) == kron(matmul(A, C), matmul(B, D))
        info["detail"] = "100 random quadruples, dims<=5, entries<=3"


def test_ac09_serialization_round_trips(acceptance_log):
    with criterion(acceptance_log, "AC9  spec and edge-list round trips, byte-deterministic") as info:
        rng = random.Random(9)
        for _ in range(100):
            spec = random_valid_spec(rng)
            texts = []
            for _ in range(2):
                buf = io.StringIO()
                rio.write_spec(spec, buf)
                texts.append(buf.getvalue())
            assert texts[0] == texts[1]
            assert rio.read_spec(io.StringIO(texts[0])) == spec

            topo = build_radixnet(spec)
            edges = []
            for _ in range(2):
                buf = io.StringIO()
                rio.write_edge_list(build_radixnet(spec), buf)
                edges.append(buf.getvalue().encode())
            assert edges[0] == edges[1]
            assert rio.read_edge_list(io.StringIO(edges[0].decode()), topo.layer_sizes) == topo
        info["detail"] = "100 random specs"


def test_ac10_mutation_sensitivity(acceptance_log):
    with criterion(acceptance_log, "AC10 deleting any edge of the Fig. 1 net breaks symmetry") as info:
        topo = build_radixnet(RadixNetSpec.uniform([(2, 2, 2)]))
        edges = list(topo.edges())
        assert len(edges) == 48
        for layer, src, dst in edges:
            assert verify_symmetry(topo.without_edge(layer, src, dst)) == (False, None)
        info["detail"] = "48 of 48 single-edge deletions detected"
