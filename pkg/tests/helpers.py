"""Independent oracles and random generators shared by the test modules."""
from __future__ import annotations

import random

import numpy as np

from radixnet import RadixNetSpec
from radixnet.mixed_radix import ordered_factorizations


def dense_layer_paths(mats):
    """Path counts by recursive DFS over dense 0/1 layer matrices."""
    mats = [np.asarray(m) for m in mats]
    n_in, n_out = mats[0].shape[0], mats[-1].shape[1]
    out = np.zeros((n_in, n_out), dtype=object)

    def walk(layer, node, start):
        if layer == len(mats):
            out[start, node] += 1
            return
        for nxt in np.flatnonzero(mats[layer][node]):
            walk(layer + 1, int(nxt), start)

    for u in range(n_in):
        walk(0, u, u)
    return out


def random_factorization(rng: random.Random, n: int, max_length: int | None = None):
    options = list(ordered_factorizations(n, max_length))
    return rng.choice(options)


def random_valid_spec(rng: random.Random, *, n_primes=(2, 3, 4, 6, 8, 9, 12),
                      max_systems=3, max_width=3, max_length=3) -> RadixNetSpec:
    n_prime = rng.choice(n_primes)
    m = rng.randint(1, max_systems)
    systems = [random_factorization(rng, n_prime, max_length) for _ in range(m - 1)]
    if m == 1:
        systems.append(random_factorization(rng, n_prime, max_length))
    else:
        divisors = [d for d in range(2, n_prime + 1) if n_prime % d == 0]
        systems.append(random_factorization(rng, rng.choice(divisors), max_length))
    total = sum(len(s) for s in systems)
    widths = [rng.randint(1, max_width) for _ in range(total + 1)]
    return RadixNetSpec(tuple(systems), tuple(widths))


def random_layered(rng: np.random.Generator, max_nodes=6, max_layers=4, p=0.5):
    """Random 0/1 layer matrices, not necessarily a valid FNNT."""
    depth = int(rng.integers(1, max_layers + 1))
    sizes = rng.integers(1, max_nodes + 1, size=depth + 1)
    return [(rng.random((sizes[i], sizes[i + 1])) < p).astype(np.int64) for i in range(depth)]
