"""Graph families used by the verification suite and tests."""
from __future__ import annotations

import numpy as np

from .digraph import Digraph, build_digraph


def ordered_pairs(n: int) -> list[tuple[int, int]]:
    return [(s, t) for s in range(n) for t in range(n) if s != t]


def all_digraphs(n: int):
    """Every labeled simple unit-weight digraph on ``n`` nodes (2^(n(n-1)) of them)."""
    pairs = ordered_pairs(n)
    for mask in range(1 << len(pairs)):
        yield build_digraph(n, [p for b, p in enumerate(pairs) if mask >> b & 1])


def converging_path(n: int) -> Digraph:
    """Path ``0 -> 1 -> ... -> n-1``; a converging tree rooted at ``n-1``."""
    return build_digraph(n, [(i, i + 1) for i in range(n - 1)])


def directed_cycle(n: int) -> Digraph:
    return build_digraph(n, [(i, (i + 1) % n) for i in range(n)])


def random_digraph(rng: np.random.Generator, n: int, p: float = 0.4,
                   low: float = 0.1, high: float = 2.0, weighted: bool = True) -> Digraph:
    arcs = []
    for s, t in ordered_pairs(n):
        if rng.random() < p:
            w = rng.uniform(low, high) if weighted else 1.0
            arcs.append((s, t, w))
    return build_digraph(n, arcs)


def random_strongly_connected(rng: np.random.Generator, n: int, p: float = 0.3,
                              low: float = 0.1, high: float = 2.0) -> Digraph:
    """A random Hamiltonian cycle plus extra random arcs, weights uniform in [low, high]."""
    order = rng.permutation(n)
    chosen = {(int(order[i]), int(order[(i + 1) % n])) for i in range(n)} if n > 1 else set()
    for s, t in ordered_pairs(n):
        if (s, t) not in chosen and rng.random() < p:
            chosen.add((s, t))
    return build_digraph(n, [(s, t, rng.uniform(low, high)) for s, t in sorted(chosen)])


def random_family(seed: int, count: int, sizes=(3, 4, 5), **kwargs) -> list[Digraph]:
    rng = np.random.default_rng(seed)
    return [random_digraph(rng, int(rng.choice(sizes)), **kwargs) for _ in range(count)]


def two_disjoint_cycles() -> Digraph:
    return build_digraph(4, [(0, 1), (1, 0), (2, 3), (3, 2)])


__all__ = [
    "all_digraphs", "converging_path", "directed_cycle", "ordered_pairs",
    "random_digraph", "random_family", "random_strongly_connected",
    "two_disjoint_cycles",
]
