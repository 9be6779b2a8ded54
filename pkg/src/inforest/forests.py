"""Exhaustive enumeration of spanning in-forests and the matrix of maximal in-forests.

This is the slow, obviously-correct route to ``J̄``.  A spanning in-forest
picks at most one outgoing arc per node and contains no cycle, so the
candidate space is the product of per-node choices ("no arc" included).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .digraph import Arc, Digraph
from .errors import GraphTooLargeForEnumeration

ENUMERATION_CAP = 12


@dataclass(frozen=True)
class InForest:
    arc_subset: tuple[Arc, ...]
    roots: frozenset[int]
    weight: float

    @property
    def num_trees(self) -> int:
        return len(self.roots)


@dataclass(frozen=True)
class ForestSummary:
    d: int
    total_weight: float
    j_matrix: np.ndarray
    forest_count: int

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "total_weight": self.total_weight,
            "forest_count": self.forest_count,
            "j_matrix": self.j_matrix.tolist(),
        }


def _check_cap(g: Digraph, cap: int):
    if g.n > cap:
        raise GraphTooLargeForEnumeration(
            f"n={g.n} exceeds the enumeration cap of {cap} nodes"
        )


def _root_assignment(choice):
    """Map each node to the root of its tree, or None if ``choice`` has a cycle.

    ``choice[v]`` is the successor of ``v`` or -1.
    """
    n = len(choice)
    root_of = [-1] * n
    for start in range(n):
        if root_of[start] != -1:
            continue
        walk = []
        in_walk = set()
        v = start
        while root_of[v] == -1 and choice[v] != -1:
            if v in in_walk:
                return None
            walk.append(v)
            in_walk.add(v)
            v = choice[v]
        r = v if root_of[v] == -1 else root_of[v]
        root_of[v] = r
        for u in walk:
            root_of[u] = r
    return root_of


def _iter_forests(g: Digraph):
    """Yield ``(choice, root_of, weight)`` for every spanning in-forest."""
    options = [[(-1, 1.0)] + sorted(nbrs.items()) for nbrs in g.out_neighbors]
    for combo in itertools.product(*options):
        choice = [t for t, _ in combo]
        root_of = _root_assignment(choice)
        if root_of is None:
            continue
        yield choice, root_of, math.prod(w for _, w in combo)


def enumerate_in_forests(g: Digraph, num_trees: int, cap: int = ENUMERATION_CAP) -> list[InForest]:
    """All spanning in-forests of ``g`` with exactly ``num_trees`` trees.

    Sorted lexicographically by their (sorted) arc lists.
    """
    _check_cap(g, cap)
    if not 1 <= num_trees <= g.n:
        raise ValueError(f"num_trees must lie in [1, {g.n}], got {num_trees}")
    found = []
    for choice, _, weight in _iter_forests(g):
        roots = frozenset(v for v, t in enumerate(choice) if t == -1)
        if len(roots) != num_trees:
            continue
        arcs = tuple(
            (v, t, g.out_neighbors[v][t]) for v, t in enumerate(choice) if t != -1
        )
        found.append(InForest(arcs, roots, weight))
    found.sort(key=lambda f: [(s, t) for s, t, _ in f.arc_subset])
    return found


def maximal_forest_matrix(g: Digraph, cap: int = ENUMERATION_CAP) -> ForestSummary:
    """Normalized matrix of maximal in-forests.

    Entry ``(i, j)`` is the total weight of maximal in-forests in which ``i``
    lies in the tree rooted at ``j``, divided by the total weight of all
    maximal in-forests.  Maximal forests are those with the fewest trees.
    """
    _check_cap(g, cap)
    n = g.n
    best = n + 1
    numer = np.zeros((n, n))
    total = 0.0
    count = 0
    for choice, root_of, weight in _iter_forests(g):
        trees = choice.count(-1)
        if trees > best:
            continue
        if trees < best:
            best = trees
            numer[:] = 0.0
            total = 0.0
            count = 0
        numer[np.arange(n), root_of] += weight
        total += weight
        count += 1
    return ForestSummary(d=best, total_weight=total, j_matrix=numer / total, forest_count=count)
