"""Weighted simple digraphs, their Laplacian and Perron matrices, edge-list I/O.

Orientation: an arc ``(i, j, w)`` means agent ``i`` listens to agent ``j``
with weight ``w``.  It lands in row ``i`` of the Laplacian, so every row of
``L = D - A`` sums to zero and ``x' = -L x`` is the consensus flow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

from .errors import (
    DuplicateArc,
    EmptyGraphOrder,
    NodeOutOfRange,
    NonPositiveStepSize,
    NonPositiveWeight,
    ParseError,
    SelfLoop,
)

Arc = tuple[int, int, float]


@dataclass(frozen=True)
class Digraph:
    """Immutable weighted digraph on nodes ``0..n-1``.

    ``arcs`` is stored sorted by ``(source, target)`` so that two digraphs
    built from permuted arc lists compare equal.
    """

    n: int
    arcs: tuple[Arc, ...]
    out_neighbors: tuple[Mapping[int, float], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool):
            raise TypeError(f"node count must be an integer, got {self.n!r}")
        n = int(self.n)
        if n < 1:
            raise EmptyGraphOrder(f"a digraph needs at least one node, got n={n}")
        seen = set()
        clean = []
        for arc in self.arcs:
            if len(arc) == 2:
                s, t = arc
                w = 1.0
            else:
                s, t, w = arc
            s, t, w = int(s), int(t), float(w)
            if not (0 <= s < n and 0 <= t < n):
                raise NodeOutOfRange(f"arc ({s}, {t}) has an endpoint outside [0, {n})")
            if s == t:
                raise SelfLoop(f"self-loop at node {s}")
            if not (math.isfinite(w) and w > 0):
                raise NonPositiveWeight(f"arc ({s}, {t}) has weight {w}; weights must be positive and finite")
            if (s, t) in seen:
                raise DuplicateArc(f"arc ({s}, {t}) appears more than once")
            seen.add((s, t))
            clean.append((s, t, w))
        clean.sort()
        adjacency: list[dict[int, float]] = [{} for _ in range(n)]
        for s, t, w in clean:
            adjacency[s][t] = w
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "arcs", tuple(clean))
        object.__setattr__(
            self, "out_neighbors", tuple(MappingProxyType(a) for a in adjacency)
        )

    @property
    def num_arcs(self) -> int:
        return len(self.arcs)

    def out_degrees(self) -> np.ndarray:
        """Weighted out-degree of every node."""
        deg = np.zeros(self.n)
        for s, _, w in self.arcs:
            deg[s] += w
        return deg

    def scaled(self, factor: float) -> "Digraph":
        return Digraph(self.n, tuple((s, t, w * factor) for s, t, w in self.arcs))


def build_digraph(n: int, arcs: Iterable[tuple]) -> Digraph:
    """Validate ``arcs`` (``(s, t)`` or ``(s, t, w)`` tuples) into a Digraph."""
    return Digraph(n, tuple(arcs))


def adjacency_matrix(g: Digraph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for s, t, w in g.arcs:
        a[s, t] = w
    return a


def laplacian(g: Digraph) -> np.ndarray:
    """``L = D - A`` with ``D`` the diagonal of weighted out-degrees."""
    a = adjacency_matrix(g)
    lap = -a
    lap[np.diag_indices(g.n)] = a.sum(axis=1)
    return lap


def perron_matrix(g: Digraph, eps: float) -> np.ndarray:
    """``P = I - eps * L``, the one-step matrix of the discrete protocol."""
    if not eps > 0:
        raise NonPositiveStepSize(f"step size must be positive, got {eps}")
    return np.eye(g.n) - eps * laplacian(g)


def max_out_degree(g: Digraph) -> float:
    return float(g.out_degrees().max()) if g.arcs else 0.0


def parse_edge_list(text: str) -> Digraph:
    """Parse the edge-list format.

    The first non-comment line is ``n <count>``; every following line is
    ``<source> <target> [<weight>]``.  Lines whose first non-blank character
    is ``#`` are comments; blank lines are skipped.
    """
    n = None
    arcs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 2 or fields[0] != "n":
                raise ParseError(f"expected header 'n <count>', got {line!r}", lineno)
            try:
                n = int(fields[1])
            except ValueError:
                raise ParseError(f"node count {fields[1]!r} is not an integer", lineno) from None
            continue
        if len(fields) not in (2, 3):
            raise ParseError(f"expected '<source> <target> [<weight>]', got {line!r}", lineno)
        try:
            s, t = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"node indices must be integers in {line!r}", lineno) from None
        try:
            w = float(fields[2]) if len(fields) == 3 else 1.0
        except ValueError:
            raise ParseError(f"weight {fields[2]!r} is not a number", lineno) from None
        arcs.append((s, t, w))
    if n is None:
        raise ParseError("missing header line 'n <count>'")
    return build_digraph(n, arcs)


def read_edge_list(path) -> Digraph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def format_edge_list(g: Digraph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{s} {t} {w!r}" for s, t, w in g.arcs)
    return "\n".join(lines) + "\n"
