"""Continuous and discrete consensus dynamics and long-run limits of the Perron matrix."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .digraph import Digraph, laplacian, max_out_degree, perron_matrix
from .errors import (
    DimensionMismatch,
    NoConvergenceWithinBudget,
    NonPositiveStepOrHorizon,
    NonPositiveStepSize,
    StepSizeOutsideStochasticRange,
)

# slack for float rounding in eps * max_degree <= 1 and in entry signs
STOCHASTIC_SLACK = 1e-12


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # shape (len(times), n)
    mode: str

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def write_csv(self, path):
        n = self.states.shape[1]
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["t"] + [f"x{i}" for i in range(n)])
            for t, row in zip(self.times, self.states):
                stamp = str(int(t)) if self.mode == "discrete" else format(float(t), ".17g")
                writer.writerow([stamp] + [format(float(v), ".17g") for v in row])


@dataclass(frozen=True)
class LongRunResult:
    matrix: np.ndarray
    m: int
    residual: float


@dataclass(frozen=True)
class PerronProperties:
    nonnegative: bool
    row_stochastic: bool
    positive_diagonal: bool
    within_threshold: bool


def _initial_state(g, x0):
    x = np.asarray(x0, dtype=float)
    if x.shape != (g.n,):
        raise DimensionMismatch(f"x0 has shape {x.shape}, expected ({g.n},)")
    return x


def simulate_continuous(g: Digraph, x0, t_end: float, dt: float = 0.01, stride: int = 10) -> Trajectory:
    """Integrate ``x' = -L x`` with classical fixed-step RK4.

    Every ``stride``-th step is recorded, plus the start and the end.  If
    ``t_end`` is not a multiple of ``dt`` the last step is shortened.
    Stability of RK4 here needs roughly ``dt < 1 / (2 * max_out_degree)``.
    """
    if not (dt > 0 and t_end >= 0):
        raise NonPositiveStepOrHorizon(f"need dt > 0 and t_end >= 0, got dt={dt}, t_end={t_end}")
    if stride < 1:
        raise ValueError("stride must be >= 1")
    x = _initial_state(g, x0)
    lap = laplacian(g)
    steps = math.ceil(t_end / dt - 1e-9) if t_end > 0 else 0
    times, states = [0.0], [x.copy()]
    t = 0.0
    for k in range(1, steps + 1):
        h = min(dt, t_end - (k - 1) * dt)
        k1 = -lap @ x
        k2 = -lap @ (x + 0.5 * h * k1)
        k3 = -lap @ (x + 0.5 * h * k2)
        k4 = -lap @ (x + h * k3)
        x = x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        t = t_end if k == steps else k * dt
        if k % stride == 0 or k == steps:
            times.append(t)
            states.append(x.copy())
    return Trajectory(np.array(times), np.array(states), "continuous")


def euler_step(g: Digraph, x0, dt: float) -> np.ndarray:
    x = _initial_state(g, x0)
    return x - dt * (laplacian(g) @ x)


def simulate_discrete(g: Digraph, eps: float, x0, steps: int, stride: int = 1, elementwise: bool = False) -> Trajectory:
    """Iterate ``x(k+1) = P x(k)`` with ``P = I - eps L``.

    With ``elementwise=True`` each agent is updated from its neighbors'
    differences directly instead of through the matrix product.
    """
    if not eps > 0:
        raise NonPositiveStepSize(f"step size must be positive, got {eps}")
    if steps < 0:
        raise ValueError("steps must be >= 0")
    if stride < 1:
        raise ValueError("stride must be >= 1")
    x = _initial_state(g, x0)
    p = perron_matrix(g, eps)
    times, states = [0], [x.copy()]
    for k in range(1, steps + 1):
        if elementwise:
            x = np.array([
                x[i] + eps * sum(w * (x[j] - x[i]) for j, w in g.out_neighbors[i].items())
                for i in range(g.n)
            ])
        else:
            x = p @ x
        if k % stride == 0 or k == steps:
            times.append(k)
            states.append(x.copy())
    return Trajectory(np.array(times), np.array(states), "discrete")


def _within_threshold(g, eps):
    return eps * max_out_degree(g) <= 1.0 + STOCHASTIC_SLACK


def perron_properties(g: Digraph, eps: float) -> PerronProperties:
    p = perron_matrix(g, eps)
    delta = max_out_degree(g)
    return PerronProperties(
        nonnegative=bool(p.min() >= -STOCHASTIC_SLACK),
        row_stochastic=bool(
            p.min() >= -STOCHASTIC_SLACK
            and np.all(np.abs(p.sum(axis=1) - 1.0) <= STOCHASTIC_SLACK)
        ),
        positive_diagonal=bool(delta == 0 or eps * delta < 1.0 - STOCHASTIC_SLACK),
        within_threshold=_within_threshold(g, eps),
    )


def default_eps(g: Digraph) -> float:
    """``1 / (2 * max_out_degree)``; 0.5 for the empty graph."""
    delta = max_out_degree(g)
    return 0.5 / delta if delta > 0 else 0.5


def cesaro_average(p: np.ndarray, m: int) -> LongRunResult:
    """``m^-1 * sum_{k=1..m} P^k`` by streaming multiplication.

    ``p`` may carry leading batch dimensions, in which case the residual is
    the worst over the batch.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    p = np.asarray(p, dtype=float)
    power = p.copy()
    acc = p.copy()
    half = None
    for k in range(2, m + 1):
        power = power @ p
        acc += power
        if k == m // 2:
            half = acc / k
    if half is None:
        half = p
    avg = acc / m
    return LongRunResult(matrix=avg, m=m, residual=float(np.abs(avg - half).max()))


def cesaro_limit(g: Digraph, eps: float, m: int = 10_000) -> LongRunResult:
    if not eps > 0 or not _within_threshold(g, eps):
        raise StepSizeOutsideStochasticRange(
            f"eps={eps} is outside (0, 1/max_out_degree] for max_out_degree={max_out_degree(g)}"
        )
    return cesaro_average(perron_matrix(g, eps), m)


def power_limit(g: Digraph, eps: float, k_max: int = 64, tol: float = 1e-12) -> np.ndarray:
    """Limit of ``P^k`` by repeated squaring, for ``eps`` strictly below ``1/Δ``."""
    delta = max_out_degree(g)
    if not eps > 0 or (delta > 0 and not eps * delta < 1.0):
        raise StepSizeOutsideStochasticRange(
            f"eps={eps} must lie strictly inside (0, 1/max_out_degree) for max_out_degree={delta}"
        )
    if not tol > 0:
        raise ValueError("tol must be positive")
    q = perron_matrix(g, eps)
    for _ in range(k_max):
        nxt = q @ q
        # renormalize rows so rounding drift does not compound across squarings
        nxt /= nxt.sum(axis=1, keepdims=True)
        if np.abs(nxt - q).max() <= tol:
            return nxt
        q = nxt
    raise NoConvergenceWithinBudget(
        f"P^(2^k) did not settle within tol={tol} after {k_max} squarings"
    )
