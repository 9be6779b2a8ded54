"""Laplacian spectra, numerical rank and the eigenprojector of ``L`` at zero."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .digraph import Digraph, laplacian
from .errors import ConvergenceFailure, SingularPairing
from .scc import in_forest_dimension

ZERO_TOL = 1e-9
ZERO_FLOOR = 1e-12
RANK_TOL = 1e-10
# Z and W are orthonormal, so the singular values of W^T Z are cosines of
# the principal angles between the kernels; below this they do not pair
PAIRING_MIN_COSINE = 1e-10


@dataclass(frozen=True)
class SpectralReport:
    eigenvalues: tuple[complex, ...]
    zero_multiplicity: int
    numerical_rank: int
    min_nonzero_real_part: Optional[float]
    localization_holds: bool

    def to_dict(self) -> dict:
        return {
            "eigenvalues": [[z.real, z.imag] for z in self.eigenvalues],
            "zero_multiplicity": self.zero_multiplicity,
            "numerical_rank": self.numerical_rank,
            "min_nonzero_real_part": self.min_nonzero_real_part,
            "localization_holds": self.localization_holds,
        }


@dataclass(frozen=True)
class Eigenprojector:
    matrix: np.ndarray
    d: int


def _sort_key(z):
    # rounding the key only, so conjugate pairs whose real parts differ in
    # the last ulp still sort by imaginary part
    return (round(z.real, 12), z.imag)


def eigenvalues(m) -> list[complex]:
    """All eigenvalues with multiplicity, sorted by real then imaginary part."""
    m = np.asarray(m, dtype=float)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    try:
        vals = np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    return sorted((complex(z) for z in vals), key=_sort_key)


def singular_values(m) -> np.ndarray:
    try:
        return np.linalg.svd(np.asarray(m, dtype=float), compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc


def numerical_rank(m, rank_tol: float = RANK_TOL) -> int:
    """Count singular values above ``rank_tol`` times the largest one."""
    if not rank_tol > 0:
        raise ValueError(f"rank_tol must be positive, got {rank_tol}")
    sv = singular_values(m)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.count_nonzero(sv > rank_tol * sv[0]))


def zero_threshold(lap: np.ndarray, zero_tol: float = ZERO_TOL) -> float:
    return max(zero_tol * float(np.abs(lap).max(initial=0.0)), ZERO_FLOOR)


def spectral_report(g: Digraph, zero_tol: float = ZERO_TOL, rank_tol: float = RANK_TOL) -> SpectralReport:
    for name, tol in (("zero_tol", zero_tol), ("rank_tol", rank_tol)):
        if not 0 < tol < 1:
            raise ValueError(f"{name} must lie in (0, 1), got {tol}")
    lap = laplacian(g)
    vals = eigenvalues(lap)
    thr = zero_threshold(lap, zero_tol)
    nontrivial = [z for z in vals if abs(z) > thr]
    return SpectralReport(
        eigenvalues=tuple(vals),
        zero_multiplicity=len(vals) - len(nontrivial),
        numerical_rank=numerical_rank(lap, rank_tol),
        min_nonzero_real_part=min((z.real for z in nontrivial), default=None),
        localization_holds=all(z.real > 0 for z in nontrivial),
    )


def gershgorin_contains(m, vals, slack: float = 1e-9) -> bool:
    """True if every value lies in the union of the row Gershgorin disks of ``m``."""
    m = np.asarray(m, dtype=float)
    centers = np.diag(m)
    radii = np.abs(m).sum(axis=1) - np.abs(centers)
    return all(
        bool(np.any(np.abs(z - centers) <= radii + slack)) for z in vals
    )


def eigenprojector_at_zero(g: Digraph, rank_tol: float = RANK_TOL) -> Eigenprojector:
    """Projector onto ker(L) along range(L), i.e. ``Z (W^T Z)^{-1} W^T``.

    ``Z`` and ``W`` are orthonormal bases of the right and left null spaces
    of ``L``, read off the trailing singular vectors.  The kernel dimension
    comes from the sink-component count, not from a threshold.
    """
    lap = laplacian(g)
    n = g.n
    d = in_forest_dimension(g)
    if d == n:
        return Eigenprojector(matrix=np.eye(n), d=d)
    try:
        u, sv, vt = np.linalg.svd(lap)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    if sv[n - d - 1] <= rank_tol * sv[0] or sv[n - d] > rank_tol * sv[0]:
        raise SingularPairing(
            f"singular values of L do not show a {d}-dimensional kernel: {sv.tolist()}"
        )
    z = vt[n - d:].T
    w = u[:, n - d:]
    pairing = w.T @ z
    if np.linalg.svd(pairing, compute_uv=False).min() < PAIRING_MIN_COSINE:
        raise SingularPairing("W^T Z is numerically singular; zero eigenvalue not semisimple?")
    proj = z @ np.linalg.solve(pairing, w.T)
    return Eigenprojector(matrix=np.asarray(proj, dtype=float), d=d)
