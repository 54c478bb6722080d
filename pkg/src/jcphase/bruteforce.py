"""Brute-force verification path: dense evolution, full partial transpose, 2x3 witnesses.

Nothing here reuses the closed-form sector rotations.  Evolution comes from a
dense eigendecomposition of the coupling Hamiltonian, spectra from full
eigensolves, and distillability witnesses from explicit compressions onto
three adjacent Fock levels, so index or sign mistakes in the analytic path
cannot cancel against this one.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .model import (
    NEG_EIGENVALUE_TOL,
    ModelParams,
    TruncatedDensityMatrix,
    Truncation,
)

__all__ = [
    "ProjectedState",
    "evolve_density_matrix",
    "evolve_numeric",
    "full_partial_transpose",
    "full_pt_spectrum",
    "nppt_witness",
    "project_2x3",
]


@functools.lru_cache(maxsize=128)
def _coupling_eigensystem(n_max: int):
    """Eigensystem of H/gamma on the truncated basis.

    ``|e,n-1>`` couples to ``|g,n>`` with matrix element sqrt(n); the
    truncated ``|e,n_max>`` has lost its partner and is frozen.
    """
    size = n_max + 1
    h = np.zeros((2 * size, 2 * size))
    for n in range(1, size):
        h[n - 1, size + n] = h[size + n, n - 1] = math.sqrt(n)
    return np.linalg.eigh(h)


def evolve_density_matrix(
    t: float, rho0: TruncatedDensityMatrix, gamma: float = 1.0
) -> TruncatedDensityMatrix:
    """Conjugate ``rho0`` by ``exp(-i*H*t)`` built from the dense eigensystem."""
    w, v = _coupling_eigensystem(rho0.n_max)
    phases = np.exp(-1j * gamma * w * t)
    u = (v * phases) @ v.conj().T
    return TruncatedDensityMatrix(
        n_max=rho0.n_max,
        entries=u @ rho0.entries @ u.conj().T,
        trace_deficit=rho0.trace_deficit,
    )


def evolve_numeric(t: float, params: ModelParams, trunc: Truncation) -> TruncatedDensityMatrix:
    """Numerically evolved product of the qubit state and the truncated thermal state.

    Thermal weights are cut at ``n_max`` (not renormalised), so the trace is
    ``1 - alpha**(n_max+1)`` at all times.
    """
    if trunc.n_max < 1:
        raise ValueError("n_max must be at least 1")
    size = trunc.n_max + 1
    p = (1.0 - params.alpha) * params.alpha ** np.arange(size, dtype=float)
    diag = np.concatenate([params.lam * p, (1.0 - params.lam) * p])
    rho0 = TruncatedDensityMatrix(
        n_max=trunc.n_max,
        entries=np.diag(diag.astype(complex)),
        trace_deficit=float(params.alpha ** (trunc.n_max + 1)),
    )
    return evolve_density_matrix(t, rho0, params.gamma)


def full_partial_transpose(rho: TruncatedDensityMatrix) -> np.ndarray:
    """Transpose the field indices only: ((a,m),(b,n)) -> ((a,n),(b,m)).

    A pure index permutation: involutive, trace-preserving, exact in floats.
    """
    size = rho.n_max + 1
    return (
        rho.entries.reshape(2, size, 2, size)
        .transpose(0, 3, 2, 1)
        .reshape(2 * size, 2 * size)
    )


def full_pt_spectrum(rho: TruncatedDensityMatrix) -> np.ndarray:
    """All eigenvalues of the full partial transpose, ascending."""
    return np.linalg.eigvalsh(full_partial_transpose(rho))


@dataclass(frozen=True)
class ProjectedState:
    """Normalised compression onto qubit (x) {|n-1>, |n|, |n+1>}, norm retained."""

    n: int
    entries: np.ndarray
    norm: float


def project_2x3(rho: TruncatedDensityMatrix, n: int) -> ProjectedState:
    """Compress onto the 2x3 window of three adjacent Fock levels around ``n``."""
    if n < 1:
        raise ValueError(f"window centre must be at least 1, got {n}")
    if n + 1 > rho.n_max:
        raise ValueError(f"window centre {n} needs level {n + 1} > n_max = {rho.n_max}")
    size = rho.n_max + 1
    cols = [a * size + m for a in range(2) for m in (n - 1, n, n + 1)]
    sub = rho.entries[np.ix_(cols, cols)]
    norm = float(np.real(np.trace(sub)))
    return ProjectedState(n=n, entries=sub / norm, norm=norm)


def _pt_2x3(mat: np.ndarray) -> np.ndarray:
    return mat.reshape(2, 3, 2, 3).transpose(0, 3, 2, 1).reshape(6, 6)


def nppt_witness(
    rho: TruncatedDensityMatrix, n_search_max: int, tol: float = NEG_EIGENVALUE_TOL
) -> int | None:
    """Smallest window centre whose 2x3 compression has a negative partial transpose.

    The threshold is applied on the scale of the uncompressed state (the
    compression's eigenvalues are multiplied back by its norm), so the verdict
    matches testing ``full_pt_spectrum`` against the same ``tol``.
    Returns ``None`` when no window up to ``n_search_max`` is negative.
    """
    if n_search_max + 1 > rho.n_max:
        raise ValueError(f"n_search_max {n_search_max} needs level n_search_max+1 <= n_max = {rho.n_max}")
    for n in range(1, n_search_max + 1):
        proj = project_2x3(rho, n)
        smallest = np.linalg.eigvalsh(_pt_2x3(proj.entries))[0] * proj.norm
        if smallest < -tol:
            return n
    return None
