"""Closed-form joint states of the resonant Jaynes-Cummings model with a thermal mode.

A two-level system prepared in ``lam*|e><e| + (1-lam)*|g><g|`` interacts with a
single field mode prepared in a thermal state with geometric photon-number
weights ``(1-alpha)*alpha**n``.  Under the rotating-wave coupling the joint
state decomposes into independently rotating two-dimensional sectors
``{|e,n>, |g,n+1>}`` plus the stationary ``|g,0>`` component, so the evolved
density matrix is available in closed form on a truncated Fock basis.

Basis convention, shared repo-wide: ``|a, n>`` maps to row/column index
``a*(n_max+1) + n`` with ``a = 0`` for ``|e>`` and ``a = 1`` for ``|g>``.
With this ordering the partial transpose of the field factor is a pure
index permutation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "NEG_EIGENVALUE_TOL",
    "ModelParams",
    "Truncation",
    "TrigFactors",
    "TruncatedDensityMatrix",
    "auto_truncation",
    "basis_index",
    "build_state",
    "rho_block",
    "thermal_weight",
    "trig_factors",
]

# An eigenvalue counts as negative only below this, so floating-point noise
# never flags a PPT state as NPPT.
NEG_EIGENVALUE_TOL = 1e-12

# auto_truncation never returns fewer Fock levels than this.
MIN_AUTO_N_MAX = 8


@dataclass(frozen=True)
class ModelParams:
    """Parameter point: excited-state weight, thermal parameter, coupling.

    ``alpha = m/(m+1)`` where ``m`` is the mean photon number of the mode;
    ``alpha = 0`` is the vacuum and ``alpha -> 1`` the infinite-temperature
    limit.  Time is dimensionless; ``gamma`` rescales its units and defaults
    to 1.
    """

    lam: float
    alpha: float
    gamma: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError(f"lam must lie in [0, 1], got {self.lam}")
        if not 0.0 <= self.alpha < 1.0:
            raise ValueError(f"alpha must lie in [0, 1), got {self.alpha}")
        if not self.gamma > 0.0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")

    @property
    def mean_photon_number(self) -> float:
        return self.alpha / (1.0 - self.alpha)

    @property
    def coherence_prefactor(self) -> float:
        """``lam - alpha*(1-lam)``; every sector coherence carries this factor.

        When it vanishes the joint state is diagonal in the coupled basis at
        all times and trivially PPT.
        """
        return self.lam - self.alpha * (1.0 - self.lam)


@dataclass(frozen=True)
class Truncation:
    """Fock-space cut: levels ``0..n_max`` are kept, tail weight is tracked."""

    n_max: int
    tail_epsilon: float = 1e-10

    def __post_init__(self) -> None:
        if self.n_max < 0:
            raise ValueError(f"n_max must be nonnegative, got {self.n_max}")
        if not self.tail_epsilon > 0.0:
            raise ValueError(f"tail_epsilon must be positive, got {self.tail_epsilon}")

    @property
    def dim(self) -> int:
        return 2 * (self.n_max + 1)


def auto_truncation(alpha: float, tail_epsilon: float) -> Truncation:
    """Smallest truncation whose thermal tail ``alpha**(n_max+1)`` is below budget.

    Floored at ``n_max = 8`` so cold states still keep a few sectors.
    """
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must lie in [0, 1), got {alpha}")
    if not tail_epsilon > 0.0:
        raise ValueError(f"tail_epsilon must be positive, got {tail_epsilon}")
    if alpha == 0.0:
        return Truncation(MIN_AUTO_N_MAX, tail_epsilon)
    n = max(MIN_AUTO_N_MAX, math.ceil(math.log(tail_epsilon) / math.log(alpha)) - 1)
    while alpha ** (n + 1) > tail_epsilon:
        n += 1
    while n > MIN_AUTO_N_MAX and alpha**n <= tail_epsilon:
        n -= 1
    return Truncation(n, tail_epsilon)


def basis_index(a: int, n: int, n_max: int) -> int:
    """Index of ``|a, n>``; ``a = 0`` for the excited and 1 for the ground state."""
    if a not in (0, 1):
        raise ValueError(f"qubit label must be 0 (e) or 1 (g), got {a}")
    if not 0 <= n <= n_max:
        raise ValueError(f"Fock level {n} outside kept range 0..{n_max}")
    return a * (n_max + 1) + n


def thermal_weight(n: int, alpha: float) -> float:
    """Geometric photon-number weight ``(1-alpha)*alpha**n``."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return (1.0 - alpha) * alpha**n


@dataclass(frozen=True)
class TrigFactors:
    """Rotation factors of sector ``n``: half-angle cosine/sine of ``omega_n*t``."""

    n: int
    omega_n: float
    c_n: float
    s_n: float


def trig_factors(n: int, t: float, gamma: float = 1.0) -> TrigFactors:
    """Sector Rabi frequency ``omega_n = 2*gamma*sqrt(n+1)`` and its half-angle trig."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    omega = 2.0 * gamma * math.sqrt(n + 1.0)
    half = 0.5 * omega * t
    return TrigFactors(n=n, omega_n=omega, c_n=math.cos(half), s_n=math.sin(half))


@dataclass(frozen=True)
class TruncatedDensityMatrix:
    """Dense joint operator on qubit (x) Fock(0..n_max) with tracked trace deficit.

    ``entries`` is Hermitian with trace ``1 - trace_deficit``; truncation never
    renormalises, the lost weight is carried explicitly instead.
    """

    n_max: int
    entries: np.ndarray
    trace_deficit: float

    @property
    def dim(self) -> int:
        return 2 * (self.n_max + 1)

    def index(self, a: int, n: int) -> int:
        return basis_index(a, n, self.n_max)

    def trace(self) -> float:
        return float(np.real(np.trace(self.entries)))


_E, _G = 0, 1

SectorEntry = tuple[tuple[int, int], tuple[int, int], complex]


def rho_block(n: int, t: float, params: ModelParams) -> list[SectorEntry]:
    """Unit-trace evolved contribution of the sector-``n`` thermal component.

    Returns sparse entries ``((a, m), (b, m'), amplitude)``.  The excited part
    rotates in ``{|e,n>, |g,n+1>}``; the ground part rotates in the sector one
    below (for ``n = 0`` it is the stationary ``|g,0>``).  Coherence signs
    follow the evolution operator ``exp(-i*H*t)``: the ``|e,n><g,n+1|``
    amplitude is ``+i*lam*c_n*s_n``.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    lam = params.lam
    f = trig_factors(n, t, params.gamma)
    c, s = f.c_n, f.s_n
    entries: list[SectorEntry] = [
        ((_E, n), (_E, n), lam * c * c + 0j),
        ((_G, n + 1), (_G, n + 1), lam * s * s + 0j),
        ((_E, n), (_G, n + 1), 1j * lam * c * s),
        ((_G, n + 1), (_E, n), -1j * lam * c * s),
    ]
    if n == 0:
        entries.append(((_G, 0), (_G, 0), (1.0 - lam) + 0j))
    else:
        fm = trig_factors(n - 1, t, params.gamma)
        cm, sm = fm.c_n, fm.s_n
        entries += [
            ((_E, n - 1), (_E, n - 1), (1.0 - lam) * sm * sm + 0j),
            ((_G, n), (_G, n), (1.0 - lam) * cm * cm + 0j),
            ((_E, n - 1), (_G, n), -1j * (1.0 - lam) * cm * sm),
            ((_G, n), (_E, n - 1), 1j * (1.0 - lam) * cm * sm),
        ]
    return [e for e in entries if e[2] != 0]


def build_state(t: float, params: ModelParams, trunc: Truncation) -> TruncatedDensityMatrix:
    """Assemble the thermal-weighted sum of sector blocks on the truncated basis.

    Sectors ``0..n_max-1`` enter in full.  The sector-``n_max`` weight
    straddles the cut: only its in-basis diagonal is kept, and every dropped
    contribution (the out-of-basis ``|g,n_max+1>`` population plus the
    boundary coherences) is accounted in ``trace_deficit``.  Nothing is ever
    renormalised.
    """
    if trunc.n_max < 1:
        raise ValueError("n_max must be at least 1; sector blocks above the vacuum would be lost")
    lam, alpha, gamma = params.lam, params.alpha, params.gamma
    n_max = trunc.n_max
    size = n_max + 1

    p = (1.0 - alpha) * alpha ** np.arange(size + 1, dtype=float)
    n = np.arange(n_max, dtype=float)
    half = gamma * np.sqrt(n + 1.0) * t
    c, s = np.cos(half), np.sin(half)

    pe = lam * p[:n_max]  # weight entering sector n through |e,n>
    pg = (1.0 - lam) * p[1 : size]  # weight entering sector n through |g,n+1>

    diag_e = np.zeros(size)
    diag_g = np.zeros(size)
    diag_e[:n_max] = pe * c**2 + pg * s**2
    diag_g[1:] = pe * s**2 + pg * c**2
    diag_g[0] = (1.0 - lam) * p[0]

    # boundary sector n_max: frozen diagonal remnant of the excited part
    half_b = gamma * math.sqrt(n_max + 1.0) * t
    cb, sb = math.cos(half_b), math.sin(half_b)
    diag_e[n_max] = lam * p[n_max] * cb * cb

    coherence = 1j * (pe - pg) * c * s
    # the ground-part coherence of the boundary weight is dropped with the rest of it
    coherence[n_max - 1] = 1j * pe[n_max - 1] * c[n_max - 1] * s[n_max - 1]

    rho = np.zeros((2 * size, 2 * size), dtype=complex)
    idx = np.arange(size)
    rho[idx, idx] = diag_e
    rho[size + idx, size + idx] = diag_g
    rows = np.arange(n_max)  # (e, n)
    cols = size + np.arange(1, size)  # (g, n+1)
    rho[rows, cols] = coherence
    rho[cols, rows] = np.conj(coherence)

    deficit = float(alpha ** (n_max + 1) + lam * p[n_max] * sb * sb)
    return TruncatedDensityMatrix(n_max=n_max, entries=rho, trace_deficit=deficit)
