"""Dynamical-regime classification over the (lambda, alpha) square.

Two closed-form strict inequalities decide whether a partial-transpose block
can ever develop a negative determinant: one governing the blocks ``n >= 1``
(`cond_immediate`) and one governing the ``n = 0`` block (`cond_delayed`).
Points satisfying neither stay PPT at every time.

Because ``min(lam, alpha*(1-lam)) <= alpha*(1-lam)``, the ``n = 0``
inequality implies the ``n >= 1`` one, so `classify` can never return the
``nppt_delayed`` label; it is retained for schema stability.  ``alpha = 1``
is admitted throughout this module as the infinite-temperature limit, even
though state construction requires ``alpha < 1``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .model import ModelParams, Truncation, auto_truncation
from .ptspec import _block_entry_arrays

__all__ = [
    "BoundaryKind",
    "BoundaryPoint",
    "Regime",
    "RegimeResult",
    "boundary_curve",
    "classify",
    "cond_delayed",
    "cond_immediate",
    "delayed_margin",
    "f_min",
    "first_nppt_time",
    "immediate_margin",
]


class Regime(str, enum.Enum):
    PPT_ALL_TIMES = "ppt_all_times"
    NPPT_DELAYED = "nppt_delayed"
    NPPT_IMMEDIATE = "nppt_immediate"


class BoundaryKind(str, enum.Enum):
    IMMEDIATE = "immediate"
    DELAYED = "delayed"


@dataclass(frozen=True)
class RegimeResult:
    regime: Regime
    cond_immediate: bool
    cond_delayed: bool
    f_value: float


@dataclass(frozen=True)
class BoundaryPoint:
    lam: float
    alpha: float
    which: BoundaryKind


def _check_unit_square(alpha: float, lam: float) -> None:
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lam must lie in [0, 1], got {lam}")


def f_min(alpha: float, lam: float) -> float:
    """``min(lam, alpha*(1-lam))``, the extremal population of a rotated sector."""
    _check_unit_square(alpha, lam)
    return min(lam, alpha * (1.0 - lam))


def immediate_margin(alpha: float, lam: float) -> float:
    """Extremal determinant bracket of the blocks n >= 1; negative means NPPT possible."""
    _check_unit_square(alpha, lam)
    f = f_min(alpha, lam)
    delta = lam - alpha * (1.0 - lam)
    return f * f - 0.25 * delta * delta


def delayed_margin(alpha: float, lam: float) -> float:
    """Extremal determinant bracket of the n = 0 block; negative means NPPT possible."""
    _check_unit_square(alpha, lam)
    f = f_min(alpha, lam)
    delta = lam - alpha * (1.0 - lam)
    return alpha * f * (1.0 - lam) - 0.25 * delta * delta


def cond_immediate(alpha: float, lam: float) -> bool:
    """True iff some block n >= 1 can reach a negative determinant (strict)."""
    return immediate_margin(alpha, lam) < 0.0


def cond_delayed(alpha: float, lam: float) -> bool:
    """True iff the n = 0 block can reach a negative determinant (strict)."""
    return delayed_margin(alpha, lam) < 0.0


def classify(alpha: float, lam: float) -> RegimeResult:
    """Combine the two strict conditions into a regime label.

    Points on a boundary (margin exactly zero) classify with the more ordered
    regime, since negative determinants require strict inequality.
    """
    imm = cond_immediate(alpha, lam)
    dly = cond_delayed(alpha, lam)
    if imm:
        regime = Regime.NPPT_IMMEDIATE
    elif dly:
        regime = Regime.NPPT_DELAYED
    else:
        regime = Regime.PPT_ALL_TIMES
    return RegimeResult(
        regime=regime, cond_immediate=imm, cond_delayed=dly, f_value=f_min(alpha, lam)
    )


_MARGIN_FNS = {
    BoundaryKind.IMMEDIATE: immediate_margin,
    BoundaryKind.DELAYED: delayed_margin,
}


def _bisect_root(fn, lo: float, f_lo: float, hi: float, width: float = 1e-11) -> float:
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        f_mid = fn(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid < 0.0) == (f_lo < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def boundary_curve(
    which: BoundaryKind,
    lambda_grid,
    alpha_samples: int = 2000,
) -> list[BoundaryPoint]:
    """All alpha roots of the chosen condition along a lambda grid.

    Each lambda row is scanned on a uniform alpha grid over [0, 1] and every
    bracketing interval is bisected; multiple roots per row are all reported
    (re-entrant rows exist around lam = 0.1).  Rows where the condition never
    changes sign contribute nothing.
    """
    margin = _MARGIN_FNS[BoundaryKind(which)]
    alphas = np.linspace(0.0, 1.0, alpha_samples + 1)
    points: list[BoundaryPoint] = []
    for lam in lambda_grid:
        if not 0.0 <= lam <= 1.0:
            raise ValueError(f"lambda grid value {lam} outside [0, 1]")
        vals = np.array([margin(a, lam) for a in alphas])
        for i in range(alpha_samples):
            lo, hi = alphas[i], alphas[i + 1]
            v_lo, v_hi = vals[i], vals[i + 1]
            if v_lo == 0.0:
                root = float(lo)
            elif (v_lo < 0.0) != (v_hi < 0.0) and v_hi != 0.0:
                root = _bisect_root(lambda a: margin(a, lam), float(lo), float(v_lo), float(hi))
            elif v_hi == 0.0 and i == alpha_samples - 1:
                root = float(hi)
            else:
                continue
            if not points or points[-1].lam != lam or abs(points[-1].alpha - root) > 1e-9:
                points.append(BoundaryPoint(lam=float(lam), alpha=root, which=BoundaryKind(which)))
    return points


def _min_block_excess(params: ModelParams, n_max: int, times: np.ndarray, tol: float) -> np.ndarray:
    """Most negative ``det + tol*trace**2`` over the kept blocks, per time."""
    a, b, c_im = _block_entry_arrays(params, n_max, times)
    det = a * b - c_im * c_im
    trace = a + b
    return (det + tol * trace * trace).min(axis=1)


def first_nppt_time(
    params: ModelParams,
    horizon: float,
    tol: float = 1e-10,
    trunc: Truncation | None = None,
) -> float | None:
    """First time a kept block determinant drops below ``-tol * trace**2``.

    Scans a grid fine enough for the fastest kept Rabi oscillation (64 samples
    per period of the top sector), then bisects the first crossing.  Returns
    ``None`` when nothing goes negative within the horizon, which the caller
    disambiguates via `classify` (PPT regime versus insufficient horizon).
    Deep blocks develop negativity later than shallow ones, so a moderate
    truncation does not move the detected onset.
    """
    if horizon <= 0:
        raise ValueError(f"horizon must be positive, got {horizon}")
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if trunc is None:
        trunc = auto_truncation(params.alpha, 1e-10)
    n_max = trunc.n_max
    omega_top = 2.0 * params.gamma * math.sqrt(n_max + 1.0)
    step = 2.0 * math.pi / (omega_top * 64.0)
    n_steps = int(math.ceil(horizon / step))
    chunk = max(1, 2_000_000 // max(1, n_max))
    prev_t = 0.0
    for start in range(1, n_steps + 1, chunk):
        stop = min(start + chunk, n_steps + 1)
        times = np.minimum(np.arange(start, stop, dtype=float) * step, horizon)
        excess = _min_block_excess(params, n_max, times, tol)
        hits = np.nonzero(excess < 0.0)[0]
        if hits.size:
            k = int(hits[0])
            lo = prev_t if k == 0 else float(times[k - 1])
            hi = float(times[k])
            fn = lambda t: float(_min_block_excess(params, n_max, np.array([t]), tol)[0])
            f_lo = fn(lo)
            if f_lo < 0.0:
                return lo
            return _bisect_root(fn, lo, f_lo, hi, width=1e-10)
        prev_t = float(times[-1])
    return None
