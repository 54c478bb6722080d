"""Grid sweeps, CSV/JSON serialisation, and the cross-verification runner.

Grid points are independent work items; a worker pool of configurable size
computes them and results are always emitted in deterministic grid order
(lambda outer, alpha inner), so output bytes do not depend on parallelism.
Floats are serialised with 17 significant digits and round-trip exactly.
"""

from __future__ import annotations

import concurrent.futures
import io
from dataclasses import dataclass

import numpy as np

from .bruteforce import evolve_numeric, full_partial_transpose, full_pt_spectrum, nppt_witness
from .model import (
    NEG_EIGENVALUE_TOL,
    ModelParams,
    Truncation,
    auto_truncation,
    build_state,
)
from .ptspec import (
    envelope_upper_bound,
    max_log_negativity,
    pt_block,
    pt_spectrum,
    standalone_eigenvalue,
)
from .regimes import Regime, classify, first_nppt_time

__all__ = [
    "SWEEP_HEADER",
    "SweepConfig",
    "SweepRecord",
    "entry_deviation",
    "fmt17",
    "parse_config_file",
    "records_to_csv",
    "run_sweep",
    "sector_deviation",
    "spectrum_deviation",
    "state_deviation",
    "verify_cases",
    "witness_agreement",
]

SWEEP_HEADER = "lambda,alpha,regime,max_log_neg,t_at_max,upper_bound,first_nppt_time"


def fmt17(x: float) -> str:
    """Serialise a float with 17 significant digits (exact round-trip)."""
    return format(float(x), ".17g")


@dataclass(frozen=True)
class SweepConfig:
    lambda_min: float = 0.0
    lambda_max: float = 1.0
    lambda_steps: int = 50
    alpha_min: float = 0.0
    alpha_max: float = 0.99
    alpha_steps: int = 50
    horizon: float = 50.0
    coarse_steps: int = 2000
    tail_epsilon: float = 1e-10
    parallelism: int = 1

    def __post_init__(self) -> None:
        if not 0.0 <= self.lambda_min <= self.lambda_max <= 1.0:
            raise ValueError("lambda range must satisfy 0 <= min <= max <= 1")
        if not 0.0 <= self.alpha_min <= self.alpha_max < 1.0:
            raise ValueError("alpha range must satisfy 0 <= min <= max < 1")
        if self.lambda_steps < 2 or self.alpha_steps < 2:
            raise ValueError("grid needs at least 2 steps per axis")
        if self.horizon <= 0 or self.coarse_steps < 100:
            raise ValueError("horizon must be positive and coarse_steps >= 100")
        if self.tail_epsilon <= 0:
            raise ValueError("tail_epsilon must be positive")
        if self.parallelism < 1:
            raise ValueError("parallelism must be at least 1")

    def lambda_grid(self) -> np.ndarray:
        return np.linspace(self.lambda_min, self.lambda_max, self.lambda_steps)

    def alpha_grid(self) -> np.ndarray:
        return np.linspace(self.alpha_min, self.alpha_max, self.alpha_steps)


@dataclass(frozen=True)
class SweepRecord:
    lam: float
    alpha: float
    regime: str
    max_log_neg: float
    t_at_max: float
    upper_bound: float
    first_nppt_time: float | None

    def to_csv_row(self) -> str:
        tail = "" if self.first_nppt_time is None else fmt17(self.first_nppt_time)
        return ",".join(
            [
                fmt17(self.lam),
                fmt17(self.alpha),
                self.regime,
                fmt17(self.max_log_neg),
                fmt17(self.t_at_max),
                fmt17(self.upper_bound),
                tail,
            ]
        )


_CONFIG_CASTS = {
    "lambda_min": float,
    "lambda_max": float,
    "lambda_steps": int,
    "alpha_min": float,
    "alpha_max": float,
    "alpha_steps": int,
    "horizon": float,
    "coarse_steps": int,
    "tail_epsilon": float,
    "parallelism": int,
}


def parse_config_file(path: str) -> SweepConfig:
    """Flat ``key = value`` file with ``#`` comments; unknown keys are rejected."""
    values: dict[str, object] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw.rstrip()!r}")
            key, _, text = (part.strip() for part in line.partition("="))
            if key not in _CONFIG_CASTS:
                raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
            values[key] = _CONFIG_CASTS[key](text)
    return SweepConfig(**values)


def _sweep_point(args: tuple[float, float, float, int, float]) -> SweepRecord:
    lam, alpha, horizon, coarse_steps, tail_epsilon = args
    result = classify(alpha, lam)
    params = ModelParams(lam=lam, alpha=alpha)
    trunc = auto_truncation(alpha, tail_epsilon)
    series = max_log_negativity(params, trunc, horizon=horizon, coarse_steps=coarse_steps)
    onset: float | None = None
    if result.regime is not Regime.PPT_ALL_TIMES:
        # for the PPT regime no determinant ever goes negative, so the scan is skipped
        onset = first_nppt_time(params, horizon, trunc=trunc)
    return SweepRecord(
        lam=lam,
        alpha=alpha,
        regime=result.regime.value,
        max_log_neg=series.value_max,
        t_at_max=series.t_max,
        upper_bound=envelope_upper_bound(params),
        first_nppt_time=onset,
    )


def run_sweep(config: SweepConfig, jobs: int | None = None) -> list[SweepRecord]:
    """Evaluate every grid point; row order is lambda outer, alpha inner."""
    jobs = config.parallelism if jobs is None else jobs
    work = [
        (float(lam), float(alpha), config.horizon, config.coarse_steps, config.tail_epsilon)
        for lam in config.lambda_grid()
        for alpha in config.alpha_grid()
    ]
    if jobs <= 1:
        return [_sweep_point(item) for item in work]
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        chunksize = max(1, len(work) // (4 * jobs))
        return list(pool.map(_sweep_point, work, chunksize=chunksize))


def records_to_csv(records: list[SweepRecord]) -> str:
    out = io.StringIO()
    out.write(SWEEP_HEADER + "\n")
    for rec in records:
        out.write(rec.to_csv_row() + "\n")
    return out.getvalue()


# ---------------------------------------------------------------------------
# cross-verification of the analytic path against the brute-force path

STATE_TOL = 1e-10
SPECTRUM_TOL = 1e-10
ENTRY_TOL = 1e-12
SECTOR_TOL = 1e-12
PAD_LEVELS = 12


def state_deviation(t: float, params: ModelParams, trunc: Truncation) -> float:
    """Max entrywise gap between the closed-form and numeric states.

    Entries touching the top kept level are excluded: the two paths cut the
    boundary sector differently by construction.
    """
    built = build_state(t, params, trunc).entries
    evolved = evolve_numeric(t, params, trunc).entries
    size = trunc.n_max + 1
    keep = np.concatenate([np.arange(trunc.n_max), size + np.arange(trunc.n_max)])
    sub = np.ix_(keep, keep)
    return float(np.max(np.abs(built[sub] - evolved[sub])))


def spectrum_deviation(
    t: float, params: ModelParams, trunc: Truncation, pad_levels: int = PAD_LEVELS
) -> float:
    """Max gap between the analytic block spectrum and a dense eigensolve.

    The dense side evolves on a basis padded by ``pad_levels`` so the compared
    eigenvalues sit away from the truncation edge; the analytic side is padded
    with the one structurally unpaired diagonal (``|g, n_top>`` loses its
    block partner to the cut).  Every analytic block value up to the padded
    range is matched by sorted order.
    """
    padded = Truncation(trunc.n_max + pad_levels, trunc.tail_epsilon)
    dense = full_pt_spectrum(evolve_numeric(t, params, padded))
    spec = pt_spectrum(t, params, padded)
    unpaired = pt_block(padded.n_max, t, params).b_entry
    analytic = np.sort(np.concatenate([spec.eigenvalues(), [unpaired]]))
    return float(np.max(np.abs(analytic - dense)))


def entry_deviation(t: float, params: ModelParams, trunc: Truncation) -> float:
    """Max gap between analytic block entries and the transposed state's elements.

    Checks A, B and the complex C entry of every interior block plus the
    standalone element, so sign errors invisible to eigenvalues are caught.
    """
    rho = build_state(t, params, trunc)
    pt = full_partial_transpose(rho)
    size = trunc.n_max + 1
    dev = abs(pt[0, 0] - standalone_eigenvalue(t, params))
    for n in range(trunc.n_max - 1):  # the edge block misses the dropped boundary coherence
        blk = pt_block(n, t, params)
        i, j = n + 1, size + n  # (e, n+1), (g, n)
        dev = max(
            dev,
            abs(pt[i, i] - blk.a_entry),
            abs(pt[j, j] - blk.b_entry),
            abs(pt[i, j] - blk.c_entry),
        )
    return float(dev)


def sector_deviation(t: float, params: ModelParams, trunc: Truncation) -> float:
    """Drift of the conserved sector populations under the numeric evolution."""
    rho = evolve_numeric(t, params, trunc)
    diag = np.real(np.diag(rho.entries))
    size = trunc.n_max + 1
    p = (1.0 - params.alpha) * params.alpha ** np.arange(size, dtype=float)
    dev = abs(diag[size] - (1.0 - params.lam) * p[0])  # stationary |g,0>
    sector = diag[: size - 1] + diag[size + 1 :]  # |e,n-1| with |g,n>
    expected = params.lam * p[: size - 1] + (1.0 - params.lam) * p[1:]
    dev = max(dev, float(np.max(np.abs(sector - expected))))
    dev = max(dev, abs(diag[size - 1] - params.lam * p[size - 1]))  # frozen |e,n_max>
    return float(dev)


def witness_agreement(t: float, params: ModelParams, trunc: Truncation) -> bool:
    """Full-spectrum NPPT verdict versus the 2x3 window witness."""
    rho = build_state(t, params, trunc)
    full_negative = bool(full_pt_spectrum(rho)[0] < -NEG_EIGENVALUE_TOL)
    witness = nppt_witness(rho, trunc.n_max - 1)
    return full_negative == (witness is not None)


def verify_cases(
    seed: int,
    cases: int,
    alpha_max: float = 0.9,
    t_max: float = 20.0,
) -> tuple[bool, list[str]]:
    """Deterministic random-case cross-check; returns (all_ok, report lines).

    Truncations are auto-sized from the thermal tail: the spectrum comparison
    needs the omitted weight to sit below its tolerance.
    """
    rng = np.random.default_rng(seed)
    lines = [f"verify seed={seed} cases={cases}"]
    all_ok = True
    for k in range(cases):
        lam = float(rng.uniform(0.0, 1.0))
        alpha = float(rng.uniform(0.0, alpha_max))
        t = float(rng.uniform(0.0, t_max))
        params = ModelParams(lam=lam, alpha=alpha)
        trunc = auto_truncation(alpha, 1e-10)
        d_state = state_deviation(t, params, trunc)
        d_spec = spectrum_deviation(t, params, trunc)
        d_entry = entry_deviation(t, params, trunc)
        d_sector = sector_deviation(t, params, trunc)
        agree = witness_agreement(t, params, trunc)
        ok = (
            d_state <= STATE_TOL
            and d_spec <= SPECTRUM_TOL
            and d_entry <= ENTRY_TOL
            and d_sector <= SECTOR_TOL
            and agree
        )
        all_ok = all_ok and ok
        lines.append(
            f"case {k:03d} lam={lam:.6f} alpha={alpha:.6f} t={t:.6f} "
            f"state={d_state:.3e} spectrum={d_spec:.3e} entries={d_entry:.3e} "
            f"sectors={d_sector:.3e} witness={'ok' if agree else 'MISMATCH'} "
            f"{'PASS' if ok else 'FAIL'}"
        )
    lines.append("verify result: " + ("PASS" if all_ok else "FAIL"))
    return all_ok, lines
