"""Render phase-diagram figures from jcphase CSV output.

Two figure kinds:

* ``phase_heatmap`` -- a (lambda, alpha) grid coloured by the maximal
  log-negativity, with the cells whose regime is ``ppt_all_times`` drawn in a
  flat neutral shade instead of colour zero, so the entanglement-free region
  reads as a distinct area.
* ``boundary_curves`` -- the regime boundary families as lines ordered by
  lambda.

Rendering is a pure function of the input CSV: fixed figure geometry, and the
shaded-cell mask depends only on the regime column.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

SWEEP_COLUMNS = ("lambda", "alpha", "regime", "max_log_neg")
BOUNDARY_COLUMNS = ("lambda", "alpha", "which")

KIND_HEATMAP = "phase_heatmap"
KIND_BOUNDARY = "boundary_curves"

FIGSIZE = (7.0, 5.4)
DPI = 150


@dataclass(frozen=True)
class FigureSpec:
    input_csv: str
    output_path: str
    kind: str


@dataclass(frozen=True)
class RenderResult:
    output_path: str
    width_px: int
    height_px: int
    lambdas: np.ndarray
    alphas: np.ndarray
    ppt_mask: np.ndarray | None  # heatmap only, shape (n_alpha, n_lambda)
    curves: dict[str, np.ndarray] | None  # boundary only, which -> (k, 2) points


class MissingColumnsError(ValueError):
    def __init__(self, missing):
        self.missing = tuple(missing)
        super().__init__("missing columns: " + ", ".join(missing))


def _read_csv(path: str, required: tuple[str, ...]) -> list[dict[str, str]]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(row for row in fh if not row.startswith("#"))
        header = reader.fieldnames or []
        missing = [col for col in required if col not in header]
        if missing:
            raise MissingColumnsError(missing)
        return list(reader)


def _grid_layout(rows: list[dict[str, str]]):
    lambdas = np.array(sorted({float(r["lambda"]) for r in rows}))
    alphas = np.array(sorted({float(r["alpha"]) for r in rows}))
    if len(rows) != lambdas.size * alphas.size:
        raise ValueError(
            f"sweep rows do not form a full grid: {len(rows)} rows for "
            f"{lambdas.size} x {alphas.size} axis values"
        )
    return lambdas, alphas


def _cell_edges(centres: np.ndarray) -> np.ndarray:
    if centres.size == 1:
        half = 0.5 if centres[0] == 0 else abs(centres[0]) * 0.5
        return np.array([centres[0] - half, centres[0] + half])
    mids = 0.5 * (centres[1:] + centres[:-1])
    first = centres[0] - (mids[0] - centres[0])
    last = centres[-1] + (centres[-1] - mids[-1])
    return np.concatenate([[first], mids, [last]])


def render_phase_heatmap(spec: FigureSpec) -> RenderResult:
    rows = _read_csv(spec.input_csv, SWEEP_COLUMNS)
    lambdas, alphas = _grid_layout(rows)
    lam_pos = {v: i for i, v in enumerate(lambdas)}
    alpha_pos = {v: i for i, v in enumerate(alphas)}
    values = np.zeros((alphas.size, lambdas.size))
    mask = np.zeros((alphas.size, lambdas.size), dtype=bool)
    for row in rows:
        i = alpha_pos[float(row["alpha"])]
        j = lam_pos[float(row["lambda"])]
        values[i, j] = float(row["max_log_neg"])
        mask[i, j] = row["regime"] == "ppt_all_times"

    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    x_edges = _cell_edges(lambdas)
    y_edges = _cell_edges(alphas)
    vmax = values.max() if values.max() > 0 else 1.0
    coloured = np.ma.masked_array(values, mask=mask)
    mesh = ax.pcolormesh(x_edges, y_edges, coloured, cmap="viridis", vmin=0.0, vmax=vmax)
    shade = np.ma.masked_array(np.zeros_like(values), mask=~mask)
    ax.pcolormesh(x_edges, y_edges, shade, cmap="Greys", vmin=-1.0, vmax=1.0, alpha=0.9)
    fig.colorbar(mesh, ax=ax, label="max log-negativity")
    ax.set_xlabel(r"$\lambda$")
    ax.set_ylabel(r"$\alpha$")
    ax.set_title("maximal log-negativity; grey: PPT at all times")
    fig.savefig(spec.output_path)
    width, height = fig.canvas.get_width_height()
    plt.close(fig)
    return RenderResult(
        output_path=spec.output_path,
        width_px=width,
        height_px=height,
        lambdas=lambdas,
        alphas=alphas,
        ppt_mask=mask,
        curves=None,
    )


def render_boundary_curves(spec: FigureSpec) -> RenderResult:
    rows = _read_csv(spec.input_csv, BOUNDARY_COLUMNS)
    families: dict[str, list[tuple[float, float]]] = {}
    for row in rows:
        families.setdefault(row["which"], []).append(
            (float(row["lambda"]), float(row["alpha"]))
        )
    curves = {
        which: np.array(sorted(points)) for which, points in sorted(families.items())
    }

    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    for which, pts in curves.items():
        ax.plot(pts[:, 0], pts[:, 1], marker=".", markersize=3, linewidth=1.0, label=which)
    ax.set_xlim(0.0, 1.0)
    ax.set_ylim(0.0, 1.02)
    ax.set_xlabel(r"$\lambda$")
    ax.set_ylabel(r"$\alpha$")
    ax.set_title("regime boundaries")
    ax.legend(loc="lower right")
    fig.savefig(spec.output_path)
    width, height = fig.canvas.get_width_height()
    plt.close(fig)
    lambdas = np.array(sorted({float(r["lambda"]) for r in rows}))
    alphas = np.array(sorted({float(r["alpha"]) for r in rows}))
    return RenderResult(
        output_path=spec.output_path,
        width_px=width,
        height_px=height,
        lambdas=lambdas,
        alphas=alphas,
        ppt_mask=None,
        curves=curves,
    )


_RENDERERS = {
    KIND_HEATMAP: render_phase_heatmap,
    KIND_BOUNDARY: render_boundary_curves,
}


def render(spec: FigureSpec) -> RenderResult:
    try:
        renderer = _RENDERERS[spec.kind]
    except KeyError:
        raise ValueError(f"unknown figure kind {spec.kind!r}") from None
    return renderer(spec)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="jcphase-plot", description="Render jcphase CSV output to PNG figures."
    )
    parser.add_argument("--in", dest="input_csv", required=True)
    parser.add_argument("--out", dest="output_path", required=True)
    parser.add_argument("--kind", choices=sorted(_RENDERERS), required=True)
    args = parser.parse_args(argv)
    try:
        render(FigureSpec(args.input_csv, args.output_path, args.kind))
    except (MissingColumnsError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
