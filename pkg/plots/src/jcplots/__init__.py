"""Figure rendering for jcphase sweep and boundary CSV output."""

from .render import (
    FigureSpec,
    MissingColumnsError,
    RenderResult,
    render,
    render_boundary_curves,
    render_phase_heatmap,
)

__version__ = "0.1.0"

__all__ = [
    "FigureSpec",
    "MissingColumnsError",
    "RenderResult",
    "render",
    "render_boundary_curves",
    "render_phase_heatmap",
]
