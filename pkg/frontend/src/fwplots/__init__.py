"""Convergence-figure rendering for solver run directories."""

from .render import PlotError, PlotSpec, load_run_dir, render

__all__ = ["PlotSpec", "PlotError", "load_run_dir", "render"]
