"""Exact square-tiled interval exchanges (Python bindings)."""

from ._stiet import (  # noqa: F401
    Alpha,
    Origami,
    PrecisionExhausted,
    StietError,
    defect_scan,
    g_orbit_labels,
    homologous,
    polygon_coding,
    rigidity_times,
    sturmian_run,
    trajectory,
    word_induction,
    y_midpoint,
)
