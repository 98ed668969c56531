"""Exact symbolic computation with finite higher-rank graphs, their boundary
paths, and their Kumjian-Pask algebras over exact rings."""

from . import algebra, analysis, boundary, degrees, elements, groupoid, io, presets, rings
from .kgraph import Edge, KGraph, KGraphSpec, Path, Square, omega_graph

__all__ = [
    "Edge",
    "KGraph",
    "KGraphSpec",
    "Path",
    "Square",
    "algebra",
    "analysis",
    "boundary",
    "degrees",
    "elements",
    "groupoid",
    "io",
    "omega_graph",
    "presets",
    "rings",
]
